//! Information Bottleneck clustering of survey items.
//!
//! Items form the compressed variable X and respondents the relevance
//! variable Y, with p(x, y) proportional to respondent y's Likert response
//! to item x. The solver minimizes
//!
//! ```text
//! L[p(t|x)] = I(X;T) − β·I(T;Y)
//! ```
//!
//! by iterating the self-consistent equations
//!
//! ```text
//! p(t)   = Σ_x p(x)·p(t|x)
//! p(y|t) = Σ_x p(y|x)·p(x|t)
//! p(t|x) = p(t)/Z(x, β) · exp(−β·KL[p(y|x) ‖ p(y|t)])
//! ```
//!
//! where Z(x, β) normalizes each item's cluster distribution. Every sweep
//! is an alternating minimization step, so L never increases.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::response::ResponseMatrix;

pub const DEFAULT_MAX_SWEEPS: usize = 1000;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Normalized p(x, y) with items as rows and respondents as columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
    pub probabilities: Matrix,
}

impl JointDistribution {
    /// Validates and normalizes a non-negative weight table.
    pub fn from_weights(x_labels: Vec<String>, y_labels: Vec<String>, weights: Matrix) -> Result<Self> {
        if weights.rows() != x_labels.len() || weights.cols() != y_labels.len() {
            return Err(Error::Shape(format!(
                "{}x{} table for {} x-labels and {} y-labels",
                weights.rows(),
                weights.cols(),
                x_labels.len(),
                y_labels.len()
            )));
        }
        if let Some(v) = weights.as_slice().iter().find(|v| **v < 0.0) {
            return Err(Error::Degenerate(format!("negative joint weight {v}")));
        }
        let total: f64 = weights.as_slice().iter().sum();
        if total <= 0.0 {
            return Err(Error::Degenerate("joint table has zero mass".into()));
        }
        let mut probabilities = weights;
        for i in 0..probabilities.rows() {
            for j in 0..probabilities.cols() {
                probabilities[(i, j)] /= total;
            }
        }
        for (i, label) in x_labels.iter().enumerate() {
            if probabilities.row(i).iter().all(|v| *v == 0.0) {
                return Err(Error::Degenerate(format!("x '{label}' has zero mass")));
            }
        }
        for (j, label) in y_labels.iter().enumerate() {
            if (0..probabilities.rows()).all(|i| probabilities[(i, j)] == 0.0) {
                return Err(Error::Degenerate(format!("y '{label}' has zero mass")));
            }
        }
        Ok(Self {
            x_labels,
            y_labels,
            probabilities,
        })
    }

    pub fn x_count(&self) -> usize {
        self.x_labels.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_labels.len()
    }

    pub fn p_x(&self) -> Vec<f64> {
        (0..self.x_count())
            .map(|i| self.probabilities.row(i).iter().sum())
            .collect()
    }

    /// I(X;Y) in nats.
    pub fn mutual_information(&self) -> f64 {
        mutual_information(&self.probabilities)
    }
}

/// p(x, y) = r(x, y) / Σ r over the whole response table.
pub fn build_joint(responses: &ResponseMatrix) -> Result<JointDistribution> {
    let n = responses.n_respondents();
    let p = responses.n_items();
    if n < 2 || p < 2 {
        return Err(Error::TooFew {
            what: "respondents and items (each)",
            required: 2,
            got: n.min(p),
        });
    }
    let mut weights = Matrix::zeros(p, n);
    for r in 0..n {
        for x in 0..p {
            let v = responses.value(r, x);
            if v < 0 {
                let scale = responses.scale();
                return Err(Error::OutOfRange {
                    row: r,
                    item: responses.items()[x].clone(),
                    value: v,
                    min: scale.min.max(0),
                    max: scale.max,
                });
            }
            weights[(x, r)] = v as f64;
        }
    }
    let y_labels = (1..=n).map(|r| r.to_string()).collect();
    JointDistribution::from_weights(responses.items().to_vec(), y_labels, weights)
}

/// I = Σ p(a,b)·ln(p(a,b) / (p(a)·p(b))) in nats over a joint table, with 0·ln 0 = 0.
pub fn mutual_information(joint: &Matrix) -> f64 {
    let rows: Vec<f64> = (0..joint.rows()).map(|i| joint.row(i).iter().sum()).collect();
    let cols: Vec<f64> = (0..joint.cols())
        .map(|j| (0..joint.rows()).map(|i| joint[(i, j)]).sum())
        .collect();
    let mut total = 0.0;
    for (i, pa) in rows.iter().enumerate() {
        for (j, pb) in cols.iter().enumerate() {
            let pab = joint[(i, j)];
            if pab > 0.0 {
                total += pab * (pab / (pa * pb)).ln();
            }
        }
    }
    total.max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IbSolution {
    pub items: Vec<String>,
    pub t_count: usize,
    pub beta: f64,
    /// T × |X|; each column sums to one.
    pub p_t_given_x: Matrix,
    /// T × |Y|; rows of empty clusters are all zero.
    pub p_y_given_t: Matrix,
    pub p_t: Vec<f64>,
    pub i_xt: f64,
    pub i_ty: f64,
    pub l_value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Index of the restart that produced this solution.
    pub restart: usize,
    /// L after initialization and after every sweep of the chosen restart.
    #[serde(skip)]
    pub l_history: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IbOptions {
    pub max_sweeps: usize,
    pub tolerance: f64,
}

impl Default for IbOptions {
    fn default() -> Self {
        Self {
            max_sweeps: DEFAULT_MAX_SWEEPS,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

struct Prepared<'a> {
    joint: &'a JointDistribution,
    p_x: Vec<f64>,
    p_y_given_x: Matrix,
    /// Σ_y p(y|x)·ln p(y|x)
    neg_entropy: Vec<f64>,
}

impl<'a> Prepared<'a> {
    fn new(joint: &'a JointDistribution) -> Self {
        let p_x = joint.p_x();
        let (nx, ny) = (joint.x_count(), joint.y_count());
        let mut p_y_given_x = Matrix::zeros(nx, ny);
        let mut neg_entropy = vec![0.0; nx];
        for x in 0..nx {
            for y in 0..ny {
                let v = joint.probabilities[(x, y)] / p_x[x];
                p_y_given_x[(x, y)] = v;
                if v > 0.0 {
                    neg_entropy[x] += v * v.ln();
                }
            }
        }
        Self {
            joint,
            p_x,
            p_y_given_x,
            neg_entropy,
        }
    }
}

/// Cluster marginal and relevance conditionals implied by p(t|x).
fn marginals(prep: &Prepared, p_t_given_x: &Matrix) -> (Vec<f64>, Matrix) {
    let t_count = p_t_given_x.rows();
    let (nx, ny) = (prep.joint.x_count(), prep.joint.y_count());
    let mut p_t = vec![0.0; t_count];
    let mut p_y_given_t = Matrix::zeros(t_count, ny);
    for t in 0..t_count {
        for x in 0..nx {
            let w = p_t_given_x[(t, x)];
            if w == 0.0 {
                continue;
            }
            p_t[t] += prep.p_x[x] * w;
            for y in 0..ny {
                p_y_given_t[(t, y)] += w * prep.joint.probabilities[(x, y)];
            }
        }
        if p_t[t] > 0.0 {
            for y in 0..ny {
                p_y_given_t[(t, y)] /= p_t[t];
            }
        }
    }
    (p_t, p_y_given_t)
}

/// Re-estimates p(t|x) from the current p(t) and p(y|t), normalizing by Z(x, β).
fn update_assignments(prep: &Prepared, beta: f64, p_t: &[f64], p_y_given_t: &Matrix) -> Matrix {
    let t_count = p_t.len();
    let (nx, ny) = (prep.joint.x_count(), prep.joint.y_count());
    let log_q: Vec<Vec<f64>> = (0..t_count)
        .map(|t| (0..ny).map(|y| p_y_given_t[(t, y)].ln()).collect())
        .collect();
    let mut out = Matrix::zeros(t_count, nx);
    let mut log_w = vec![0.0; t_count];
    for x in 0..nx {
        for t in 0..t_count {
            log_w[t] = if p_t[t] <= 0.0 {
                f64::NEG_INFINITY
            } else if beta == 0.0 {
                p_t[t].ln()
            } else {
                let mut cross = 0.0;
                for (y, &lq) in log_q[t].iter().enumerate().take(ny) {
                    let v = prep.p_y_given_x[(x, y)];
                    if v > 0.0 {
                        cross += v * lq;
                    }
                }
                let kl = prep.neg_entropy[x] - cross;
                p_t[t].ln() - beta * kl
            };
        }
        let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = log_w.iter().map(|w| (w - max).exp()).sum();
        for t in 0..t_count {
            out[(t, x)] = (log_w[t] - max).exp() / z;
        }
    }
    out
}

struct Information {
    i_xt: f64,
    i_ty: f64,
}

fn information(prep: &Prepared, p_t_given_x: &Matrix, p_t: &[f64], p_y_given_t: &Matrix) -> Information {
    let t_count = p_t.len();
    let nx = prep.joint.x_count();
    let ny = prep.joint.y_count();
    let mut xt = Matrix::zeros(nx, t_count);
    for x in 0..nx {
        for t in 0..t_count {
            xt[(x, t)] = prep.p_x[x] * p_t_given_x[(t, x)];
        }
    }
    let mut ty = Matrix::zeros(t_count, ny);
    for t in 0..t_count {
        for y in 0..ny {
            ty[(t, y)] = p_t[t] * p_y_given_t[(t, y)];
        }
    }
    Information {
        i_xt: mutual_information(&xt),
        i_ty: mutual_information(&ty),
    }
}

fn random_assignments(rng: &mut ChaCha8Rng, t_count: usize, nx: usize) -> Matrix {
    let mut m = Matrix::zeros(t_count, nx);
    for x in 0..nx {
        let mut total = 0.0;
        for t in 0..t_count {
            // keep every entry strictly positive
            let v: f64 = rng.random::<f64>() + 1e-3;
            m[(t, x)] = v;
            total += v;
        }
        for t in 0..t_count {
            m[(t, x)] /= total;
        }
    }
    m
}

fn solve_restart(
    prep: &Prepared,
    t_count: usize,
    beta: f64,
    seed: u64,
    restart: usize,
    options: IbOptions,
) -> IbSolution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let mut p_t_given_x = random_assignments(&mut rng, t_count, prep.joint.x_count());
    let (mut p_t, mut p_y_given_t) = marginals(prep, &p_t_given_x);
    let mut info = information(prep, &p_t_given_x, &p_t, &p_y_given_t);
    let mut l_value = info.i_xt - beta * info.i_ty;
    let mut history = vec![l_value];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < options.max_sweeps {
        iterations += 1;
        p_t_given_x = update_assignments(prep, beta, &p_t, &p_y_given_t);
        (p_t, p_y_given_t) = marginals(prep, &p_t_given_x);
        info = information(prep, &p_t_given_x, &p_t, &p_y_given_t);
        let next = info.i_xt - beta * info.i_ty;
        history.push(next);
        let delta = (next - l_value).abs();
        l_value = next;
        if delta < options.tolerance {
            converged = true;
            break;
        }
    }
    IbSolution {
        items: prep.joint.x_labels.clone(),
        t_count,
        beta,
        p_t_given_x,
        p_y_given_t,
        p_t,
        i_xt: info.i_xt,
        i_ty: info.i_ty,
        l_value,
        iterations,
        converged,
        restart,
        l_history: history,
    }
}

/// Runs `restarts` independently seeded solves and keeps the one with the
/// smallest L (lowest restart index on ties).
pub fn ib_solve(
    joint: &JointDistribution,
    t_count: usize,
    beta: f64,
    seed: u64,
    restarts: usize,
) -> Result<IbSolution> {
    ib_solve_with(joint, t_count, beta, seed, restarts, IbOptions::default())
}

pub fn ib_solve_with(
    joint: &JointDistribution,
    t_count: usize,
    beta: f64,
    seed: u64,
    restarts: usize,
    options: IbOptions,
) -> Result<IbSolution> {
    if t_count == 0 {
        return Err(Error::InvalidParameter("cluster count T must be at least 1".into()));
    }
    if t_count > joint.x_count() {
        return Err(Error::InvalidParameter(format!(
            "cluster count T = {t_count} exceeds |X| = {}",
            joint.x_count()
        )));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta must be finite and >= 0, got {beta}")));
    }
    if restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    let prep = Prepared::new(joint);
    let solutions: Vec<IbSolution> = (0..restarts)
        .into_par_iter()
        .map(|r| solve_restart(&prep, t_count, beta, seed, r, options))
        .collect();
    let best = solutions
        .into_iter()
        .reduce(|best, s| if s.l_value < best.l_value { s } else { best })
        .expect("restarts >= 1");
    Ok(best)
}

/// Assignment of item identifiers to groups (factors or clusters).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub groups: BTreeMap<String, usize>,
    pub group_count: usize,
}

impl Partition {
    pub fn new(groups: BTreeMap<String, usize>, group_count: usize) -> Result<Self> {
        if let Some((item, g)) = groups.iter().find(|(_, g)| **g >= group_count) {
            return Err(Error::InvalidParameter(format!(
                "item '{item}' in group {g}, but only {group_count} groups"
            )));
        }
        Ok(Self { groups, group_count })
    }

    pub fn from_assignment(items: &[String], assignment: &[usize], group_count: usize) -> Result<Self> {
        if items.len() != assignment.len() {
            return Err(Error::Shape(format!(
                "{} items but {} assignments",
                items.len(),
                assignment.len()
            )));
        }
        let mut groups = BTreeMap::new();
        for (item, &g) in items.iter().zip(assignment) {
            if groups.insert(item.clone(), g).is_some() {
                return Err(Error::CsvDuplicateItem { item: item.clone() });
            }
        }
        Self::new(groups, group_count)
    }

    pub fn group_of(&self, item: &str) -> Option<usize> {
        self.groups.get(item).copied()
    }

    pub fn members(&self, group: usize) -> Vec<String> {
        self.groups
            .iter()
            .filter(|(_, g)| **g == group)
            .map(|(i, _)| i.clone())
            .collect()
    }

    pub fn empty_groups(&self) -> Vec<usize> {
        (0..self.group_count)
            .filter(|g| !self.groups.values().any(|v| v == g))
            .collect()
    }

    pub fn non_empty_groups(&self) -> usize {
        self.group_count - self.empty_groups().len()
    }

    /// Same grouping up to relabeling.
    pub fn same_grouping(&self, other: &Partition) -> bool {
        if self.groups.len() != other.groups.len()
            || self.groups.keys().ne(other.groups.keys())
        {
            return false;
        }
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for (item, &a) in &self.groups {
            let b = other.groups[item];
            if *forward.entry(a).or_insert(b) != b || *backward.entry(b).or_insert(a) != a {
                return false;
            }
        }
        true
    }
}

/// Each item goes to argmax_t p(t|x); ties go to the lowest cluster index.
pub fn hard_partition(solution: &IbSolution) -> Partition {
    let t_count = solution.t_count;
    let mut groups = BTreeMap::new();
    for (x, item) in solution.items.iter().enumerate() {
        let mut best = 0;
        for t in 1..t_count {
            if solution.p_t_given_x[(t, x)] > solution.p_t_given_x[(best, x)] {
                best = t;
            }
        }
        groups.insert(item.clone(), best);
    }
    Partition {
        groups,
        group_count: t_count,
    }
}

/// One solve per β, all with the same seed and restart count.
pub fn beta_sweep(
    joint: &JointDistribution,
    t_count: usize,
    betas: &[f64],
    seed: u64,
    restarts: usize,
) -> Result<Vec<(f64, IbSolution)>> {
    if betas.is_empty() {
        return Err(Error::InvalidParameter("beta schedule is empty".into()));
    }
    if betas.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("beta schedule must be ascending".into()));
    }
    betas
        .iter()
        .map(|&beta| ib_solve(joint, t_count, beta, seed, restarts).map(|s| (beta, s)))
        .collect()
}

/// Index of the smallest β whose hard partition fills every cluster and is
/// unchanged (up to relabeling) at the next β. Falls back to the last β that
/// fills every cluster, then to the last β.
pub fn select_beta(sweep: &[(f64, IbSolution)]) -> usize {
    let partitions: Vec<Partition> = sweep.iter().map(|(_, s)| hard_partition(s)).collect();
    let full = |i: usize| partitions[i].empty_groups().is_empty();
    if let Some(i) = (0..partitions.len().saturating_sub(1))
        .find(|&i| full(i) && partitions[i].same_grouping(&partitions[i + 1]))
    {
        return i;
    }
    (0..partitions.len())
        .rev()
        .find(|&i| full(i))
        .unwrap_or(partitions.len().saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::LikertScale;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn joint(rows: &[Vec<f64>]) -> JointDistribution {
        let m = Matrix::from_rows(rows).unwrap();
        JointDistribution::from_weights(labels("x", m.rows()), labels("y", m.cols()), m).unwrap()
    }

    #[test]
    fn uniform_responses_give_uniform_joint() {
        let m = ResponseMatrix::new(labels("i", 3), vec![vec![4; 3]; 5], LikertScale::default()).unwrap();
        let j = build_joint(&m).unwrap();
        for v in j.probabilities.as_slice() {
            assert!((v - 1.0 / 15.0).abs() < 1e-15);
        }
    }

    #[test]
    fn small_joint_by_hand() {
        // item rows, respondent columns: item0 = (1, 3), item1 = (2, 2)
        let m = ResponseMatrix::new(labels("i", 2), vec![vec![1, 2], vec![3, 2]], LikertScale::default())
            .unwrap();
        let j = build_joint(&m).unwrap();
        assert_eq!(j.probabilities.to_rows(), vec![vec![0.125, 0.375], vec![0.25, 0.25]]);
    }

    #[test]
    fn negative_responses_rejected() {
        let m = ResponseMatrix::new(
            labels("i", 2),
            vec![vec![-1, 2], vec![2, 2]],
            LikertScale::new(-2, 2).unwrap(),
        )
        .unwrap();
        assert!(matches!(build_joint(&m), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn mi_values() {
        let indep = Matrix::from_rows(&[vec![0.06, 0.14], vec![0.24, 0.56]]).unwrap();
        assert!(mutual_information(&indep) < 1e-15);
        let diag = Matrix::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!((mutual_information(&diag) - std::f64::consts::LN_2).abs() < 1e-15);
        let t = Matrix::from_rows(&[vec![0.125, 0.375], vec![0.25, 0.25]]).unwrap();
        assert!((mutual_information(&t) - 0.033_822).abs() < 1e-5);
    }

    #[test]
    fn parameter_validation() {
        let j = joint(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(ib_solve(&j, 3, 1.0, 0, 1).is_err());
        assert!(ib_solve(&j, 0, 1.0, 0, 1).is_err());
        assert!(ib_solve(&j, 2, -1.0, 0, 1).is_err());
        assert!(ib_solve(&j, 2, 1.0, 0, 0).is_err());
        assert!(beta_sweep(&j, 2, &[], 0, 1).is_err());
        assert!(beta_sweep(&j, 2, &[2.0, 1.0], 0, 1).is_err());
    }

    #[test]
    fn beta_zero_compresses_everything() {
        let j = joint(&[vec![5.0, 1.0, 1.0], vec![1.0, 5.0, 1.0], vec![1.0, 1.0, 5.0]]);
        let s = ib_solve(&j, 3, 0.0, 7, 3).unwrap();
        assert!(s.i_xt <= 1e-6);
        assert!(s.converged);
    }

    #[test]
    fn conservation_and_self_consistency() {
        let j = joint(&[
            vec![5.0, 1.0, 1.0, 2.0],
            vec![1.0, 5.0, 1.0, 2.0],
            vec![1.0, 1.0, 5.0, 2.0],
            vec![4.0, 2.0, 1.0, 1.0],
        ]);
        let s = ib_solve(&j, 2, 5.0, 3, 4).unwrap();
        for x in 0..4 {
            let sum: f64 = (0..2).map(|t| s.p_t_given_x[(t, x)]).sum();
            assert!((sum - 1.0).abs() < 1e-10);
        }
        assert!((s.p_t.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let prep = Prepared::new(&j);
        let (p_t, p_y_t) = marginals(&prep, &s.p_t_given_x);
        for t in 0..2 {
            assert!((p_t[t] - s.p_t[t]).abs() < 1e-8);
            for y in 0..4 {
                assert!((p_y_t[(t, y)] - s.p_y_given_t[(t, y)]).abs() < 1e-8);
            }
        }
        assert!((s.l_value - (s.i_xt - 5.0 * s.i_ty)).abs() < 1e-10);
    }

    #[test]
    fn deterministic_given_seed() {
        let j = joint(&[vec![5.0, 1.0, 1.0], vec![1.0, 5.0, 1.0], vec![1.0, 1.0, 5.0]]);
        let a = ib_solve(&j, 2, 10.0, 11, 5).unwrap();
        let b = ib_solve(&j, 2, 10.0, 11, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.l_history, b.l_history);
    }

    #[test]
    fn hard_partition_ties_go_low() {
        let s = IbSolution {
            items: labels("x", 2),
            t_count: 2,
            beta: 1.0,
            p_t_given_x: Matrix::from_rows(&[vec![0.9, 0.5], vec![0.1, 0.5]]).unwrap(),
            p_y_given_t: Matrix::zeros(2, 1),
            p_t: vec![0.7, 0.3],
            i_xt: 0.0,
            i_ty: 0.0,
            l_value: 0.0,
            iterations: 0,
            converged: true,
            restart: 0,
            l_history: Vec::new(),
        };
        let p = hard_partition(&s);
        assert_eq!(p.group_of("x0"), Some(0));
        assert_eq!(p.group_of("x1"), Some(0));
        assert_eq!(p.empty_groups(), vec![1]);
    }

    #[test]
    fn single_beta_sweep_matches_solve() {
        let j = joint(&[vec![5.0, 1.0, 1.0], vec![1.0, 5.0, 1.0], vec![1.0, 1.0, 5.0]]);
        let sweep = beta_sweep(&j, 2, &[4.0], 9, 3).unwrap();
        assert_eq!(sweep[0].1, ib_solve(&j, 2, 4.0, 9, 3).unwrap());
    }

    #[test]
    fn relabeling_is_same_grouping() {
        let items = labels("x", 4);
        let a = Partition::from_assignment(&items, &[0, 0, 1, 1], 2).unwrap();
        let b = Partition::from_assignment(&items, &[1, 1, 0, 0], 2).unwrap();
        let c = Partition::from_assignment(&items, &[0, 1, 0, 1], 2).unwrap();
        assert!(a.same_grouping(&b));
        assert!(!a.same_grouping(&c));
        assert!(Partition::from_assignment(&items, &[0, 0, 2, 1], 2).is_err());
    }
}
