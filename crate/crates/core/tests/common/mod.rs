#![allow(dead_code)]

use likert_efa::efa::{self, FactorSolution, RetentionRule, RotationMethod, RotationOptions};
use likert_efa::ib::{JointDistribution, Partition};
use likert_efa::numerics::{correlation_matrix, Matrix};
use likert_efa::synth::PlantedModel;
use likert_efa::ResponseMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, p: usize) -> Matrix {
    let mut m = Matrix::zeros(p, p);
    for i in 0..p {
        for j in i..p {
            let v = rng.random_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Coefficients c[0..=n] of det(λI − A) = Σ c_k λ^(n−k), by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &Matrix) -> Vec<f64> {
    let n = a.rows();
    let mut c = vec![1.0];
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{k−1}·I
        let mut next = a.matmul(&m).unwrap();
        for i in 0..n {
            next[(i, i)] += c[k - 1];
        }
        m = next;
        let am = a.matmul(&m).unwrap();
        c.push(-am.trace() / k as f64);
    }
    c
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &ck| acc * x + ck)
}

/// Real roots of a symmetric matrix's characteristic polynomial, ascending,
/// found by sign-change scanning inside the Gershgorin bound and bisection.
pub fn char_poly_roots(a: &Matrix) -> Vec<f64> {
    let n = a.rows();
    let c = characteristic_polynomial(a);
    let bound = (0..n)
        .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1e-6;
    let steps = 200_000;
    let mut roots = Vec::new();
    let mut lo = -bound;
    let mut f_lo = horner(&c, lo);
    for s in 1..=steps {
        let hi = -bound + 2.0 * bound * s as f64 / steps as f64;
        let f_hi = horner(&c, hi);
        if f_lo == 0.0 {
            roots.push(lo);
        } else if f_lo * f_hi < 0.0 {
            let (mut a0, mut b0, mut fa) = (lo, hi, f_lo);
            for _ in 0..200 {
                let mid = 0.5 * (a0 + b0);
                let fm = horner(&c, mid);
                if fm == 0.0 {
                    a0 = mid;
                    b0 = mid;
                    break;
                }
                if fa * fm < 0.0 {
                    b0 = mid;
                } else {
                    a0 = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a0 + b0));
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots
}

/// Mutual information via H(X) + H(Y) − H(X, Y), summed term by term.
pub fn brute_mi(joint: &[Vec<f64>]) -> f64 {
    let h = |ps: &mut dyn Iterator<Item = f64>| -> f64 {
        ps.filter(|&p| p > 0.0).map(|p| -p * p.ln()).sum()
    };
    let rows = joint.len();
    let cols = joint[0].len();
    let px: Vec<f64> = joint.iter().map(|r| r.iter().sum()).collect();
    let py: Vec<f64> = (0..cols).map(|j| (0..rows).map(|i| joint[i][j]).sum()).collect();
    let hx = h(&mut px.into_iter());
    let hy = h(&mut py.into_iter());
    let hxy = h(&mut joint.iter().flat_map(|r| r.iter().copied()));
    hx + hy - hxy
}

pub fn random_joint(rng: &mut ChaCha8Rng, nx: usize, ny: usize) -> JointDistribution {
    let w: Vec<f64> = (0..nx * ny).map(|_| rng.random_range(0.01..1.0)).collect();
    JointDistribution::from_weights(
        labels("x", nx),
        labels("y", ny),
        Matrix::from_vec(nx, ny, w).unwrap(),
    )
    .unwrap()
}

/// p(x, t) and p(t, y) tables implied by a soft IB solution.
pub fn joint_x_t(p_x: &[f64], p_t_given_x: &Matrix) -> Vec<Vec<f64>> {
    (0..p_x.len())
        .map(|x| (0..p_t_given_x.rows()).map(|t| p_x[x] * p_t_given_x[(t, x)]).collect())
        .collect()
}

pub fn joint_t_y(p_t: &[f64], p_y_given_t: &Matrix) -> Vec<Vec<f64>> {
    (0..p_t.len())
        .map(|t| (0..p_y_given_t.cols()).map(|y| p_t[t] * p_y_given_t[(t, y)]).collect())
        .collect()
}

/// I(T;Y) of a hard assignment of the rows of `joint`.
pub fn hard_relevance(joint: &Matrix, assignment: &[usize], t_count: usize) -> f64 {
    let mut ty = vec![vec![0.0; joint.cols()]; t_count];
    for (x, &t) in assignment.iter().enumerate() {
        for y in 0..joint.cols() {
            ty[t][y] += joint[(x, y)];
        }
    }
    brute_mi(&ty)
}

/// Hard-partition IB functional H(T) − β·I(T;Y) (for hard assignments
/// I(X;T) = H(T)).
pub fn hard_functional(joint: &Matrix, assignment: &[usize], t_count: usize, beta: f64) -> f64 {
    let mut pt = vec![0.0; t_count];
    for (x, &t) in assignment.iter().enumerate() {
        pt[t] += joint.row(x).iter().sum::<f64>();
    }
    let ht: f64 = pt.iter().filter(|&&p| p > 0.0).map(|p| -p * p.ln()).sum();
    ht - beta * hard_relevance(joint, assignment, t_count)
}

/// Every assignment of |X| rows into two non-empty clusters with row 0 in
/// cluster 0.
pub fn all_two_partitions(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << (n - 1)))
        .map(|mask| (0..n).map(|i| if i == 0 { 0 } else { ((mask >> (i - 1)) & 1) as usize }).collect())
        .collect()
}

/// Six rows in two well-separated groups; rows 0 and 1 share p(y|x) exactly.
pub fn duplicate_row_joint(rng: &mut ChaCha8Rng, ny: usize) -> JointDistribution {
    let proto = |rng: &mut ChaCha8Rng, high: bool| -> Vec<f64> {
        (0..ny)
            .map(|y| {
                let on = (y < ny / 2) == high;
                if on {
                    rng.random_range(3.0..6.0)
                } else {
                    rng.random_range(0.2..1.0)
                }
            })
            .collect()
    };
    let a = proto(rng, true);
    let b = proto(rng, false);
    let jitter = |rng: &mut ChaCha8Rng, base: &[f64]| -> Vec<f64> {
        base.iter().map(|v| v * rng.random_range(0.8..1.25)).collect()
    };
    let first = jitter(rng, &a);
    let scale = rng.random_range(0.5..2.0);
    let mut rows = vec![first.clone(), first.iter().map(|v| v * scale).collect()];
    rows.push(jitter(rng, &a));
    for _ in 0..3 {
        rows.push(jitter(rng, &b));
    }
    JointDistribution::from_weights(labels("x", 6), labels("y", ny), Matrix::from_rows(&rows).unwrap())
        .unwrap()
}

/// Planted data used by the recovery and concordance checks.
pub fn planted_data(seed: u64) -> (PlantedModel, ResponseMatrix) {
    let model = PlantedModel::balanced(17, 3, 0.7, seed);
    let responses = model.generate(202).unwrap();
    (model, responses)
}

/// Kaiser retention plus varimax on all items, without refinement.
pub fn direct_efa(responses: &ResponseMatrix) -> FactorSolution {
    let corr = correlation_matrix(responses).unwrap();
    let full = efa::extract(&corr, responses.items()).unwrap();
    let k = efa::retain(&full.eigenvalues, RetentionRule::Kaiser).unwrap();
    efa::rotate(&full.truncate(k), RotationMethod::Varimax, RotationOptions::default()).unwrap()
}

/// Items whose group agrees with `truth` under the best label matching
/// (brute force over permutations; at most a handful of groups).
pub fn matched_items(truth: &[usize], found: &[usize], groups: usize) -> usize {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    permutations(groups)
        .into_iter()
        .map(|perm| truth.iter().zip(found).filter(|(t, f)| perm[**f] == **t).count())
        .max()
        .unwrap_or(0)
}

pub fn partition_assignment(p: &Partition, items: &[String]) -> Vec<usize> {
    items.iter().map(|i| p.group_of(i).unwrap()).collect()
}

/// Columns of an order-8 Sylvester–Hadamard matrix (constant column dropped),
/// repeated `copies` times: pairwise uncorrelated items, so the correlation
/// matrix is exactly the identity.
pub fn hadamard_noise(copies: usize) -> ResponseMatrix {
    let h = |r: usize, c: usize| if (r & c).count_ones().is_multiple_of(2) { 4 } else { 2 };
    let rows = (0..8 * copies)
        .map(|r| (1..8).map(|c| h(r % 8, c)).collect())
        .collect();
    ResponseMatrix::new(labels("item", 7), rows, likert_efa::LikertScale::default()).unwrap()
}
