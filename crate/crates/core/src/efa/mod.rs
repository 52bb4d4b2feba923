//! Exploratory factor analysis: principal-component extraction, factor
//! retention, orthogonal rotation, item diagnostics and iterative refinement.

mod refine;
mod rotation;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{eig_sym, Matrix};

pub use refine::{refine, RefineConfig, RefineOutcome, RefineStatus, Removal, RemovalRule};
pub use rotation::{orthomax_criterion, rotate, RotationMethod, RotationOptions};

/// Eigenvalues must exceed 1 by this margin to count under the Kaiser rule,
/// so an exactly-identity correlation matrix retains nothing.
const KAISER_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorSolution {
    pub items: Vec<String>,
    /// item × factor, restricted to the retained columns
    pub loadings: Matrix,
    /// All p eigenvalues of the correlation matrix, descending.
    pub eigenvalues: Vec<f64>,
    pub retained: usize,
    pub communalities: Vec<f64>,
    /// 100·λ_f/p for each retained factor, from the unrotated eigenvalues.
    pub variance_pct: Vec<f64>,
    pub cumulative_pct: Vec<f64>,
    pub rotation: Option<RotationMethod>,
    /// Orthogonal matrix R with rotated = unrotated · R.
    pub rotation_matrix: Option<Matrix>,
}

impl FactorSolution {
    /// Unrotated solution from an arbitrary item × factor loading matrix;
    /// column sums of squares stand in for eigenvalues.
    pub fn from_loadings(items: Vec<String>, loadings: Matrix) -> Result<FactorSolution> {
        if items.len() != loadings.rows() {
            return Err(Error::Shape(format!(
                "{} item labels for {} loading rows",
                items.len(),
                loadings.rows()
            )));
        }
        let k = loadings.cols();
        let full = FactorSolution {
            items,
            eigenvalues: Vec::new(),
            loadings,
            retained: k,
            communalities: Vec::new(),
            variance_pct: Vec::new(),
            cumulative_pct: Vec::new(),
            rotation: None,
            rotation_matrix: None,
        };
        let eigenvalues = full.column_sums_of_squares();
        Ok(FactorSolution { eigenvalues, ..full }.truncate(k))
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    /// Restricts the solution to its first `k` factors.
    pub fn truncate(&self, k: usize) -> FactorSolution {
        let k = k.min(self.loadings.cols());
        let p = self.items.len();
        let loadings = if k == 0 {
            Matrix::zeros(p, 0)
        } else {
            self.loadings.leading_columns(k)
        };
        let variance_pct: Vec<f64> = self.eigenvalues[..k]
            .iter()
            .map(|l| 100.0 * l / p as f64)
            .collect();
        FactorSolution {
            items: self.items.clone(),
            communalities: communalities(&loadings),
            cumulative_pct: cumulative(&variance_pct),
            variance_pct,
            loadings,
            eigenvalues: self.eigenvalues.clone(),
            retained: k,
            rotation: None,
            rotation_matrix: None,
        }
    }

    /// Sum of squared loadings per factor column.
    pub fn column_sums_of_squares(&self) -> Vec<f64> {
        (0..self.loadings.cols())
            .map(|f| self.loadings.column(f).iter().map(|v| v * v).sum())
            .collect()
    }

    /// Factor of maximum absolute loading per item; ties go to the lower factor.
    pub fn assignment(&self) -> Vec<usize> {
        (0..self.items.len())
            .map(|i| {
                let row = self.loadings.row(i);
                let mut best = 0;
                for f in 1..row.len() {
                    if row[f].abs() > row[best].abs() {
                        best = f;
                    }
                }
                best
            })
            .collect()
    }

    pub fn max_abs_loading(&self, item: usize) -> f64 {
        self.loadings.row(item).iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

pub(crate) fn communalities(loadings: &Matrix) -> Vec<f64> {
    (0..loadings.rows())
        .map(|i| loadings.row(i).iter().map(|v| v * v).sum())
        .collect()
}

fn cumulative(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// Principal-component extraction of every factor from a correlation matrix.
///
/// loading(i, f) = v_if·√λ_f for λ_f > 0, zero otherwise. All p columns are
/// kept; use [`FactorSolution::truncate`] to retain a subset.
pub fn extract(corr: &Matrix, items: &[String]) -> Result<FactorSolution> {
    if items.len() != corr.rows() {
        return Err(Error::Shape(format!(
            "{} item labels for a {}x{} correlation matrix",
            items.len(),
            corr.rows(),
            corr.cols()
        )));
    }
    let eig = eig_sym(corr)?;
    let p = corr.rows();
    let mut loadings = Matrix::zeros(p, p);
    for f in 0..p {
        let lambda = eig.eigenvalues[f];
        if lambda <= 0.0 {
            continue;
        }
        let s = lambda.sqrt();
        for i in 0..p {
            loadings[(i, f)] = eig.eigenvectors[(i, f)] * s;
        }
    }
    let full = FactorSolution {
        items: items.to_vec(),
        loadings,
        eigenvalues: eig.eigenvalues,
        retained: p,
        communalities: Vec::new(),
        variance_pct: Vec::new(),
        cumulative_pct: Vec::new(),
        rotation: None,
        rotation_matrix: None,
    };
    Ok(full.truncate(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RetentionRule {
    /// eigenvalues greater than one
    #[default]
    Kaiser,
    /// maximum second difference of the sorted eigenvalues
    Scree,
    /// the smaller of the two
    Both,
}

impl std::str::FromStr for RetentionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kaiser" => Ok(Self::Kaiser),
            "scree" => Ok(Self::Scree),
            "both" => Ok(Self::Both),
            other => Err(Error::InvalidParameter(format!("retention rule '{other}'"))),
        }
    }
}

/// Number of factors to keep. A Kaiser count of zero means the correlation
/// structure is degenerate.
pub fn retain(eigenvalues: &[f64], rule: RetentionRule) -> Result<usize> {
    if eigenvalues.is_empty() {
        return Err(Error::TooFew {
            what: "eigenvalues",
            required: 1,
            got: 0,
        });
    }
    Ok(match rule {
        RetentionRule::Kaiser => kaiser_count(eigenvalues),
        RetentionRule::Scree => scree_elbow(eigenvalues),
        RetentionRule::Both => kaiser_count(eigenvalues).min(scree_elbow(eigenvalues)),
    })
}

fn kaiser_count(eigenvalues: &[f64]) -> usize {
    eigenvalues.iter().filter(|&&l| l > 1.0 + KAISER_MARGIN).count()
}

fn scree_elbow(eigenvalues: &[f64]) -> usize {
    if eigenvalues.len() < 3 {
        return 1;
    }
    let bend = |i: usize| eigenvalues[i - 1] - 2.0 * eigenvalues[i] + eigenvalues[i + 1];
    let mut best = 1;
    let mut best_d2 = bend(1);
    for i in 2..eigenvalues.len() - 1 {
        let d2 = bend(i);
        // equal bends (to rounding) keep the earlier elbow
        if d2 > best_d2 + 1e-12 * best_d2.abs().max(1.0) {
            best_d2 = d2;
            best = i;
        }
    }
    best + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticThresholds {
    pub communality_cutoff: f64,
    pub loading_floor: f64,
    pub min_items_per_factor: usize,
    pub cross_loading: f64,
}

impl Default for DiagnosticThresholds {
    fn default() -> Self {
        Self {
            communality_cutoff: 0.5,
            loading_floor: 0.4,
            min_items_per_factor: 3,
            cross_loading: 0.4,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ItemDiagnostics {
    pub low_communality: BTreeSet<String>,
    pub cross_loading: BTreeSet<String>,
    pub underpopulated_factor_members: BTreeSet<String>,
    pub weak_loading: BTreeSet<String>,
    /// Factor index per item (maximum absolute loading).
    pub assignment: Vec<usize>,
    /// Items per factor.
    pub factor_sizes: Vec<usize>,
}

impl ItemDiagnostics {
    pub fn is_clean(&self) -> bool {
        self.low_communality.is_empty()
            && self.cross_loading.is_empty()
            && self.underpopulated_factor_members.is_empty()
            && self.weak_loading.is_empty()
    }
}

pub fn diagnose(solution: &FactorSolution, thresholds: &DiagnosticThresholds) -> ItemDiagnostics {
    let k = solution.loadings.cols();
    let assignment = solution.assignment();
    let mut factor_sizes = vec![0; k];
    for &f in &assignment {
        factor_sizes[f] += 1;
    }
    let mut diag = ItemDiagnostics {
        factor_sizes: factor_sizes.clone(),
        ..Default::default()
    };
    for (i, item) in solution.items.iter().enumerate() {
        if solution.communalities[i] < thresholds.communality_cutoff {
            diag.low_communality.insert(item.clone());
        }
        let row = solution.loadings.row(i);
        if row.iter().filter(|v| v.abs() >= thresholds.cross_loading).count() >= 2 {
            diag.cross_loading.insert(item.clone());
        }
        if factor_sizes[assignment[i]] < thresholds.min_items_per_factor {
            diag.underpopulated_factor_members.insert(item.clone());
        }
        if solution.max_abs_loading(i) < thresholds.loading_floor {
            diag.weak_loading.insert(item.clone());
        }
    }
    diag.assignment = assignment;
    diag
}
