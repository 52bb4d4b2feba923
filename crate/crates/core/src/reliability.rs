//! Pre-factor-analysis adequacy statistics: Cronbach's alpha, the
//! Kaiser-Meyer-Olkin sampling adequacy measure and Bartlett's test of
//! sphericity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{correlation_matrix, covariance_matrix, eig_sym, inverse_and_det, Matrix};
use crate::response::ResponseMatrix;

pub const DEFAULT_ALPHA_THRESHOLD: f64 = 0.7;
pub const DEFAULT_KMO_THRESHOLD: f64 = 0.8;

/// Bartlett's chi-square statistic and its degrees of freedom. No p-value is
/// computed; compare `chi2` against a critical value for `df`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bartlett {
    pub chi2: f64,
    pub df: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub cronbach_alpha: f64,
    /// `None` when the correlation matrix is singular or has no off-diagonal mass.
    pub kmo: Option<f64>,
    /// Per-item measure of sampling adequacy, aligned with `items`.
    pub kmo_per_item: Option<Vec<Option<f64>>>,
    pub bartlett: Option<Bartlett>,
    pub bartlett_df: usize,
    pub alpha_acceptable: bool,
    pub kmo_acceptable: bool,
    pub items: Vec<String>,
    pub warnings: Vec<String>,
}

/// Cronbach's alpha over the item columns in `item_subset`, using sample variances.
pub fn cronbach_alpha(responses: &ResponseMatrix, item_subset: &[usize]) -> Result<f64> {
    let k = item_subset.len();
    if k < 2 {
        return Err(Error::TooFew {
            what: "items for Cronbach's alpha",
            required: 2,
            got: k,
        });
    }
    let sub = responses.select_items(item_subset)?;
    let cov = covariance_matrix(&sub)?;
    let item_var: f64 = (0..k).map(|i| cov[(i, i)]).sum();
    let total_var: f64 = cov.as_slice().iter().sum();
    if total_var <= 0.0 {
        return Err(Error::Degenerate("total score variance is zero".into()));
    }
    let k = k as f64;
    Ok(k / (k - 1.0) * (1.0 - item_var / total_var))
}

/// Anti-image partial correlations q_ij = −S_ij / √(S_ii S_jj) with S = corr⁻¹.
fn partial_correlations(corr: &Matrix) -> Result<Matrix> {
    let (s, _) = inverse_and_det(corr)?;
    let p = corr.rows();
    let mut q = Matrix::zeros(p, p);
    for i in 0..p {
        for j in 0..p {
            if i != j {
                q[(i, j)] = -s[(i, j)] / (s[(i, i)] * s[(j, j)]).sqrt();
            }
        }
    }
    Ok(q)
}

fn check_corr(corr: &Matrix) -> Result<()> {
    if !corr.is_square() {
        return Err(Error::Shape("correlation matrix must be square".into()));
    }
    if corr.rows() < 2 {
        return Err(Error::TooFew {
            what: "variables",
            required: 2,
            got: corr.rows(),
        });
    }
    Ok(())
}

/// Overall and per-item KMO; an item uncorrelated with every other has no
/// per-item value.
pub fn kmo_with_items(corr: &Matrix) -> Result<(f64, Vec<Option<f64>>)> {
    check_corr(corr)?;
    let p = corr.rows();
    let q = partial_correlations(corr)?;
    let mut r2_total = 0.0;
    let mut q2_total = 0.0;
    let mut per_item = Vec::with_capacity(p);
    for i in 0..p {
        let mut r2 = 0.0;
        let mut q2 = 0.0;
        for j in 0..p {
            if i != j {
                r2 += corr[(i, j)] * corr[(i, j)];
                q2 += q[(i, j)] * q[(i, j)];
            }
        }
        per_item.push((r2 + q2 > 0.0).then(|| r2 / (r2 + q2)));
        r2_total += r2;
        q2_total += q2;
    }
    if r2_total == 0.0 {
        return Err(Error::Degenerate(
            "KMO undefined: all off-diagonal correlations are zero".into(),
        ));
    }
    Ok((r2_total / (r2_total + q2_total), per_item))
}

/// Overall Kaiser-Meyer-Olkin measure.
pub fn kmo(corr: &Matrix) -> Result<f64> {
    kmo_with_items(corr).map(|(k, _)| k)
}

/// χ² = −(n − 1 − (2p + 5)/6)·ln det(corr), df = p(p − 1)/2.
pub fn bartlett_sphericity(corr: &Matrix, n: usize) -> Result<Bartlett> {
    check_corr(corr)?;
    let p = corr.rows();
    if n <= p {
        return Err(Error::SampleTooSmall { n, p });
    }
    let (_, det) = inverse_and_det(corr)?;
    if det <= 0.0 {
        return Err(Error::Degenerate(format!(
            "correlation determinant {det:e} is not positive"
        )));
    }
    let factor = n as f64 - 1.0 - (2.0 * p as f64 + 5.0) / 6.0;
    // det ≤ 1 for a correlation matrix; clamp rounding noise at the identity
    let chi2 = (-factor * det.ln()).max(0.0);
    Ok(Bartlett {
        chi2,
        df: bartlett_df(p),
    })
}

pub fn bartlett_df(p: usize) -> usize {
    p * (p.saturating_sub(1)) / 2
}

/// Items with a large component in the eigenvector of the smallest eigenvalue.
pub fn near_dependent_items(corr: &Matrix, items: &[String]) -> Vec<String> {
    let Ok(eig) = eig_sym(corr) else {
        return Vec::new();
    };
    let last = eig.eigenvalues.len() - 1;
    (0..corr.rows())
        .filter(|&i| eig.eigenvectors[(i, last)].abs() >= 0.2)
        .map(|i| items[i].clone())
        .collect()
}

/// Runs all three statistics over every item. Failures of KMO or Bartlett
/// become warnings; only alpha and the correlation matrix are hard requirements.
pub fn assess(
    responses: &ResponseMatrix,
    alpha_threshold: f64,
    kmo_threshold: f64,
) -> Result<ReliabilityReport> {
    let p = responses.n_items();
    let all: Vec<usize> = (0..p).collect();
    let alpha = cronbach_alpha(responses, &all)?;
    let corr = correlation_matrix(responses)?;
    let mut warnings = Vec::new();

    let (kmo, kmo_per_item) = match kmo_with_items(&corr) {
        Ok((k, items)) => (Some(k), Some(items)),
        Err(Error::Singular { .. }) => {
            let e = Error::Multicollinear {
                items: near_dependent_items(&corr, responses.items()),
            };
            warnings.push(format!("KMO not computed: {e}"));
            (None, None)
        }
        Err(e) => {
            warnings.push(format!("KMO not computed: {e}"));
            (None, None)
        }
    };
    let bartlett = match bartlett_sphericity(&corr, responses.n_respondents()) {
        Ok(b) => Some(b),
        Err(e) => {
            warnings.push(format!("Bartlett's test not computed: {e}"));
            None
        }
    };

    let alpha_acceptable = alpha > alpha_threshold;
    let kmo_acceptable = kmo.is_some_and(|k| k > kmo_threshold);
    if !alpha_acceptable {
        warnings.push(format!(
            "Cronbach's alpha {alpha:.4} does not exceed {alpha_threshold}"
        ));
    }
    if !kmo_acceptable {
        match kmo {
            Some(k) => warnings.push(format!("KMO {k:.4} does not exceed {kmo_threshold}")),
            None => warnings.push("sampling adequacy could not be established".into()),
        }
    }
    Ok(ReliabilityReport {
        cronbach_alpha: alpha,
        kmo,
        kmo_per_item,
        bartlett,
        bartlett_df: bartlett_df(p),
        alpha_acceptable,
        kmo_acceptable,
        items: responses.items().to_vec(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::LikertScale;

    fn matrix(cols: &[&[i64]]) -> ResponseMatrix {
        let n = cols[0].len();
        let rows = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let items = (0..cols.len()).map(|j| format!("q{j}")).collect();
        ResponseMatrix::new(items, rows, LikertScale::new(1, 9).unwrap()).unwrap()
    }

    fn exchangeable(p: usize, rho: f64) -> Matrix {
        let mut m = Matrix::identity(p);
        for i in 0..p {
            for j in 0..p {
                if i != j {
                    m[(i, j)] = rho;
                }
            }
        }
        m
    }

    #[test]
    fn alpha_identical_items() {
        let m = matrix(&[&[1, 3, 5, 2], &[1, 3, 5, 2]]);
        assert!((cronbach_alpha(&m, &[0, 1]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alpha_uncorrelated_items() {
        // centered (-1,1,-1,1) and (-1,-1,1,1) are orthogonal
        let m = matrix(&[&[1, 3, 1, 3], &[1, 1, 3, 3]]);
        assert!(cronbach_alpha(&m, &[0, 1]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn alpha_needs_two_items() {
        let m = matrix(&[&[1, 3, 1, 3], &[1, 1, 3, 3]]);
        assert!(cronbach_alpha(&m, &[0]).is_err());
    }

    #[test]
    fn alpha_zero_total_variance() {
        // x and 10 − x sum to a constant
        let m = matrix(&[&[1, 3, 5, 2], &[9, 7, 5, 8]]);
        assert!(matches!(
            cronbach_alpha(&m, &[0, 1]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn kmo_two_variables_is_half() {
        for rho in [0.1, 0.5, -0.7, 0.95] {
            let k = kmo(&exchangeable(2, rho)).unwrap();
            assert!((k - 0.5).abs() < 1e-12, "rho {rho}: {k}");
        }
    }

    #[test]
    fn kmo_exchangeable_three() {
        let k = kmo(&exchangeable(3, 0.5)).unwrap();
        assert!((k - 9.0 / 13.0).abs() < 1e-10);
    }

    #[test]
    fn kmo_identity_is_degenerate() {
        assert!(matches!(kmo(&Matrix::identity(4)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn bartlett_identity_and_df() {
        let b = bartlett_sphericity(&Matrix::identity(20), 202).unwrap();
        assert_eq!(b.chi2, 0.0);
        assert_eq!(b.df, 190);
    }

    #[test]
    fn bartlett_two_by_two() {
        let b = bartlett_sphericity(&exchangeable(2, 0.5), 101).unwrap();
        assert!((b.chi2 - (-98.5 * 0.75f64.ln())).abs() < 1e-12);
        assert_eq!(b.df, 1);
    }

    #[test]
    fn bartlett_small_sample_rejected() {
        assert!(matches!(
            bartlett_sphericity(&exchangeable(3, 0.2), 3),
            Err(Error::SampleTooSmall { .. })
        ));
    }

    #[test]
    fn near_dependent_items_found() {
        let mut m = exchangeable(3, 0.0);
        m[(0, 1)] = 1.0;
        m[(1, 0)] = 1.0;
        let items: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(near_dependent_items(&m, &items), vec!["a", "b"]);
    }
}
