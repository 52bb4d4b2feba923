use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Matrix;

use super::{communalities, FactorSolution};

const MAX_SWEEPS: usize = 50;
const SWEEP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationMethod {
    Varimax,
    Quartimax,
}

impl RotationMethod {
    /// Orthomax weight γ.
    pub fn gamma(self) -> f64 {
        match self {
            RotationMethod::Varimax => 1.0,
            RotationMethod::Quartimax => 0.0,
        }
    }
}

impl std::str::FromStr for RotationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "varimax" => Ok(Self::Varimax),
            "quartimax" => Ok(Self::Quartimax),
            other => Err(Error::InvalidParameter(format!("rotation '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationOptions {
    /// Divide each item row by √communality before rotating, restore after.
    pub kaiser_normalize: bool,
}

impl Default for RotationOptions {
    fn default() -> Self {
        Self {
            kaiser_normalize: true,
        }
    }
}

/// Σ_f [ Σ_i λ_if⁴ − (γ/p)(Σ_i λ_if²)² ]
///
/// With `kaiser_normalize` the rows are first scaled to unit length, which is
/// the quantity the rotation actually maximizes in that mode.
pub fn orthomax_criterion(loadings: &Matrix, gamma: f64, kaiser_normalize: bool) -> f64 {
    let work = if kaiser_normalize {
        normalize_rows(loadings)
    } else {
        loadings.clone()
    };
    let p = work.rows() as f64;
    (0..work.cols())
        .map(|f| {
            let col = work.column(f);
            let s4: f64 = col.iter().map(|v| v.powi(4)).sum();
            let s2: f64 = col.iter().map(|v| v * v).sum();
            s4 - gamma / p * s2 * s2
        })
        .sum()
}

fn normalize_rows(loadings: &Matrix) -> Matrix {
    let mut out = loadings.clone();
    for (i, h2) in communalities(loadings).into_iter().enumerate() {
        let h = h2.sqrt();
        if h > 1e-12 {
            for f in 0..out.cols() {
                out[(i, f)] /= h;
            }
        }
    }
    out
}

/// Orthogonal rotation of the retained loadings by pairwise planar rotations
/// maximizing the orthomax criterion.
///
/// Output columns are sign-flipped to a positive loading sum and ordered by
/// descending sum of squares. One retained factor is returned unchanged.
pub fn rotate(
    solution: &FactorSolution,
    method: RotationMethod,
    options: RotationOptions,
) -> Result<FactorSolution> {
    let k = solution.loadings.cols();
    if k == 0 {
        return Err(Error::InvalidParameter(
            "cannot rotate a solution with no retained factors".into(),
        ));
    }
    if k == 1 {
        return Ok(solution.clone());
    }
    let gamma = method.gamma();
    let mut work = if options.kaiser_normalize {
        normalize_rows(&solution.loadings)
    } else {
        solution.loadings.clone()
    };
    let p = work.rows();
    let mut r = Matrix::identity(k);

    let mut criterion = orthomax_criterion(&work, gamma, false);
    for _ in 0..MAX_SWEEPS {
        for a in 0..k {
            for b in (a + 1)..k {
                let phi = pair_angle(&work, a, b, gamma);
                if phi.abs() < 1e-15 {
                    continue;
                }
                let (s, c) = phi.sin_cos();
                for i in 0..p {
                    let x = work[(i, a)];
                    let y = work[(i, b)];
                    work[(i, a)] = c * x + s * y;
                    work[(i, b)] = -s * x + c * y;
                }
                for i in 0..k {
                    let x = r[(i, a)];
                    let y = r[(i, b)];
                    r[(i, a)] = c * x + s * y;
                    r[(i, b)] = -s * x + c * y;
                }
            }
        }
        let next = orthomax_criterion(&work, gamma, false);
        let gain = next - criterion;
        criterion = next;
        if gain < SWEEP_TOL {
            break;
        }
    }

    // column signs and ordering are orthogonal transforms too; fold them into R
    let rotated = solution.loadings.matmul(&r)?;
    let mut ss: Vec<(usize, f64)> = (0..k)
        .map(|f| (f, rotated.column(f).iter().map(|v| v * v).sum()))
        .collect();
    ss.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    let mut final_r = Matrix::zeros(k, k);
    for (dst, &(src, _)) in ss.iter().enumerate() {
        let sum: f64 = rotated.column(src).iter().sum();
        let sign = if sum < 0.0 { -1.0 } else { 1.0 };
        for i in 0..k {
            final_r[(i, dst)] = sign * r[(i, src)];
        }
    }
    let loadings = solution.loadings.matmul(&final_r)?;

    Ok(FactorSolution {
        items: solution.items.clone(),
        communalities: communalities(&loadings),
        loadings,
        eigenvalues: solution.eigenvalues.clone(),
        retained: solution.retained,
        variance_pct: solution.variance_pct.clone(),
        cumulative_pct: solution.cumulative_pct.clone(),
        rotation: Some(method),
        rotation_matrix: Some(final_r),
    })
}

// Angle maximizing the orthomax criterion over the (a, b) column plane.
fn pair_angle(work: &Matrix, a: usize, b: usize, gamma: f64) -> f64 {
    let p = work.rows() as f64;
    let (mut sa, mut sb, mut sc, mut sd) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..work.rows() {
        let x = work[(i, a)];
        let y = work[(i, b)];
        let u = x * x - y * y;
        let v = 2.0 * x * y;
        sa += u;
        sb += v;
        sc += u * u - v * v;
        sd += 2.0 * u * v;
    }
    let num = sd - 2.0 * gamma * sa * sb / p;
    let den = sc - gamma * (sa * sa - sb * sb) / p;
    num.atan2(den) / 4.0
}
