//! Dense matrix primitives: Pearson correlation, cyclic Jacobi
//! eigendecomposition for symmetric matrices, and LU inverse/determinant.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::response::ResponseMatrix;

const JACOBI_OFF_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-12;
const SINGULAR_TOL: f64 = 1e-12;

/// Row-major dense matrix of finite reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::Shape(format!("non-finite entry {bad}")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest |a_ij − a_ji|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Frobenius norm of `self − other`.
    pub fn frobenius_distance(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Submatrix on the given row/column index set (symmetric selection).
    pub fn principal_submatrix(&self, keep: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Keeps the first `k` columns.
    pub fn leading_columns(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.rows, k);
        for i in 0..self.rows {
            for j in 0..k {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues sorted non-increasing with eigenvectors stored as matching columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    /// V·diag(λ)·Vᵀ
    pub fn reconstruct(&self) -> Matrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)])
                    .sum();
            }
        }
        out
    }
}

/// Sample (n − 1) covariance matrix of the item columns.
pub fn covariance_matrix(responses: &ResponseMatrix) -> Result<Matrix> {
    let n = responses.n_respondents();
    if n < 2 {
        return Err(Error::TooFew {
            what: "respondents",
            required: 2,
            got: n,
        });
    }
    let centered = centered_columns(responses);
    let p = centered.len();
    let mut cov = Matrix::zeros(p, p);
    for i in 0..p {
        for j in i..p {
            let s: f64 = centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum();
            let c = s / (n as f64 - 1.0);
            cov[(i, j)] = c;
            cov[(j, i)] = c;
        }
    }
    Ok(cov)
}

fn centered_columns(responses: &ResponseMatrix) -> Vec<Vec<f64>> {
    (0..responses.n_items())
        .map(|j| {
            let col = responses.column(j);
            let mean = col.iter().sum::<f64>() / col.len() as f64;
            col.into_iter().map(|v| v - mean).collect()
        })
        .collect()
}

/// p×p Pearson correlation matrix of the item columns.
pub fn correlation_matrix(responses: &ResponseMatrix) -> Result<Matrix> {
    let cov = covariance_matrix(responses)?;
    let p = cov.rows();
    for j in 0..p {
        if cov[(j, j)] <= 0.0 {
            return Err(Error::ZeroVariance {
                item: responses.items()[j].clone(),
            });
        }
    }
    let sd: Vec<f64> = (0..p).map(|j| cov[(j, j)].sqrt()).collect();
    let mut corr = Matrix::zeros(p, p);
    for i in 0..p {
        corr[(i, i)] = 1.0;
        for j in (i + 1)..p {
            let r = (cov[(i, j)] / (sd[i] * sd[j])).clamp(-1.0, 1.0);
            corr[(i, j)] = r;
            corr[(j, i)] = r;
        }
    }
    Ok(corr)
}

/// Symmetric eigendecomposition by cyclic Jacobi sweeps.
///
/// Eigenvalues come back non-increasing. Each eigenvector is signed so its
/// largest-magnitude component is positive (first such index on ties).
pub fn eig_sym(m: &Matrix) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let asym = m.asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let n = m.rows();
    let mut a = m.clone();
    // symmetrize exactly so rotations stay consistent
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);
    let tol = JACOBI_OFF_TOL * m.max_abs().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[(i, j)].abs());
            }
        }
        if off < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                jacobi_rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].total_cmp(&a[(x, x)]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut best = 0;
        for i in 1..n {
            if v[(i, k)].abs() > v[(best, k)].abs() {
                best = i;
            }
        }
        let sign = if v[(best, k)] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            vectors[(i, col)] = sign * v[(i, k)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vectors,
    })
}

// A ← Jᵀ A J and V ← V J for the plane rotation J(p, q; c, s).
fn jacobi_rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Inverse and determinant by LU decomposition with partial pivoting.
pub fn inverse_and_det(m: &Matrix) -> Result<(Matrix, f64)> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "inverse needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let scale = m.max_abs();
    if scale == 0.0 {
        return Err(Error::Singular {
            column: 0,
            pivot: 0.0,
        });
    }
    let mut a = m.clone();
    let mut inv = Matrix::identity(n);
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if a[(r, col)].abs() > a[(piv, col)].abs() {
                piv = r;
            }
        }
        let pivot = a[(piv, col)];
        if pivot.abs() < SINGULAR_TOL * scale {
            return Err(Error::Singular { column: col, pivot });
        }
        if piv != col {
            swap_rows(&mut a, piv, col);
            swap_rows(&mut inv, piv, col);
            det = -det;
        }
        det *= pivot;
        let inv_pivot = 1.0 / pivot;
        for j in 0..n {
            a[(col, j)] *= inv_pivot;
            inv[(col, j)] *= inv_pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[(r, col)];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                a[(r, j)] -= f * a[(col, j)];
                inv[(r, j)] -= f * inv[(col, j)];
            }
        }
    }
    Ok((inv, det))
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    for j in 0..m.cols() {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::LikertScale;

    fn responses(cols: &[&[i64]]) -> ResponseMatrix {
        let n = cols[0].len();
        let rows = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let items = (0..cols.len()).map(|j| format!("i{j}")).collect();
        ResponseMatrix::new(items, rows, LikertScale::default()).unwrap()
    }

    #[test]
    fn identical_columns_correlate_perfectly() {
        let r = correlation_matrix(&responses(&[&[1, 2, 4, 5], &[1, 2, 4, 5]])).unwrap();
        assert!((r[(0, 1)] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reflected_column_anticorrelates() {
        let r = correlation_matrix(&responses(&[&[1, 2, 4, 5, 3], &[5, 4, 2, 1, 3]])).unwrap();
        assert!((r[(0, 1)] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn hand_computed_pearson() {
        // deviations (-1,0,1) and (-1,1,0): cov sum 1, var sums 2 → r = 1/2
        let r = correlation_matrix(&responses(&[&[1, 2, 3], &[1, 3, 2]])).unwrap();
        assert!((r[(0, 1)] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_variance_names_item() {
        let err = correlation_matrix(&responses(&[&[1, 2, 3], &[4, 4, 4]])).unwrap_err();
        assert!(matches!(err, Error::ZeroVariance { ref item } if item == "i1"));
    }

    #[test]
    fn single_respondent_rejected() {
        assert!(correlation_matrix(&responses(&[&[1], &[2]])).is_err());
    }

    #[test]
    fn identity_eigen() {
        let e = eig_sym(&Matrix::identity(3)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = Matrix::from_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let e = eig_sym(&m).unwrap();
        assert!((e.eigenvalues[0] - 1.5).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 0.5).abs() < 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = &e.eigenvectors;
        assert!((v[(0, 0)].abs() - h).abs() < 1e-12 && (v[(1, 0)] - v[(0, 0)]).abs() < 1e-12);
        assert!((v[(0, 1)] + v[(1, 1)]).abs() < 1e-12);
        // sign convention: largest component positive, first index on tie
        assert!(v[(0, 0)] > 0.0 && v[(0, 1)] > 0.0);
    }

    #[test]
    fn eig_rejects_bad_input() {
        let rect = Matrix::zeros(2, 3);
        assert!(eig_sym(&rect).is_err());
        let asym = Matrix::from_rows(&[vec![1.0, 0.2], vec![0.3, 1.0]]).unwrap();
        assert!(matches!(eig_sym(&asym), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn inverse_of_identity_and_2x2() {
        let (inv, det) = inverse_and_det(&Matrix::identity(4)).unwrap();
        assert_eq!(inv, Matrix::identity(4));
        assert_eq!(det, 1.0);
        let m = Matrix::from_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let (inv, det) = inverse_and_det(&m).unwrap();
        assert!((det - 0.75).abs() < 1e-15);
        let prod = m.matmul(&inv).unwrap();
        assert!(prod.frobenius_distance(&Matrix::identity(2)) < 1e-12);
    }

    #[test]
    fn singular_is_an_error() {
        let m = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(inverse_and_det(&m), Err(Error::Singular { .. })));
    }

    #[test]
    fn determinant_sign_tracks_row_swaps() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (_, det) = inverse_and_det(&m).unwrap();
        assert_eq!(det, -1.0);
    }
}
