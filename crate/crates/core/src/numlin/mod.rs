//! Dense complex linear algebra for small matrices.
//!
//! Everything here works on [`ComplexMatrix`], a row-major dense matrix of
//! [`Complex64`]. Orders up to a few dozen are the intended range.

mod general;
mod hermitian;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, RootSet};

pub use general::general_eigvals;
pub use hermitian::{hermitian_eig, top_eigenpair};

/// Complex scalar used throughout the crate.
pub type ComplexScalar = Complex64;

/// Eigenvalues, optionally with unit-norm eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub values: Vec<Complex64>,
    pub vectors: Option<ComplexMatrix>,
}

/// Dense complex matrix in row-major order with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty("matrix dimensions"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Column vector with the given entries.
    pub fn column(entries: &[Complex64]) -> Self {
        Self::from_fn(entries.len(), 1, |i, _| entries[i])
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().iter().sum()
    }

    /// `tau(A) = trace(A) / n`.
    pub fn normalized_trace(&self) -> Complex64 {
        self.trace() / self.rows as f64
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// `A - shift * I`.
    pub fn shifted(&self, shift: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= shift;
        }
        m
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} columns vs vector of length {}",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `x* A x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<Complex64> {
        let ax = self.mul_vec(x)?;
        Ok(dot(x, &ax))
    }

    /// `||A - A*||_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.rows;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..self.cols {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    /// `||A A* - A* A||_F`.
    pub fn normality_defect(&self) -> f64 {
        let a_star = adjoint(self);
        let left = mat_mul(self, &a_star).expect("square");
        let right = mat_mul(&a_star, self).expect("square");
        left.sub(&right).expect("same shape").frobenius_norm()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{z:.6}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `x* y`.
pub fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// Matrix product.
pub fn mat_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut c = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            let b_row = b.row(k);
            let c_row = &mut c.data[i * b.cols..(i + 1) * b.cols];
            for (cij, bkj) in c_row.iter_mut().zip(b_row) {
                *cij += aik * bkj;
            }
        }
    }
    Ok(c)
}

/// Conjugate transpose.
pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}

/// Principal submatrix with row and column `i` (zero-based) deleted.
pub fn principal_submatrix(a: &ComplexMatrix, i: usize) -> Result<ComplexMatrix> {
    let n = a.order()?;
    if n < 2 {
        return Err(Error::InvalidArgument("principal submatrix of a 1x1 matrix".into()));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, order: n });
    }
    let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
    Ok(ComplexMatrix::from_fn(n - 1, n - 1, |r, c| a[(keep[r], keep[c])]))
}

/// Characteristic polynomial `det(tI - A)`, expanded from the eigenvalues.
pub fn char_poly(a: &ComplexMatrix) -> Result<Polynomial> {
    let values = general_eigvals(a)?;
    Polynomial::from_roots(&RootSet::new(values))
}

/// Determinant by LU factorisation with partial pivoting.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.order()?;
    let mut m = a.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&x, &y| m[(x, k)].norm().total_cmp(&m[(y, k)].norm()))
            .expect("nonempty range");
        let p = m[(pivot, k)];
        if p.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            det = -det;
        }
        det *= p;
        for i in k + 1..n {
            let factor = m[(i, k)] / p;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let mkj = m[(k, j)];
                m[(i, j)] -= factor * mkj;
            }
        }
    }
    Ok(det)
}

/// Householder vector `v` (unit norm) with `(I - 2vv*) x = alpha e_1`.
/// Returns `None` when `x` is already zero below its first entry and
/// real-nonnegative in it, so no reflection is needed.
pub(crate) fn householder(x: &[Complex64]) -> Option<(Vec<Complex64>, Complex64)> {
    let norm = vec_norm(x);
    if norm == 0.0 {
        return None;
    }
    let x0 = x[0];
    let phase = if x0.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        x0 / x0.norm()
    };
    let alpha = -phase * norm;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vnorm = vec_norm(&v);
    if vnorm == 0.0 {
        return None;
    }
    for z in &mut v {
        *z /= vnorm;
    }
    Some((v, alpha))
}

/// `M <- (I - 2vv*) M` on rows `offset..offset+len(v)`, all columns from `col_start`.
pub(crate) fn reflect_rows(m: &mut ComplexMatrix, v: &[Complex64], offset: usize, col_start: usize) {
    for j in col_start..m.cols {
        let s: Complex64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * m[(offset + r, j)]).sum();
        let s2 = s * 2.0;
        for (r, vr) in v.iter().enumerate() {
            m[(offset + r, j)] -= vr * s2;
        }
    }
}

/// `M <- M (I - 2vv*)` on columns `offset..offset+len(v)`, rows `0..row_end`.
pub(crate) fn reflect_cols(m: &mut ComplexMatrix, v: &[Complex64], offset: usize, row_end: usize) {
    for i in 0..row_end {
        let s: Complex64 = v.iter().enumerate().map(|(c, vc)| m[(i, offset + c)] * vc).sum();
        let s2 = s * 2.0;
        for (c, vc) in v.iter().enumerate() {
            m[(i, offset + c)] -= s2 * vc.conj();
        }
    }
}
