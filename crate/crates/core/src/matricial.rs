//! DFT-conjugated normal matrices and the critical points hidden in their
//! principal submatrices.
//!
//! For zeros `l_1, ..., l_n` put `D = diag(l_1, ..., l_n)` and
//! `A = U D U*` with `U = F / sqrt(n)`, `F` the DFT matrix. Every row of `U`
//! has unimodular-over-`sqrt(n)` entries, so each canonical basis vector is a
//! trace vector for `A`, the projection `I - e_i e_i*` is a differentiator,
//! and the spectrum of every principal submatrix `A_(i)` is the multiset of
//! critical points of `p(t) = prod (t - l_k)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numlin::{adjoint, char_poly, dot, general_eigvals, mat_mul, principal_submatrix, vec_norm, ComplexMatrix};
use crate::poly::RootSet;
use crate::tolerance::UNIT_NORM;

/// Result of testing `z* A^k z = tau(A^k)` for `k = 0, ..., n-1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceVectorReport {
    pub is_trace_vector: bool,
    pub max_defect: f64,
    pub k_tested: usize,
}

/// `D`, the unitary `U`, and the normal matrix `A = U D U*`.
#[derive(Debug, Clone)]
pub struct MainConstruction {
    pub d: ComplexMatrix,
    pub u: ComplexMatrix,
    pub a: ComplexMatrix,
}

impl MainConstruction {
    pub fn order(&self) -> usize {
        self.a.n_rows()
    }

    /// `||U* U - I||_F`.
    pub fn unitarity_defect(&self) -> f64 {
        let g = mat_mul(&adjoint(&self.u), &self.u).expect("square");
        g.sub(&ComplexMatrix::identity(self.order()))
            .expect("same shape")
            .frobenius_norm()
    }
}

/// DFT matrix `F_n`, entry `(j, k) = w^(jk)` with `w = exp(-2 pi i / n)`.
pub fn dft_matrix(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("DFT matrix of order 0".into()));
    }
    Ok(ComplexMatrix::from_fn(n, n, |j, k| {
        // Reduce the exponent first so large orders keep full accuracy.
        let e = (j * k) % n;
        Complex64::from_polar(1.0, -2.0 * PI * e as f64 / n as f64)
    }))
}

/// `|h_ij| = 1` for every entry and `H H* = nI`, both up to `tol`.
pub fn is_complex_hadamard(h: &ComplexMatrix, tol: f64) -> Result<bool> {
    let n = h.order()?;
    if h.entries().iter().any(|z| (z.norm() - 1.0).abs() > tol) {
        return Ok(false);
    }
    let gram = mat_mul(h, &adjoint(h))?;
    let target = ComplexMatrix::identity(n).scale(Complex64::new(n as f64, 0.0));
    Ok(gram.max_abs_diff(&target)? <= tol * n as f64)
}

/// The DFT construction for the given zeros, kept in input order.
pub fn build_construction(zeros: &RootSet) -> Result<MainConstruction> {
    let n = zeros.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "construction needs at least 2 zeros, got {n}"
        )));
    }
    build_construction_with(zeros, &dft_matrix(n)?)
}

/// Same construction with a caller-supplied complex Hadamard matrix.
pub fn build_construction_with(zeros: &RootSet, hadamard: &ComplexMatrix) -> Result<MainConstruction> {
    let n = zeros.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "construction needs at least 2 zeros, got {n}"
        )));
    }
    if !zeros.is_finite() {
        return Err(Error::NonFinite("zeros"));
    }
    if hadamard.order()? != n {
        return Err(Error::DimensionMismatch(format!(
            "Hadamard matrix of order {} for {n} zeros",
            hadamard.n_rows()
        )));
    }
    if !is_complex_hadamard(hadamard, 1e-10)? {
        return Err(Error::InvalidArgument(
            "supplied matrix is not a complex Hadamard matrix".into(),
        ));
    }
    let u = hadamard.scale(Complex64::new(1.0 / (n as f64).sqrt(), 0.0));
    let d = ComplexMatrix::from_diag(&zeros.points);
    let a = mat_mul(&mat_mul(&u, &d)?, &adjoint(&u))?;
    Ok(MainConstruction { d, u, a })
}

fn check_unit(z: &[Complex64]) -> Result<()> {
    let norm = vec_norm(z);
    if (norm - 1.0).abs() > UNIT_NORM {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(())
}

/// Tests `z* A^k z = tau(A^k)` for `k = 0, ..., n-1`. By Cayley-Hamilton
/// every higher power is a combination of these, so this range decides the
/// condition for all `k`.
pub fn is_trace_vector(a: &ComplexMatrix, z: &[Complex64], tol: f64) -> Result<TraceVectorReport> {
    let n = a.order()?;
    if z.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for order {n}",
            z.len()
        )));
    }
    check_unit(z)?;
    let mut power = ComplexMatrix::identity(n);
    let mut v = z.to_vec();
    let mut max_defect: f64 = 0.0;
    for k in 0..n {
        if k > 0 {
            power = mat_mul(&power, a)?;
            v = a.mul_vec(&v)?;
        }
        let defect = (dot(z, &v) - power.normalized_trace()).norm();
        max_defect = max_defect.max(defect);
    }
    Ok(TraceVectorReport {
        is_trace_vector: max_defect <= tol,
        max_defect,
        k_tested: n,
    })
}

/// Orthonormal basis of the orthogonal complement of the unit vector `z`,
/// as the columns of an `n x (n-1)` matrix. Built by modified Gram-Schmidt
/// on `z` followed by the canonical vectors, skipping the index where `|z|`
/// is largest.
pub fn complement_basis(z: &[Complex64]) -> Result<ComplexMatrix> {
    let n = z.len();
    if n < 2 {
        return Err(Error::InvalidArgument("complement of a vector in C^1".into()));
    }
    check_unit(z)?;
    let pivot = (0..n)
        .max_by(|&a, &b| z[a].norm().total_cmp(&z[b].norm()))
        .expect("nonempty");
    let mut basis: Vec<Vec<Complex64>> = vec![z.to_vec()];
    for k in (0..n).filter(|&k| k != pivot) {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        w[k] = Complex64::new(1.0, 0.0);
        // Two passes keep the basis orthonormal to working precision.
        for _ in 0..2 {
            for q in &basis {
                let proj = dot(q, &w);
                if proj.norm() != 0.0 {
                    for (wi, qi) in w.iter_mut().zip(q) {
                        *wi -= proj * qi;
                    }
                }
            }
        }
        let norm = vec_norm(&w);
        for wi in &mut w {
            *wi /= norm;
        }
        basis.push(w);
    }
    Ok(ComplexMatrix::from_fn(n, n - 1, |i, j| basis[j + 1][i]))
}

/// The compression of `A` onto the orthogonal complement of `z`, written in
/// the basis of [`complement_basis`]. For `z = e_i` this is exactly `A_(i)`.
pub fn compression(a: &ComplexMatrix, z: &[Complex64]) -> Result<ComplexMatrix> {
    let n = a.order()?;
    if n < 2 {
        return Err(Error::InvalidArgument("compression of a 1x1 matrix".into()));
    }
    if z.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for order {n}",
            z.len()
        )));
    }
    let q = complement_basis(z)?;
    mat_mul(&mat_mul(&adjoint(&q), a)?, &q)
}

/// Largest coefficient discrepancy between `p_B` (the compression's
/// characteristic polynomial) and `p_A' / n`.
pub fn differentiator_defect(a: &ComplexMatrix, z: &[Complex64]) -> Result<f64> {
    let n = a.order()?;
    let b = compression(a, z)?;
    let pb = char_poly(&b)?;
    let target = char_poly(a)?.derivative()?;
    let inv_n = 1.0 / n as f64;
    Ok(pb
        .coeffs()
        .iter()
        .zip(target.coeffs())
        .map(|(x, y)| (x - y * inv_n).norm())
        .fold(0.0, f64::max))
}

/// `p_B = p_A' / n` coefficientwise within `tol * (1 + ||A||_F)^n`.
pub fn is_differentiator(a: &ComplexMatrix, z: &[Complex64], tol: f64) -> Result<bool> {
    let n = a.order()?;
    let allowed = tol * (1.0 + a.frobenius_norm()).powi(n as i32);
    Ok(differentiator_defect(a, z)? <= allowed)
}

/// Spectrum of `A_(i)` (zero-based `i`) for the DFT construction on `zeros`.
pub fn critical_points_matricial(zeros: &RootSet, i: usize) -> Result<RootSet> {
    let c = build_construction(zeros)?;
    critical_points_from(&c, i)
}

/// Spectrum of `A_(i)` for an existing construction.
pub fn critical_points_from(c: &MainConstruction, i: usize) -> Result<RootSet> {
    let sub = principal_submatrix(&c.a, i)?;
    Ok(RootSet::new(general_eigvals(&sub)?))
}

/// Canonical basis vector `e_i` (zero-based) of `C^n`.
pub fn basis_vector(n: usize, i: usize) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    e[i] = Complex64::new(1.0, 0.0);
    e
}
