//! Hermitian eigensolver: Householder reduction to a complex tridiagonal
//! form, a diagonal phase similarity that makes it real symmetric, then
//! implicit-shift QL with eigenvector accumulation.

use num_complex::Complex64;

use super::{householder, mat_mul, reflect_cols, reflect_rows, ComplexMatrix, EigenResult};
use crate::error::{Error, Result};
use crate::tolerance::{EPS, HERMITIAN_SKEW, QL_ITERATIONS};

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues are real (imaginary parts exactly zero) and ascending; the
/// eigenvector matrix is unitary.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenResult> {
    let n = a.order()?;
    let norm = a.frobenius_norm();
    let defect = a.hermitian_defect();
    let allowed = HERMITIAN_SKEW * norm;
    if defect > allowed {
        return Err(Error::NotHermitian { defect, allowed });
    }

    // Work on the exactly Hermitian part.
    let mut t = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut q = ComplexMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| t[(i, k)]).collect();
        if x[1..].iter().all(|z| z.norm() == 0.0) {
            continue;
        }
        if let Some((v, _)) = householder(&x) {
            reflect_rows(&mut t, &v, k + 1, 0);
            reflect_cols(&mut t, &v, k + 1, n);
            reflect_cols(&mut q, &v, k + 1, n);
        }
    }

    let mut d: Vec<f64> = (0..n).map(|i| t[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let sub = t[(k + 1, k)];
        let r = sub.norm();
        e[k + 1] = r;
        phases[k + 1] = if r > 0.0 { phases[k] * (sub / r) } else { phases[k] };
    }

    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut z)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| d[x].total_cmp(&d[y]));

    let qs = ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j]);
    let z_sorted = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(z[i][order[j]], 0.0));
    let vectors = mat_mul(&qs, &z_sorted)?;
    let values = order.iter().map(|&k| Complex64::new(d[k], 0.0)).collect();
    Ok(EigenResult {
        values,
        vectors: Some(vectors),
    })
}

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector, and the
/// gap to the next eigenvalue (infinite for order 1).
pub fn top_eigenpair(a: &ComplexMatrix) -> Result<(f64, Vec<Complex64>, f64)> {
    let eig = hermitian_eig(a)?;
    let n = eig.values.len();
    let top = eig.values[n - 1].re;
    let gap = if n > 1 {
        top - eig.values[n - 2].re
    } else {
        f64::INFINITY
    };
    let vectors = eig.vectors.expect("hermitian_eig returns vectors");
    Ok((top, vectors.col(n - 1), gap))
}

/// Symmetric tridiagonal QL with implicit shifts (EISPACK `tql2`).
///
/// `d` holds the diagonal, `e[i]` the subdiagonal entry `T[i][i-1]` with
/// `e[0]` ignored. On return `d` holds the eigenvalues and the columns of `z`
/// have been rotated into the eigenvectors.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [Vec<f64>]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= EPS * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > QL_ITERATIONS {
                    return Err(Error::NonConvergence(format!(
                        "tridiagonal QL exceeded {QL_ITERATIONS} iterations"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in z.iter_mut() {
                        let h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= EPS * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
