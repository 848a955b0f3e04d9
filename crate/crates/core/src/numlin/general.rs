//! Eigenvalues of a general complex matrix: Householder reduction to upper
//! Hessenberg form followed by Wilkinson-shifted QR sweeps with deflation.

use num_complex::Complex64;

use super::{householder, reflect_cols, reflect_rows, ComplexMatrix};
use crate::error::{Error, Result};
use crate::tolerance::{EPS, QR_SWEEPS_PER_ORDER};

/// All `n` eigenvalues, repeated according to algebraic multiplicity.
/// Ordering follows deflation and carries no meaning.
pub fn general_eigvals(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.order()?;
    let mut h = a.clone();
    hessenberg(&mut h);
    hessenberg_qr(h, n)
}

fn hessenberg(h: &mut ComplexMatrix) {
    let n = h.n_rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        if x[1..].iter().all(|z| z.norm() == 0.0) {
            continue;
        }
        if let Some((v, _)) = householder(&x) {
            reflect_rows(h, &v, k + 1, k);
            reflect_cols(h, &v, k + 1, n);
            for i in k + 2..n {
                h[(i, k)] = Complex64::new(0.0, 0.0);
            }
        }
    }
}

/// Eigenvalues of the 2x2 block `[[a, b], [c, d]]`.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    // Recover the smaller root from the product where cancellation bites.
    let det = a * d - b * c;
    if l1.norm() >= l2.norm() && l1.norm() > 0.0 {
        (l1, det / l1)
    } else if l2.norm() > 0.0 {
        (det / l2, l2)
    } else {
        (l1, l2)
    }
}

fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let (l1, l2) = eig2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr(mut h: ComplexMatrix, n: usize) -> Result<Vec<Complex64>> {
    let mut values = Vec::with_capacity(n);
    let norm = h.frobenius_norm();
    if norm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let cap = QR_SWEEPS_PER_ORDER * n;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n as isize - 1;

    while hi >= 0 {
        let hu = hi as usize;
        if hu == 0 {
            values.push(h[(0, 0)]);
            break;
        }
        // Locate the top of the active unreduced block.
        let mut lo = hu;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if diag == 0.0 {
                diag = norm;
            }
            if sub <= EPS * diag || sub <= f64::MIN_POSITIVE / EPS {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hu {
            values.push(h[(hu, hu)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if lo + 1 == hu {
            let (l1, l2) = eig2(h[(lo, lo)], h[(lo, hu)], h[(hu, lo)], h[(hu, hu)]);
            values.push(l1);
            values.push(l2);
            hi -= 2;
            since_deflation = 0;
            continue;
        }

        sweeps += 1;
        since_deflation += 1;
        if sweeps > cap {
            return Err(Error::NonConvergence(format!(
                "Hessenberg QR exceeded {cap} sweeps for order {n}"
            )));
        }
        let shift = if since_deflation.is_multiple_of(11) {
            // Exceptional shift to break cycles.
            h[(hu, hu)] + Complex64::new(0.75 * h[(hu, hu - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hu)
        };
        qr_sweep(&mut h, lo, hu, shift);
    }

    if values.len() != n {
        return Err(Error::Inconsistent(format!(
            "QR produced {} eigenvalues for order {n}",
            values.len()
        )));
    }
    Ok(values)
}

/// One explicit-shift QR step `H - sI = QR, H <- RQ + sI` on rows and
/// columns `lo..=hi` via Givens rotations.
fn qr_sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[(k, k)];
        let y = h[(k + 1, k)];
        let r = x.norm().hypot(y.norm());
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (x / r, y / r)
        };
        // G = [[c*, s*], [-s, c]] sends (x, y) to (r, 0).
        for j in k..=hi {
            let a = h[(k, j)];
            let b = h[(k + 1, j)];
            h[(k, j)] = c.conj() * a + s.conj() * b;
            h[(k + 1, j)] = -s * a + c * b;
        }
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        rotations.push((c, s));
    }
    for (idx, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + idx;
        let top = (k + 2).min(hi);
        // Right-multiply by G*.
        for i in lo..=top {
            let a = h[(i, k)];
            let b = h[(i, k + 1)];
            h[(i, k)] = a * c + b * s;
            h[(i, k + 1)] = -a * s.conj() + b * c.conj();
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal() {
        let d = ComplexMatrix::from_diag(&[c(1.0, 1.0), c(2.0, 0.0)]);
        let v = sorted(general_eigvals(&d).unwrap());
        assert_eq!(v, vec![c(1.0, 1.0), c(2.0, 0.0)]);
    }

    #[test]
    fn nilpotent() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let v = general_eigvals(&m).unwrap();
        assert!(v.iter().all(|z| z.norm() == 0.0));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn companion_of_quadratic() {
        // t^2 - 3t + 2.
        let m = ComplexMatrix::from_real_rows(&[&[0.0, -2.0], &[1.0, 3.0]]).unwrap();
        for z in general_eigvals(&m).unwrap() {
            assert!((z * z - z * 3.0 + 2.0).norm() <= 1e-9);
        }
    }

    #[test]
    fn rotation_has_imaginary_spectrum() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let v = sorted(general_eigvals(&m).unwrap());
        assert!((v[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((v[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn shift_cycle_matrix() {
        // Cyclic permutation: eigenvalues are the 5th roots of unity, a
        // classic stall case for unshifted QR.
        let n = 5;
        let m = ComplexMatrix::from_fn(n, n, |i, j| if i == (j + 1) % n { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let v = general_eigvals(&m).unwrap();
        for z in v {
            assert!((z.powu(5) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_square() {
        assert!(general_eigvals(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
