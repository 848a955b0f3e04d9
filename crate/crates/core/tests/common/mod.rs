//! Independent oracles and instance generators shared by the integration
//! tests. Nothing here calls the library's eigen- or rootfinders.

#![allow(dead_code)]

use critloc::numlin::ComplexMatrix;
use critloc::poly::RootSet;
use critloc::rng::SampleRng;
use critloc::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Zeros of `a t^2 + b t + c` by the quadratic formula.
pub fn quadratic_roots(a: Complex64, b: Complex64, c0: Complex64) -> [Complex64; 2] {
    let disc = (b * b - a * c0 * 4.0).sqrt();
    // Pick the sign that avoids cancellation, recover the other from Vieta.
    let q = if (b.conj() * disc).re >= 0.0 {
        (b + disc) * -0.5
    } else {
        (b - disc) * -0.5
    };
    if q.norm() == 0.0 {
        return [c(0.0, 0.0), c(0.0, 0.0)];
    }
    [q / a, c0 / q]
}

/// Critical points of `(t - a)(t - b)(t - c)`: zeros of
/// `3t^2 - 2(a+b+c)t + (ab+bc+ca)`.
pub fn cubic_critical_points(v: [Complex64; 3]) -> [Complex64; 2] {
    let s1 = v[0] + v[1] + v[2];
    let s2 = v[0] * v[1] + v[1] * v[2] + v[2] * v[0];
    quadratic_roots(c(3.0, 0.0), -s1 * 2.0, s2)
}

/// Coefficients (ascending) of `prod (t - z_k)`.
pub fn expand(zeros: &[Complex64]) -> Vec<Complex64> {
    let mut p = vec![c(1.0, 0.0)];
    for &z in zeros {
        let mut next = vec![c(0.0, 0.0); p.len() + 1];
        for (k, &a) in p.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * z;
        }
        p = next;
    }
    p
}

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

/// All zeros of a polynomial (ascending coefficients) by Aberth-Ehrlich
/// simultaneous iteration.
pub fn aberth_roots(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|&a| a / lead).collect();
    let dp: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for k in 0..n {
            let ratio = horner(&monic, z[k]) / horner(&dp, z[k]);
            if !ratio.re.is_finite() || !ratio.im.is_finite() {
                continue;
            }
            let repulse: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (c(1.0, 0.0) - ratio * repulse);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Critical points of `prod (t - z_k)` via Aberth on the derivative.
pub fn aberth_critical_points(zeros: &[Complex64]) -> Vec<Complex64> {
    let p = expand(zeros);
    let dp: Vec<Complex64> = (1..p.len()).map(|k| p[k] * k as f64).collect();
    aberth_roots(&dp)
}

/// Largest distance under the best pairing, by trying every permutation.
pub fn brute_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    fn go(a: &[Complex64], b: &mut Vec<Complex64>, k: usize, cur: f64, best: &mut f64) {
        if cur >= *best {
            return;
        }
        if k == a.len() {
            *best = cur;
            return;
        }
        for j in k..b.len() {
            b.swap(k, j);
            let d = (a[k] - b[k]).norm();
            go(a, b, k + 1, cur.max(d), best);
            b.swap(k, j);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), 0, 0.0, &mut best);
    best
}

/// Determinant by cofactor expansion.
pub fn laplace_det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<Complex64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            m[0][j] * laplace_det(&minor) * sign
        })
        .sum()
}

pub fn rows(a: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..a.n_rows()).map(|i| a.row(i).to_vec()).collect()
}

/// Hull vertices of a finite set by the O(n^3) definition: a point is a
/// vertex when some line through it and another point has every other
/// point strictly on one side, and it is an endpoint of that supporting
/// segment.
pub fn brute_hull_vertices(points: &[Complex64], eps: f64) -> Vec<Complex64> {
    let n = points.len();
    let cross = |o: Complex64, a: Complex64, b: Complex64| {
        let (u, v) = (a - o, b - o);
        u.re * v.im - u.im * v.re
    };
    let mut out: Vec<Complex64> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (points[i], points[j]);
            if (p - q).norm() <= eps {
                continue;
            }
            let len = (q - p).norm();
            // Directed edge p -> q of a counterclockwise hull: everything on
            // the left or on the segment itself.
            let ok = points.iter().all(|&r| {
                let d = cross(p, q, r) / len;
                if d > eps {
                    return true;
                }
                if d < -eps {
                    return false;
                }
                let t = ((r - p) * (q - p).conj()).re / (len * len);
                (-eps..=1.0 + eps).contains(&t)
            });
            if ok {
                for z in [p, q] {
                    if !out.iter().any(|&w| (w - z).norm() <= eps) {
                        out.push(z);
                    }
                }
            }
        }
    }
    out
}

/// Random unitary from Gram-Schmidt on a random matrix.
pub fn random_unitary(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| rng.disk()).collect();
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `U diag(lams) U*` by explicit triple sums.
pub fn normal_matrix(u: &ComplexMatrix, lams: &[Complex64]) -> ComplexMatrix {
    let n = lams.len();
    ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| u[(i, k)] * lams[k] * u[(j, k)].conj()).sum()
    })
}

/// Support function of the field of values of a 2x2 matrix, from its
/// Schur form `[[l1, s], [0, l2]]`:
/// `h(theta) = Re(e^{-i theta}(l1 + l2)/2) + sqrt(Re(e^{-i theta}(l1 - l2))^2 + |s|^2) / 2`.
pub fn two_by_two_support(a: &ComplexMatrix, theta: f64) -> f64 {
    let tr = a[(0, 0)] + a[(1, 1)];
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let [l1, l2] = quadratic_roots(c(1.0, 0.0), -tr, det);
    let frob2: f64 = a.entries().iter().map(|z| z.norm_sqr()).sum();
    let s2 = (frob2 - l1.norm_sqr() - l2.norm_sqr()).max(0.0);
    let rot = Complex64::from_polar(1.0, -theta);
    let gap = (rot * (l1 - l2)).re;
    (rot * (l1 + l2) * 0.5).re + 0.5 * (gap * gap + s2).sqrt()
}

/// Random instance sizes cycling through `lo..=hi`.
pub fn size_cycle(k: usize, lo: usize, hi: usize) -> usize {
    lo + k % (hi - lo + 1)
}

pub fn disk_zeros(rng: &mut SampleRng, n: usize) -> RootSet {
    rng.disk_points(n)
}

/// Characteristic polynomial `det(tI - M)` (ascending, monic) by the
/// Faddeev-LeVerrier recursion.
pub fn faddeev_leverrier(m: &ComplexMatrix) -> Vec<Complex64> {
    let n = m.n_rows();
    let mul = |a: &Vec<Vec<Complex64>>, b: &Vec<Vec<Complex64>>| -> Vec<Vec<Complex64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    };
    let a = rows(m);
    let mut coeffs = vec![c(0.0, 0.0); n + 1];
    coeffs[n] = c(1.0, 0.0);
    let mut mk: Vec<Vec<Complex64>> = vec![vec![c(0.0, 0.0); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += coeffs[n - k + 1];
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr: Complex64 = (0..n).map(|i| am[i][i]).sum();
        coeffs[n - k] = -tr / k as f64;
    }
    coeffs
}

pub mod strategies {
    use super::*;
    use proptest::prelude::*;

    pub fn disk_point() -> impl Strategy<Value = Complex64> {
        (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(u, phi)| Complex64::from_polar(u.sqrt(), phi))
    }

    pub fn zeros(lo: usize, hi: usize) -> impl Strategy<Value = RootSet> {
        prop::collection::vec(disk_point(), lo..=hi).prop_map(RootSet::new)
    }

    pub fn matrix(lo: usize, hi: usize) -> impl Strategy<Value = ComplexMatrix> {
        (lo..=hi).prop_flat_map(|n| {
            prop::collection::vec(disk_point(), n * n).prop_map(move |v| ComplexMatrix::new(n, n, v).unwrap())
        })
    }

    /// `z -> alpha z + beta` with `|alpha|` kept away from 0 and infinity.
    pub fn affine() -> impl Strategy<Value = (Complex64, Complex64)> {
        (0.1..10.0f64, 0.0..std::f64::consts::TAU, disk_point(), 0.0..10.0f64)
            .prop_map(|(r, t, b, s)| (Complex64::from_polar(r, t), b * s))
    }
}
