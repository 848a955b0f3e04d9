//! Field of values `F(A) = { x* A x : ||x|| = 1 }`.
//!
//! The boundary is traced through the support function
//! `h(theta) = max Re(e^{-i theta} z)` over `z` in `F(A)`, which equals the
//! top eigenvalue of the Hermitian matrix
//! `H(theta) = (e^{-i theta} A + e^{i theta} A*) / 2`. A unit top
//! eigenvector `x` gives the boundary point `x* A x` with outward normal
//! `e^{i theta}`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numlin::{adjoint, determinant, general_eigvals, hermitian_eig, top_eigenpair, ComplexMatrix};
use crate::tolerance::{EPS, TOP_GAP};

/// One sample of the support-function sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub theta: f64,
    pub support_value: f64,
    pub boundary_point: Complex64,
    /// The top eigenvalue of `H(theta)` was degenerate, so `theta` is the
    /// normal of a flat boundary segment and the point is one of many.
    pub flat: bool,
}

/// Support-function samples at `theta_k = 2 pi k / m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryPolyline {
    pub samples: Vec<BoundarySample>,
}

impl BoundaryPolyline {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.samples.iter().map(|s| s.boundary_point).collect()
    }

    /// `max_k Re(e^{-i theta_k} z) - h(theta_k)`: positive iff some sampled
    /// support line separates `z` from the set.
    pub fn sampled_margin(&self, z: Complex64) -> f64 {
        self.samples
            .iter()
            .map(|s| directional(z, s.theta) - s.support_value)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// A possibly degenerate ellipse given by its foci and minor semi-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipseParams {
    pub focus1: Complex64,
    pub focus2: Complex64,
    pub minor_semi_axis: f64,
    pub center: Complex64,
    pub major_semi_axis: f64,
    /// Argument of `focus2 - focus1` in `(-pi, pi]`; zero for coincident foci.
    pub rotation: f64,
}

impl EllipseParams {
    /// Completes the record from foci and minor semi-axis.
    pub fn from_foci(focus1: Complex64, focus2: Complex64, minor_semi_axis: f64) -> Self {
        let half_gap = (focus2 - focus1).norm() * 0.5;
        let rotation = if half_gap == 0.0 { 0.0 } else { (focus2 - focus1).arg() };
        Self {
            focus1,
            focus2,
            minor_semi_axis,
            center: (focus1 + focus2) * 0.5,
            major_semi_axis: minor_semi_axis.hypot(half_gap),
            rotation,
        }
    }

    /// Completes the record from centre, semi-axes and the direction of the
    /// major axis.
    pub fn from_axes(center: Complex64, major: f64, minor: f64, direction: f64) -> Self {
        let c = (major * major - minor * minor).max(0.0).sqrt();
        let offset = Complex64::from_polar(c, direction);
        let mut e = Self::from_foci(center - offset, center + offset, minor);
        e.major_semi_axis = major;
        e.center = center;
        e
    }

    pub fn focal_half_distance(&self) -> f64 {
        (self.focus2 - self.focus1).norm() * 0.5
    }

    pub fn is_segment(&self, tol: f64) -> bool {
        self.minor_semi_axis <= tol
    }

    /// Boundary point at parameter `t`.
    pub fn point_at(&self, t: f64) -> Complex64 {
        let local = Complex64::new(self.major_semi_axis * t.cos(), self.minor_semi_axis * t.sin());
        self.center + Complex64::from_polar(1.0, self.rotation) * local
    }

    /// Support function of the filled ellipse (or segment).
    pub fn support(&self, theta: f64) -> f64 {
        let phi = theta - self.rotation;
        directional(self.center, theta) + (self.major_semi_axis * phi.cos()).hypot(self.minor_semi_axis * phi.sin())
    }

    /// Euclidean distance from `z` to the boundary curve.
    pub fn distance_to_boundary(&self, z: Complex64) -> f64 {
        let f = |t: f64| (self.point_at(t) - z).norm();
        let grid = 256;
        let (mut best_t, mut best) = (0.0, f64::INFINITY);
        for k in 0..grid {
            let t = TAU * k as f64 / grid as f64;
            let d = f(t);
            if d < best {
                best = d;
                best_t = t;
            }
        }
        let h = TAU / grid as f64;
        let t = golden_min(&f, best_t - h, best_t + h, 60);
        f(t).min(best)
    }
}

fn golden_min(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

/// `Re(e^{-i theta} z)`.
pub fn directional(z: Complex64, theta: f64) -> f64 {
    z.re * theta.cos() + z.im * theta.sin()
}

/// `H(theta) = (e^{-i theta} A + e^{i theta} A*) / 2`.
pub fn hermitian_part_at(a: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    let n = a.order()?;
    let w = Complex64::from_polar(0.5, -theta);
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        w * a[(i, j)] + (w * a[(j, i)]).conj()
    }))
}

/// `(h(theta), boundary point)`.
pub fn support_point(a: &ComplexMatrix, theta: f64) -> Result<(f64, Complex64)> {
    let s = support_sample(a, theta)?;
    Ok((s.support_value, s.boundary_point))
}

/// Support value only.
pub fn support_value(a: &ComplexMatrix, theta: f64) -> Result<f64> {
    let h = hermitian_part_at(a, theta)?;
    let eig = hermitian_eig(&h)?;
    Ok(eig.values.last().expect("order >= 1").re)
}

fn support_sample(a: &ComplexMatrix, theta: f64) -> Result<BoundarySample> {
    let h = hermitian_part_at(a, theta)?;
    let (top, x, gap) = top_eigenpair(&h)?;
    let boundary_point = a.quadratic_form(&x)?;
    Ok(BoundarySample {
        theta,
        support_value: top,
        boundary_point,
        flat: gap < TOP_GAP * (1.0 + top.abs()),
    })
}

/// Sweep at `theta_k = 2 pi k / m`, `k = 0, ..., m-1`.
pub fn boundary_polyline(a: &ComplexMatrix, m: usize) -> Result<BoundaryPolyline> {
    if m < 8 {
        return Err(Error::InvalidArgument(format!(
            "boundary sweep needs at least 8 samples, got {m}"
        )));
    }
    let samples = sweep_angles(m)
        .map(|theta| support_sample(a, theta))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryPolyline { samples })
}

pub fn sweep_angles(m: usize) -> impl Iterator<Item = f64> {
    (0..m).map(move |k| TAU * k as f64 / m as f64)
}

/// Sampled outer membership test: `Re(e^{-i theta_k} z) <= h(theta_k) + slack`
/// for every sweep angle.
pub fn contains_point(a: &ComplexMatrix, z: Complex64, m: usize, slack: f64) -> Result<bool> {
    Ok(boundary_polyline(a, m)?.sampled_margin(z) <= slack)
}

/// Separation of `z` from `F(A)`: the sampled margin, refined by a
/// golden-section search around the best sweep angle. Positive values are
/// distances from an exterior point to the set (up to the accuracy of the
/// search); values `<= 0` mean no separating support line was found.
pub fn support_margin(a: &ComplexMatrix, poly: &BoundaryPolyline, z: Complex64) -> Result<f64> {
    let m = poly.len();
    let (k_best, base) = poly
        .samples
        .iter()
        .enumerate()
        .map(|(k, s)| (k, directional(z, s.theta) - s.support_value))
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .ok_or(Error::Empty("boundary polyline"))?;
    let theta0 = poly.samples[k_best].theta;
    let h = TAU / m as f64;
    let mut err = None;
    let mut g = |t: f64| match support_value(a, t) {
        Ok(v) => v - directional(z, t),
        Err(e) => {
            err.get_or_insert(e);
            f64::INFINITY
        }
    };
    let t = golden_min(&mut g, theta0 - h, theta0 + h, 40);
    let refined = -g(t);
    match err {
        Some(e) => Err(e),
        None => Ok(base.max(refined)),
    }
}

/// `det(H1 u + H2 v + w I)` with `H1 = (A + A*)/2`, `H2 = (A - A*)/(2i)`.
///
/// The matrix is Hermitian for real `(u, v, w)`, so the value is real up to
/// rounding; the complex result is returned as computed.
pub fn kippenhahn_eval(a: &ComplexMatrix, u: f64, v: f64, w: f64) -> Result<Complex64> {
    let n = a.order()?;
    let a_star = adjoint(a);
    let two_i = Complex64::new(0.0, 2.0);
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let h1 = (a[(i, j)] + a_star[(i, j)]) * 0.5;
        let h2 = (a[(i, j)] - a_star[(i, j)]) / two_i;
        let diag = if i == j { w } else { 0.0 };
        h1 * u + h2 * v + Complex64::new(diag, 0.0)
    });
    determinant(&m)
}

/// Magnitude scale for Kippenhahn determinant values:
/// `(1 + ||A||_F * hypot(u, v) + |w|)^n`.
pub fn kippenhahn_scale(a: &ComplexMatrix, u: f64, v: f64, w: f64) -> f64 {
    (1.0 + a.frobenius_norm() * u.hypot(v) + w.abs()).powi(a.n_rows() as i32)
}

/// The field of values of a 2x2 matrix: the ellipse with the eigenvalues as
/// foci and minor axis `sqrt(trace(A*A) - |l1|^2 - |l2|^2)`.
pub fn elliptical_range(a: &ComplexMatrix) -> Result<EllipseParams> {
    if a.order()? != 2 {
        return Err(Error::InvalidArgument(format!(
            "elliptical range needs a 2x2 matrix, got order {}",
            a.n_rows()
        )));
    }
    let mut eig = general_eigvals(a)?;
    eig.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let frob2: f64 = a.entries().iter().map(|z| z.norm_sqr()).sum();
    let radicand = frob2 - eig[0].norm_sqr() - eig[1].norm_sqr();
    let guard = 1e-12 * frob2.max(1.0);
    if radicand < -guard {
        return Err(Error::Inconsistent(format!(
            "negative minor-axis radicand {radicand:e}"
        )));
    }
    // Rounding residue of a normal matrix.
    let radicand = if radicand <= 8.0 * EPS * frob2 { 0.0 } else { radicand };
    let minor = 0.5 * radicand.sqrt();
    Ok(EllipseParams::from_foci(eig[0], eig[1], minor))
}

/// Support function of the convex hull of a finite point set.
pub fn point_set_support(points: &[Complex64], theta: f64) -> f64 {
    points
        .iter()
        .map(|&z| directional(z, theta))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Outward normal angle of the directed edge `a -> b` of a counterclockwise
/// polygon, in `[0, 2 pi)`.
pub fn outward_normal_angle(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let normal = Complex64::new(d.im, -d.re);
    normal.arg().rem_euclid(TAU)
}

/// Angle wrapped into `(-pi, pi]`.
pub fn wrap_angle(t: f64) -> f64 {
    let w = (t + PI).rem_euclid(TAU) - PI;
    if w == -PI {
        PI
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn support_point_hermitian() {
        let d = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let (h, b) = support_point(&d, 0.0).unwrap();
        assert!((h - 2.0).abs() < 1e-15);
        assert!((b - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn support_point_nilpotent_disk() {
        for k in 0..12 {
            let theta = 0.5 * k as f64;
            let (h, b) = support_point(&nilpotent(), theta).unwrap();
            assert!((h - 0.5).abs() < 1e-14);
            assert!((b - Complex64::from_polar(0.5, theta)).norm() < 1e-12, "{theta}: {b}");
        }
    }

    #[test]
    fn support_point_topmost() {
        let d = ComplexMatrix::from_diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let (h, b) = support_point(&d, PI / 2.0).unwrap();
        assert!((h - 1.0).abs() < 1e-15);
        assert!((b - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn polyline_of_hermitian_is_real_segment() {
        let d = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let p = boundary_polyline(&d, 360).unwrap();
        assert_eq!(p.len(), 360);
        for s in &p.samples {
            assert!(s.boundary_point.im.abs() < 1e-14);
            assert!(s.boundary_point.re >= 1.0 - 1e-14 && s.boundary_point.re <= 2.0 + 1e-14);
        }
        // theta = pi/2 is the normal of the flat segment itself.
        assert!(p.samples[90].flat);
    }

    #[test]
    fn polyline_invariant_and_circle() {
        let p = boundary_polyline(&nilpotent(), 360).unwrap();
        for s in &p.samples {
            assert!((s.boundary_point.norm() - 0.5).abs() <= 1e-9);
            assert!((directional(s.boundary_point, s.theta) - s.support_value).abs() <= 1e-9);
        }
        assert!(boundary_polyline(&nilpotent(), 7).is_err());
    }

    #[test]
    fn contains_point_examples() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.3, 1.0), c(-2.0, 0.1), c(0.0, 0.5)],
            vec![c(1.0, 0.0), c(0.2, -0.4), c(0.7, 0.7)],
            vec![c(0.0, -1.0), c(0.5, 0.0), c(-1.0, 0.0)],
        ])
        .unwrap();
        assert!(contains_point(&a, a.normalized_trace(), 64, 1e-12).unwrap());
        for lam in general_eigvals(&a).unwrap() {
            assert!(contains_point(&a, lam, 256, 1e-8).unwrap());
        }
        let d = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(!contains_point(&d, c(10.0, 0.0), 64, 1e-8).unwrap());
    }

    #[test]
    fn support_margin_is_distance_outside() {
        let poly = boundary_polyline(&nilpotent(), 37).unwrap();
        let z = Complex64::from_polar(0.8, 0.123);
        let m = support_margin(&nilpotent(), &poly, z).unwrap();
        assert!((m - 0.3).abs() < 1e-10, "{m}");
    }

    #[test]
    fn kippenhahn_diagonal() {
        let lams = [c(1.0, 2.0), c(-0.5, 0.25), c(0.0, -1.0)];
        let d = ComplexMatrix::from_diag(&lams);
        let (u, v, w) = (0.3, -1.1, 0.7);
        let want: f64 = lams.iter().map(|l| l.re * u + l.im * v + w).product();
        let got = kippenhahn_eval(&d, u, v, w).unwrap();
        assert!((got - c(want, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn kippenhahn_nilpotent() {
        let (u, v, w) = (0.4, 1.3, -0.2);
        let got = kippenhahn_eval(&nilpotent(), u, v, w).unwrap();
        let want = w * w - (u * u + v * v) / 4.0;
        assert!((got - c(want, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn elliptical_range_examples() {
        let seg = elliptical_range(&ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)])).unwrap();
        assert_eq!((seg.focus1, seg.focus2), (c(1.0, 0.0), c(2.0, 0.0)));
        assert!(seg.minor_semi_axis < 1e-15);

        let circle = elliptical_range(&nilpotent()).unwrap();
        assert!(circle.focus1.norm() < 1e-15 && circle.focus2.norm() < 1e-15);
        assert!((circle.minor_semi_axis - 0.5).abs() < 1e-15);
        assert_eq!(circle.rotation, 0.0);

        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, -1.0]]).unwrap();
        let e = elliptical_range(&m).unwrap();
        assert!((e.focus1 - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((e.focus2 - c(1.0, 0.0)).norm() < 1e-15);
        assert!((e.minor_semi_axis - 0.5).abs() < 1e-15);
        assert!((e.major_semi_axis - 5f64.sqrt() / 2.0).abs() < 1e-15);

        assert!(elliptical_range(&ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn ellipse_support_and_distance() {
        let e = EllipseParams::from_axes(c(1.0, -1.0), 2.0, 1.0, 0.3);
        assert!((e.support(0.3) - (directional(e.center, 0.3) + 2.0)).abs() < 1e-14);
        assert!(e.distance_to_boundary(e.point_at(1.1)) < 1e-12);
        assert!((e.distance_to_boundary(e.center) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn angle_helpers() {
        assert!((outward_normal_angle(c(0.0, 0.0), c(1.0, 0.0)) - 1.5 * PI).abs() < 1e-15);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }
}
