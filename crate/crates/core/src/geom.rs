//! Planar convex geometry on complex points.
//!
//! Tolerances taken by these predicates are relative to the scale of the
//! input, its largest pairwise distance (1 when all points coincide), so
//! every predicate is invariant under `z -> alpha z + beta`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fov::EllipseParams;
use crate::poly::RootSet;
use crate::tolerance::DEDUP;

/// `(a - o) x (b - o)`, positive for a counterclockwise turn.
pub fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    let u = a - o;
    let v = b - o;
    u.re * v.im - u.im * v.re
}

/// Scale used by relative tolerances: the diameter, or 1 for a single point.
pub fn point_scale(points: &[Complex64]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    if d > 0.0 {
        d
    } else {
        1.0
    }
}

/// Convex polygon with counterclockwise vertices. One vertex is a point,
/// two vertices a segment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    pub vertices: Vec<Complex64>,
}

impl ConvexPolygon {
    /// Wraps vertices of a convex polygon, reversing clockwise input.
    pub fn new(mut vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Empty("polygon vertices"));
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        let scale = point_scale(&vertices);
        let n = vertices.len();
        if n >= 3 {
            for k in 0..n {
                let turn = cross(vertices[k], vertices[(k + 1) % n], vertices[(k + 2) % n]);
                if turn < -1e-12 * scale * scale {
                    return Err(Error::InvalidArgument("polygon is not convex".into()));
                }
            }
        }
        Ok(Self { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn scale(&self) -> f64 {
        point_scale(&self.vertices)
    }

    /// Directed edges `(v_k, v_{k+1})`; a segment has one edge.
    pub fn edges(&self) -> Vec<(Complex64, Complex64)> {
        let n = self.vertices.len();
        match n {
            0 | 1 => Vec::new(),
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n).map(|k| (self.vertices[k], self.vertices[(k + 1) % n])).collect(),
        }
    }

    /// Signed distance of `z` to the polygon: positive inside, negative
    /// outside. For three or more vertices this is the smallest distance to
    /// an edge line measured toward the interior; for points and segments it
    /// is minus the Euclidean distance.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        match self.vertices.len() {
            0 => f64::NEG_INFINITY,
            1 => -(z - self.vertices[0]).norm(),
            2 => -segment_distance(z, self.vertices[0], self.vertices[1]),
            _ => self
                .edges()
                .into_iter()
                .map(|(a, b)| cross(a, b, z) / (b - a).norm())
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Cyclic rotation starting at the lexicographically smallest vertex.
    pub fn canonical(&self) -> Vec<Complex64> {
        let start = (0..self.vertices.len())
            .min_by(|&i, &j| lex(self.vertices[i], self.vertices[j]))
            .unwrap_or(0);
        let mut v = self.vertices.clone();
        v.rotate_left(start);
        v
    }
}

fn lex(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn signed_area(v: &[Complex64]) -> f64 {
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    (0..n)
        .map(|k| {
            let (a, b) = (v[k], v[(k + 1) % n]);
            a.re * b.im - a.im * b.re
        })
        .sum::<f64>()
        * 0.5
}

/// Distance from `z` to the closed segment `[a, b]`.
pub fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// A hull together with, for each vertex, the index of an input point it
/// came from.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedHull {
    pub polygon: ConvexPolygon,
    pub indices: Vec<usize>,
}

/// Counterclockwise convex hull by the monotone chain. Points within
/// `tol * scale` of a hull edge are not vertices.
pub fn convex_hull(points: &RootSet, tol: f64) -> Result<ConvexPolygon> {
    Ok(convex_hull_indexed(points, tol)?.polygon)
}

pub fn convex_hull_indexed(points: &RootSet, tol: f64) -> Result<IndexedHull> {
    if points.is_empty() {
        return Err(Error::Empty("point set"));
    }
    if !points.is_finite() {
        return Err(Error::NonFinite("points"));
    }
    let scale = point_scale(&points.points);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| lex(points.points[i], points.points[j]).then(i.cmp(&j)));
    let mut unique: Vec<usize> = Vec::new();
    for &i in &order {
        let p = points.points[i];
        if !unique.iter().any(|&j| (points.points[j] - p).norm() <= DEDUP * scale) {
            unique.push(i);
        }
    }
    if unique.len() == 1 {
        return Ok(IndexedHull {
            polygon: ConvexPolygon {
                vertices: vec![points.points[unique[0]]],
            },
            indices: unique,
        });
    }
    let at = |i: usize| points.points[i];
    let slack = tol * scale;
    let keeps_turn = |o: usize, a: usize, b: usize| {
        let base = (at(b) - at(o)).norm();
        cross(at(o), at(a), at(b)) > slack * base
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &unique {
        while lower.len() >= 2 && !keeps_turn(lower[lower.len() - 2], lower[lower.len() - 1], i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in unique.iter().rev() {
        while upper.len() >= 2 && !keeps_turn(upper[upper.len() - 2], upper[upper.len() - 1], i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let mut indices = lower;
    indices.extend(upper);
    if indices.len() == 2 && indices[0] == indices[1] {
        indices.pop();
    }
    let vertices = indices.iter().map(|&i| at(i)).collect();
    Ok(IndexedHull {
        polygon: ConvexPolygon { vertices },
        indices,
    })
}

/// Midpoints of the polygon's sides, in edge order.
pub fn edge_midpoints(p: &ConvexPolygon) -> Result<Vec<Complex64>> {
    if p.len() < 2 {
        return Err(Error::InvalidArgument("a single-vertex polygon has no sides".into()));
    }
    Ok(p.edges().into_iter().map(|(a, b)| (a + b) * 0.5).collect())
}

/// Closed-polygon membership within `tol * scale`.
pub fn point_in_hull(p: &ConvexPolygon, z: Complex64, tol: f64) -> bool {
    p.signed_distance(z) >= -tol * p.scale()
}

/// The Steiner inellipse of a triangle, built from the incircle of the
/// reference triangle `(1, w, w^2)`, `w = e^{2 pi i / 3}`, under the affine
/// map carrying it onto `(v1, v2, v3)`.
///
/// The map is `T(z) = p z + q conj(z) + g` with `g` the centroid. Its real
/// linear part has singular values `|p| + |q|` and `||p| - |q||`, with the
/// larger one stretching toward direction `(arg p + arg q)/2`. The incircle
/// has radius 1/2, which halves those into the semi-axes.
pub fn steiner_inellipse(v1: Complex64, v2: Complex64, v3: Complex64) -> Result<EllipseParams> {
    let scale = point_scale(&[v1, v2, v3]);
    let area2 = ((v2 - v1) * (v3 - v1).conj()).im;
    if area2.abs() <= 1e-10 * scale * scale {
        return Err(Error::Collinear);
    }
    let g = (v1 + v2 + v3) / 3.0;
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let (a1, a2) = (v1 - g, v2 - g);
    let p = (a2 - w.conj() * a1) / (w - w.conj());
    let q = a1 - p;
    let (np, nq) = (p.norm(), q.norm());
    let major = 0.5 * (np + nq);
    let minor = 0.5 * (np - nq).abs();
    // Focal offset c e^{i psi} with c^2 = major^2 - minor^2 = |p||q| and
    // psi = (arg p + arg q) / 2 is a square root of p q.
    let offset = (p * q).sqrt();
    let mut e = EllipseParams::from_foci(g - offset, g + offset, minor);
    e.center = g;
    e.major_semi_axis = major;
    Ok(e)
}

/// Whether the side `[a, b]` touches the ellipse at its midpoint: the
/// midpoint satisfies the ellipse equation within `tol`, and the side is
/// parallel to the tangent there within an angle of `tol` radians.
pub fn ellipse_tangency_check(e: &EllipseParams, a: Complex64, b: Complex64, tol: f64) -> Result<bool> {
    if e.minor_semi_axis <= tol * e.major_semi_axis || e.major_semi_axis == 0.0 {
        return Err(Error::DegenerateEllipse(format!(
            "minor semi-axis {:e} vs major {:e}",
            e.minor_semi_axis, e.major_semi_axis
        )));
    }
    let (residual, angle) = tangency_defects(e, a, b);
    Ok(residual <= tol && angle <= tol)
}

/// `(|ellipse equation - 1| at the midpoint, sine of the angle between the
/// side and the tangent at the midpoint)`.
pub fn tangency_defects(e: &EllipseParams, a: Complex64, b: Complex64) -> (f64, f64) {
    let unrotate = Complex64::from_polar(1.0, -e.rotation);
    let m = unrotate * ((a + b) * 0.5 - e.center);
    let d = unrotate * (b - a);
    let (ma, mb) = (e.major_semi_axis, e.minor_semi_axis);
    let residual = ((m.re / ma).powi(2) + (m.im / mb).powi(2) - 1.0).abs();
    let normal = Complex64::new(m.re / (ma * ma), m.im / (mb * mb));
    let dot = normal.re * d.re + normal.im * d.im;
    let angle = if normal.norm() == 0.0 || d.norm() == 0.0 {
        1.0
    } else {
        (dot / (normal.norm() * d.norm())).abs()
    };
    (residual, angle)
}
