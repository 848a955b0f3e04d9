//! Executable checkers. Each returns a [`CheckReport`] with a verdict and
//! the numbers behind it.
//!
//! Tolerances are relative: a checker on zeros compares against
//! `tol * scale`, where `scale` is the diameter of the zeros (1 if they all
//! coincide), so verdicts do not change under `z -> alpha z + beta`. The
//! elliptical-range checker works on a matrix and uses `tol * (1 + ||A||_F)`.
//! The critical-point oracle is the companion rootfinder applied to `p'`,
//! except in [`check_main_theorem`] whose subject is the matricial route.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fov::{
    boundary_polyline, elliptical_range, outward_normal_angle, point_set_support, support_margin, support_value,
    BoundaryPolyline,
};
use crate::geom::{convex_hull_indexed, cross, steiner_inellipse, tangency_defects, IndexedHull};
use crate::matricial::{build_construction, critical_points_from};
use crate::numlin::{principal_submatrix, ComplexMatrix};
use crate::poly::{multiset_match, Polynomial, RootSet};
use crate::tolerance::{CLUSTER_SMEAR, DEFAULT_SAMPLES, EDGE_CONTACT, EPS, MIDPOINT_EXCLUSION};

pub const MAIN: &str = "main";
pub const GAUSS_LUCAS: &str = "gauss-lucas";
pub const INTERLACING: &str = "interlacing";
pub const SIEBECK: &str = "siebeck";
pub const BGM: &str = "bgm";
pub const ELLIPTICAL_RANGE: &str = "elliptical-range";
pub const EDGE_PREIMAGE: &str = "edge-preimage";

/// Probes per side of the excluded midpoint zone in the uniqueness test.
const UNIQUENESS_PROBES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    PreconditionsUnmet,
}

/// Outcome of one check.
///
/// `max_violation` is the largest defect among the checked inequalities and
/// equalities, in the units of `tolerances_used["governing"]`; a pass
/// implies `max_violation <= governing`. Strict exterior-margin conditions
/// are reported in `details` next to the margin they had to exceed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: String,
    pub verdict: Verdict,
    pub max_violation: f64,
    pub details: Vec<(String, f64)>,
    pub tolerances_used: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unmet: Option<String>,
}

impl CheckReport {
    fn decided(
        theorem: &str,
        ok: bool,
        max_violation: f64,
        details: Vec<(String, f64)>,
        tolerances_used: BTreeMap<String, f64>,
    ) -> Self {
        Self {
            theorem: theorem.to_string(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            max_violation: finite(max_violation),
            details: details.into_iter().map(|(k, v)| (k, finite(v))).collect(),
            tolerances_used,
            unmet: None,
        }
    }

    pub fn preconditions_unmet(
        theorem: &str,
        reason: impl Into<String>,
        tolerances_used: BTreeMap<String, f64>,
    ) -> Self {
        Self {
            theorem: theorem.to_string(),
            verdict: Verdict::PreconditionsUnmet,
            max_violation: 0.0,
            details: Vec::new(),
            tolerances_used,
            unmet: Some(reason.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Value of a detail entry.
    pub fn detail(&self, label: &str) -> Option<f64> {
        self.details.iter().find(|(k, _)| k == label).map(|&(_, v)| v)
    }

    pub fn governing(&self) -> f64 {
        self.tolerances_used.get("governing").copied().unwrap_or(0.0)
    }
}

/// Reports stay JSON-representable.
fn finite(x: f64) -> f64 {
    if x.is_nan() {
        f64::MAX
    } else {
        x.clamp(-f64::MAX, f64::MAX)
    }
}

fn tolerances(tol: f64, governing: f64) -> BTreeMap<String, f64> {
    BTreeMap::from([("tol".to_string(), tol), ("governing".to_string(), governing)])
}

fn detail(label: impl Into<String>, value: f64) -> (String, f64) {
    (label.into(), value)
}

/// Diameter of the zeros, or 1 if they coincide.
pub fn zero_scale(zeros: &RootSet) -> f64 {
    let d = zeros.diameter();
    if d > 0.0 {
        d
    } else {
        1.0
    }
}

/// Roots of `p'` from the companion-matrix rootfinder. The polynomial is
/// expanded about the centroid of the zeros and the result shifted back.
pub fn oracle_critical_points(zeros: &RootSet) -> Result<RootSet> {
    if zeros.is_empty() {
        return Err(Error::Empty("root set"));
    }
    let one = Complex64::new(1.0, 0.0);
    let g = zeros.iter().sum::<Complex64>() / zeros.len() as f64;
    let centred = Polynomial::from_roots(&zeros.affine(one, -g))?.derivative()?.roots()?;
    Ok(centred.affine(one, g))
}

fn require_zeros(zeros: &RootSet, min: usize) -> Result<()> {
    if zeros.len() < min {
        return Err(Error::InvalidArgument(format!(
            "need at least {min} zeros, got {}",
            zeros.len()
        )));
    }
    if !zeros.is_finite() {
        return Err(Error::NonFinite("zeros"));
    }
    Ok(())
}

/// Compares a computed spectrum with oracle critical points. Oracle roots of
/// multiplicity `k` (exact repeats) are eigenvalues of a defective `A_(i)`,
/// whose computed members scatter like `eps^(1/k)` while their mean stays
/// accurate. Each such group must have its mean within tolerance and its
/// members within tolerance plus the expected spread; simple roots are
/// compared directly. Returns `(largest matched distance, violation)`.
fn spectrum_defect(spectrum: &RootSet, oracle: &RootSet, norm: f64, scale: f64) -> (f64, f64) {
    let m = multiset_match(oracle, spectrum, f64::INFINITY);
    if !m.max_distance.is_finite() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let mut seen = vec![false; oracle.len()];
    let mut violation: f64 = 0.0;
    for a in 0..oracle.len() {
        if seen[a] {
            continue;
        }
        let value = oracle.points[a];
        let group: Vec<usize> = (a..oracle.len()).filter(|&b| oracle.points[b] == value).collect();
        let k = group.len();
        let members: Vec<Complex64> = group.iter().map(|&b| spectrum.points[m.assignment[b]]).collect();
        group.iter().for_each(|&b| seen[b] = true);
        let spread = members.iter().map(|&z| (z - value).norm()).fold(0.0, f64::max);
        if k == 1 {
            violation = violation.max(spread);
            continue;
        }
        let r = 1.0 / k as f64;
        let allowed = CLUSTER_SMEAR * (EPS * norm).powf(r) * scale.powf(1.0 - r);
        let mean = members.iter().sum::<Complex64>() / k as f64;
        violation = violation.max((mean - value).norm()).max(spread - allowed);
    }
    (m.max_distance, violation)
}

/// The spectrum of every `A_(i)` matches the critical points.
pub fn check_main_theorem(zeros: &RootSet, tol: f64) -> Result<CheckReport> {
    require_zeros(zeros, 2)?;
    let scale = zero_scale(zeros);
    let governing = tol * scale;
    let oracle = oracle_critical_points(zeros)?;
    let c = build_construction(zeros)?;
    let norm = c.a.frobenius_norm();
    let mut worst = (0usize, 0.0f64);
    let mut largest: f64 = 0.0;
    for i in 0..zeros.len() {
        let (d, v) = spectrum_defect(&critical_points_from(&c, i)?, &oracle, norm, scale);
        largest = largest.max(d);
        if v > worst.1 || !v.is_finite() {
            worst = (i, v);
        }
    }
    let details = vec![
        detail("n", zeros.len() as f64),
        detail("scale", scale),
        detail("max_distance", largest),
        detail("worst_index", worst.0 as f64),
        detail("unitarity_defect", c.unitarity_defect()),
    ];
    Ok(CheckReport::decided(
        MAIN,
        worst.1 <= governing,
        worst.1,
        details,
        tolerances(tol, governing),
    ))
}

/// Critical points lie in the convex hull of the zeros.
pub fn check_gauss_lucas(zeros: &RootSet, tol: f64) -> Result<CheckReport> {
    require_zeros(zeros, 2)?;
    let scale = zero_scale(zeros);
    let governing = tol * scale;
    let hull = convex_hull_indexed(zeros, 0.0)?.polygon;
    let crit = oracle_critical_points(zeros)?;
    let worst = crit
        .iter()
        .map(|&mu| hull.signed_distance(mu))
        .fold(f64::INFINITY, f64::min);
    let violation = (-worst).max(0.0);
    let details = vec![
        detail("n", zeros.len() as f64),
        detail("scale", scale),
        detail("hull_vertices", hull.len() as f64),
        detail("worst_signed_distance", worst),
    ];
    Ok(CheckReport::decided(
        GAUSS_LUCAS,
        violation <= governing,
        violation,
        details,
        tolerances(tol, governing),
    ))
}

/// For real zeros, ordered critical points separate consecutive ordered
/// zeros. Non-real input leaves the hypothesis unmet.
pub fn check_interlacing(zeros: &RootSet, tol: f64) -> Result<CheckReport> {
    require_zeros(zeros, 2)?;
    let scale = zero_scale(zeros);
    let governing = tol * scale;
    let max_im = zeros.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_im > 1e-12 * scale {
        return Ok(CheckReport::preconditions_unmet(
            INTERLACING,
            format!("zeros are not real: max |Im| = {max_im:e}"),
            tolerances(tol, governing),
        ));
    }
    let mut lambda: Vec<f64> = zeros.iter().map(|z| z.re).collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    let crit = oracle_critical_points(&RootSet::from_real(&lambda))?;
    let crit_im = crit.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let mut mu: Vec<f64> = crit.iter().map(|z| z.re).collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    let ordering = (0..mu.len())
        .map(|k| (mu[k] - lambda[k]).max(lambda[k + 1] - mu[k]))
        .fold(f64::NEG_INFINITY, f64::max);
    let violation = ordering.max(crit_im).max(0.0);
    let details = vec![
        detail("n", zeros.len() as f64),
        detail("scale", scale),
        detail("ordering_defect", ordering),
        detail("critical_max_imag", crit_im),
    ];
    Ok(CheckReport::decided(
        INTERLACING,
        violation <= governing,
        violation,
        details,
        tolerances(tol, governing),
    ))
}

/// Hypotheses of the midpoint tangency theorem, evaluated per hull edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiebeckHypotheses {
    /// Every hull vertex is a zero of multiplicity one (clustering radius
    /// `tol * scale`).
    pub simple_vertex_eigenvalues: bool,
    /// For every hull edge, the zeros other than its two endpoints lie
    /// strictly inside, by more than `tol * scale`.
    pub strict_half_plane: bool,
    /// Hull edges as pairs of zero-based input indices, counterclockwise.
    pub edges: Vec<(usize, usize)>,
    /// Smallest distance of a non-endpoint zero to an edge line.
    pub min_half_plane_margin: f64,
}

impl SiebeckHypotheses {
    pub fn hold(&self) -> bool {
        self.simple_vertex_eigenvalues && self.strict_half_plane
    }
}

fn siebeck_hypotheses_with(zeros: &RootSet, hull: &IndexedHull, tol: f64) -> SiebeckHypotheses {
    let scale = zero_scale(zeros);
    let radius = tol * scale;
    let simple = hull.indices.iter().all(|&v| {
        let z = zeros.points[v];
        zeros.iter().filter(|&&w| (w - z).norm() <= radius).count() == 1
    });
    let k = hull.indices.len();
    let edges: Vec<(usize, usize)> = (0..k).map(|e| (hull.indices[e], hull.indices[(e + 1) % k])).collect();
    let mut min_margin = f64::INFINITY;
    for &(i, j) in &edges {
        let (a, b) = (zeros.points[i], zeros.points[j]);
        let len = (b - a).norm();
        for (idx, &z) in zeros.iter().enumerate() {
            if idx != i && idx != j {
                min_margin = min_margin.min(cross(a, b, z) / len);
            }
        }
    }
    SiebeckHypotheses {
        simple_vertex_eigenvalues: simple,
        strict_half_plane: min_margin > radius,
        edges,
        min_half_plane_margin: min_margin,
    }
}

fn hull_of(zeros: &RootSet) -> Result<IndexedHull> {
    let hull = convex_hull_indexed(zeros, 0.0)?;
    if hull.indices.len() < 3 {
        return Err(Error::Collinear);
    }
    Ok(hull)
}

/// Evaluates both hypotheses. Fails when the hull has fewer than three
/// vertices.
pub fn check_siebeck_hypotheses(zeros: &RootSet, tol: f64) -> Result<SiebeckHypotheses> {
    require_zeros(zeros, 3)?;
    let hull = hull_of(zeros)?;
    Ok(siebeck_hypotheses_with(zeros, &hull, tol))
}

fn hypotheses_or_unmet(
    theorem: &str,
    zeros: &RootSet,
    tol: f64,
    governing: f64,
) -> Result<std::result::Result<(IndexedHull, SiebeckHypotheses), CheckReport>> {
    let unmet = |reason: String| {
        Ok(Err(CheckReport::preconditions_unmet(
            theorem,
            reason,
            tolerances(tol, governing),
        )))
    };
    if zeros.len() < 3 {
        return unmet(format!("need at least 3 zeros, got {}", zeros.len()));
    }
    require_zeros(zeros, 3)?;
    let hull = match hull_of(zeros) {
        Ok(h) => h,
        Err(Error::Collinear) => return unmet("hull has fewer than 3 vertices".into()),
        Err(e) => return Err(e),
    };
    let hyp = siebeck_hypotheses_with(zeros, &hull, tol);
    if !hyp.simple_vertex_eigenvalues {
        return unmet("a hull vertex is a repeated zero".into());
    }
    if !hyp.strict_half_plane {
        return unmet(format!(
            "a zero lies within {:e} of a hull edge line (margin {:e})",
            tol * zero_scale(zeros),
            hyp.min_half_plane_margin
        ));
    }
    Ok(Ok((hull, hyp)))
}

/// The compression used by the tangency checks: `A_(1)` of the DFT
/// construction.
pub fn siebeck_matrix(zeros: &RootSet) -> Result<ComplexMatrix> {
    let c = build_construction(zeros)?;
    principal_submatrix(&c.a, 0)
}

/// Distance from `z` to `F(B)` when positive; the grid value is a lower
/// bound, so refinement only runs near the threshold.
fn exterior_margin(b: &ComplexMatrix, poly: &BoundaryPolyline, z: Complex64, needed: f64) -> Result<f64> {
    let coarse = poly.sampled_margin(z);
    if coarse > needed {
        return Ok(coarse);
    }
    support_margin(b, poly, z)
}

/// `F(A_(1))` lies in the hull of the zeros, touches each side at its
/// midpoint, and at no other sampled point of the side.
pub fn check_poor_mans_siebeck(zeros: &RootSet, m: usize, tol: f64) -> Result<CheckReport> {
    let scale = zero_scale(zeros);
    let governing = tol * scale;
    let (hull, _) = match hypotheses_or_unmet(SIEBECK, zeros, tol, governing)? {
        Ok(x) => x,
        Err(report) => return Ok(report),
    };
    let b = siebeck_matrix(zeros)?;
    let poly = boundary_polyline(&b, m)?;
    let verts = &hull.polygon.vertices;
    let k = verts.len();

    let mut containment: f64 = poly
        .samples
        .iter()
        .map(|s| s.support_value - point_set_support(verts, s.theta))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut tangency: f64 = 0.0;
    let mut midpoint: f64 = f64::NEG_INFINITY;
    let mut min_exterior = f64::INFINITY;
    for e in 0..k {
        let (p, q) = (verts[e], verts[(e + 1) % k]);
        let theta = outward_normal_angle(p, q);
        let hb = support_value(&b, theta)?;
        let hp = point_set_support(verts, theta);
        containment = containment.max(hb - hp);
        tangency = tangency.max((hb - hp).abs());
        midpoint = midpoint.max(poly.sampled_margin((p + q) * 0.5));
        for j in 0..UNIQUENESS_PROBES {
            let s = (0.5 - MIDPOINT_EXCLUSION) * j as f64 / (UNIQUENESS_PROBES - 1) as f64;
            for t in [s, 1.0 - s] {
                let z = p + (q - p) * t;
                min_exterior = min_exterior.min(exterior_margin(&b, &poly, z, governing)?);
            }
        }
    }
    let violation = containment.max(tangency).max(midpoint).max(0.0);
    let ok = violation <= governing && min_exterior > governing;
    let details = vec![
        detail("n", zeros.len() as f64),
        detail("scale", scale),
        detail("hull_vertices", k as f64),
        detail("containment_excess", containment),
        detail("tangency_defect", tangency),
        detail("midpoint_margin", midpoint),
        detail("min_exterior_margin", min_exterior),
        detail("exterior_margin_required", governing),
    ];
    let mut tols = tolerances(tol, governing);
    tols.insert("midpoint_exclusion".into(), MIDPOINT_EXCLUSION);
    tols.insert("samples".into(), m as f64);
    Ok(CheckReport::decided(SIEBECK, ok, violation, details, tols))
}

/// The Steiner inellipse of a triangle has the critical points as foci and
/// touches each side at its midpoint.
pub fn check_bgm(zeros: &RootSet, tol: f64) -> Result<CheckReport> {
    let scale = zero_scale(zeros);
    let governing = tol * scale;
    if zeros.len() != 3 {
        return Ok(CheckReport::preconditions_unmet(
            BGM,
            format!("need exactly 3 zeros, got {}", zeros.len()),
            tolerances(tol, governing),
        ));
    }
    require_zeros(zeros, 3)?;
    let v = &zeros.points;
    let e = match steiner_inellipse(v[0], v[1], v[2]) {
        Ok(e) => e,
        Err(Error::Collinear) => {
            return Ok(CheckReport::preconditions_unmet(
                BGM,
                "zeros are collinear",
                tolerances(tol, governing),
            ))
        }
        Err(err) => return Err(err),
    };
    let foci = RootSet::new(vec![e.focus1, e.focus2]);
    let focus_distance = multiset_match(&foci, &oracle_critical_points(zeros)?, governing).max_distance;
    let (mut residual, mut angle) = (0.0f64, 0.0f64);
    for k in 0..3 {
        let (r, s) = tangency_defects(&e, v[k], v[(k + 1) % 3]);
        residual = residual.max(r);
        angle = angle.max(s);
    }
    let violation = focus_distance.max(residual * scale).max(angle * scale);
    let details = vec![
        detail("scale", scale),
        detail("focus_distance", focus_distance),
        detail("tangency_residual", residual),
        detail("tangency_angle", angle),
        detail("major_semi_axis", e.major_semi_axis),
        detail("minor_semi_axis", e.minor_semi_axis),
    ];
    Ok(CheckReport::decided(
        BGM,
        violation <= governing,
        violation,
        details,
        tolerances(tol, governing),
    ))
}

/// The sampled field of values of a 2x2 matrix agrees with the closed-form
/// ellipse. Compares support functions at the sweep angles (the Hausdorff
/// distance of convex sets) and the distance of each sampled boundary point
/// to the ellipse curve.
pub fn check_elliptical_range(a: &ComplexMatrix, m: usize, tol: f64) -> Result<CheckReport> {
    let n = a.order()?;
    let governing = tol * (1.0 + a.frobenius_norm());
    if n != 2 {
        return Ok(CheckReport::preconditions_unmet(
            ELLIPTICAL_RANGE,
            format!("need a 2x2 matrix, got order {n}"),
            tolerances(tol, governing),
        ));
    }
    let e = elliptical_range(a)?;
    let poly = boundary_polyline(a, m)?;
    let support_gap = poly
        .samples
        .iter()
        .map(|s| (s.support_value - e.support(s.theta)).abs())
        .fold(0.0, f64::max);
    let curve_gap = poly
        .samples
        .iter()
        .map(|s| e.distance_to_boundary(s.boundary_point))
        .fold(0.0, f64::max);
    let violation = support_gap.max(curve_gap);
    let details = vec![
        detail("support_gap", support_gap),
        detail("curve_gap", curve_gap),
        detail("minor_semi_axis", e.minor_semi_axis),
        detail("major_semi_axis", e.major_semi_axis),
        detail("frobenius_norm", a.frobenius_norm()),
    ];
    let mut tols = tolerances(tol, governing);
    tols.insert("samples".into(), m as f64);
    Ok(CheckReport::decided(
        ELLIPTICAL_RANGE,
        violation <= governing,
        violation,
        details,
        tols,
    ))
}

/// Along a hull edge `(i, j)` (zero-based zero indices), the points of the
/// side that belong to `F(A_(1))` are exactly those near its midpoint.
/// The midpoint must lie within `tol * scale` of `F(A_(1))`. Of `samples`
/// equally spaced probes, those whose exterior margin is at rounding level
/// belong to the intersection and must lie within `tol` edge lengths of the
/// midpoint.
pub fn check_edge_preimage(zeros: &RootSet, edge: (usize, usize), samples: usize, tol: f64) -> Result<CheckReport> {
    let scale = zero_scale(zeros);
    let governing = tol * scale;
    let (_, hyp) = match hypotheses_or_unmet(EDGE_PREIMAGE, zeros, tol, governing)? {
        Ok(x) => x,
        Err(report) => return Ok(report),
    };
    let (i, j) = edge;
    if !hyp.edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i)) {
        return Ok(CheckReport::preconditions_unmet(
            EDGE_PREIMAGE,
            format!("({i}, {j}) is not a hull edge"),
            tolerances(tol, governing),
        ));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 edge samples, got {samples}"
        )));
    }
    let b = siebeck_matrix(zeros)?;
    let poly = boundary_polyline(&b, DEFAULT_SAMPLES)?;
    let (p, q) = (zeros.points[i], zeros.points[j]);
    let mid_margin = support_margin(&b, &poly, (p + q) * 0.5)?;
    // Off the tangency point a probe at distance d has margin of order d^2,
    // so survival uses rounding-level slack rather than `governing`.
    let contact = EDGE_CONTACT * scale;
    let mut survivors = 0usize;
    let mut farthest: f64 = 0.0;
    for k in 0..samples {
        let t = k as f64 / (samples - 1) as f64;
        let margin = exterior_margin(&b, &poly, p + (q - p) * t, contact)?;
        if margin <= contact {
            survivors += 1;
            farthest = farthest.max((t - 0.5).abs());
        }
    }
    let violation = mid_margin.max(0.0);
    let ok = violation <= governing && farthest <= tol;
    let details = vec![
        detail("scale", scale),
        detail("edge_length", (q - p).norm()),
        detail("midpoint_margin", mid_margin),
        detail("survivors", survivors as f64),
        detail("farthest_survivor", farthest),
    ];
    let mut tols = tolerances(tol, governing);
    tols.insert("samples".into(), samples as f64);
    tols.insert("contact".into(), contact);
    Ok(CheckReport::decided(EDGE_PREIMAGE, ok, violation, details, tols))
}
