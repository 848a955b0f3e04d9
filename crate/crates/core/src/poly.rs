//! Complex polynomials, root finding, and multiset comparison of point sets.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlin::{general_eigvals, ComplexMatrix};
use crate::tolerance::{EPS, MIN_LEADING, NEWTON_STEPS};

/// A polynomial with complex coefficients in ascending degree order.
/// The leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

/// A finite multiset of points in the plane. Multiplicity is carried by
/// repetition.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootSet {
    pub points: Vec<Complex64>,
}

impl RootSet {
    pub fn new(points: Vec<Complex64>) -> Self {
        Self { points }
    }

    pub fn from_real(xs: &[f64]) -> Self {
        Self::new(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.points.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.points.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Copy sorted lexicographically by `(re, im)`.
    pub fn sorted(&self) -> Self {
        let mut points = self.points.clone();
        points.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Self { points }
    }

    /// Image under `z -> alpha z + beta`.
    pub fn affine(&self, alpha: Complex64, beta: Complex64) -> Self {
        Self::new(self.points.iter().map(|&z| alpha * z + beta).collect())
    }

    /// Largest pairwise distance between points.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }
}

impl FromIterator<Complex64> for RootSet {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients. Trailing exact zeros
    /// are dropped.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("polynomial coefficients"));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|z| z.norm() == 0.0) {
            coeffs.pop();
        }
        match coeffs.last() {
            None => Err(Error::Empty("polynomial coefficients")),
            Some(lead) if lead.norm() < MIN_LEADING => Err(Error::ZeroLeadingCoefficient),
            Some(_) => Ok(Self { coeffs }),
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Monic polynomial with the given roots, by incremental expansion of
    /// `(t - r_1)(t - r_2)...`.
    pub fn from_roots(roots: &RootSet) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Empty("root set"));
        }
        if !roots.is_finite() {
            return Err(Error::NonFinite("roots"));
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots.iter() {
            coeffs.push(Complex64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                let lower = coeffs[k - 1];
                coeffs[k] = lower - r * coeffs[k];
            }
            coeffs[0] *= -r;
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("nonempty")
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        Self {
            coeffs: self.coeffs.iter().map(|&c| c / lead).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Result<Self> {
        if self.degree() == 0 {
            return Err(Error::InvalidArgument("derivative of a constant polynomial".into()));
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        })
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `p(z)` and `p'(z)` in one Horner pass.
    pub fn evaluate_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Running rounding-error bound for Horner evaluation at `z`.
    fn evaluation_error_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let abs_sum = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
        2.0 * (self.coeffs.len() as f64) * EPS * abs_sum
    }

    /// Companion matrix of the monic normalisation (upper Hessenberg, ones on
    /// the subdiagonal, negated coefficients in the last column).
    pub fn companion(&self) -> Result<ComplexMatrix> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::InvalidArgument("companion matrix of a constant".into()));
        }
        let monic = self.monic();
        Ok(ComplexMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                -monic.coeffs[i]
            } else if i == j + 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// All roots with multiplicity: companion-matrix eigenvalues, each
    /// polished by damped Newton steps, then clusters that verify as a
    /// multiple root are collapsed onto their refined centre.
    pub fn roots(&self) -> Result<RootSet> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::InvalidArgument("roots of a constant".into()));
        }
        let raw = general_eigvals(&self.companion()?)?;
        let polished: Vec<Complex64> = raw.into_iter().map(|z| self.newton_polish(z)).collect();
        let scale = 1.0 + polished.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut out = Vec::with_capacity(n);
        self.refine_clusters(polished, 0.05 * scale, scale, &mut out);
        Ok(RootSet::new(out))
    }

    fn newton_polish(&self, mut z: Complex64) -> Complex64 {
        let (mut pz, _) = self.evaluate_with_derivative(z);
        for _ in 0..NEWTON_STEPS {
            let (_, dp) = self.evaluate_with_derivative(z);
            if pz.norm() == 0.0 || dp.norm() == 0.0 {
                break;
            }
            let mut step = pz / dp;
            let mut improved = None;
            for _ in 0..8 {
                let trial = z - step;
                let pt = self.evaluate(trial);
                if pt.norm() < pz.norm() {
                    improved = Some((trial, pt));
                    break;
                }
                step *= 0.5;
            }
            match improved {
                Some((trial, pt)) => {
                    let moved = (trial - z).norm();
                    z = trial;
                    pz = pt;
                    if moved < 1e-14 * (1.0 + z.norm()) {
                        break;
                    }
                }
                None => break,
            }
        }
        z
    }

    /// Groups nearby roots by single linkage at `radius`. A group of size
    /// `k` is replaced by `k` copies of its centre when the centre, polished
    /// against the `(k-1)`-th derivative, annihilates `p, p', ..., p^(k-1)`
    /// to rounding level. Groups that fail are re-split at a tenth of the
    /// radius down to `1e-7 * scale`.
    fn refine_clusters(&self, points: Vec<Complex64>, radius: f64, scale: f64, out: &mut Vec<Complex64>) {
        for group in single_linkage(&points, radius) {
            if group.len() == 1 {
                out.push(group[0]);
                continue;
            }
            match self.verify_multiple_root(&group, radius) {
                Some(centre) => out.extend(std::iter::repeat_n(centre, group.len())),
                None if radius > 1e-7 * scale => self.refine_clusters(group, radius * 0.1, scale, out),
                None => out.extend(group),
            }
        }
    }

    fn verify_multiple_root(&self, group: &[Complex64], radius: f64) -> Option<Complex64> {
        let k = group.len();
        if k > self.degree() {
            return None;
        }
        let mean = group.iter().sum::<Complex64>() / k as f64;
        let mut derivs = Vec::with_capacity(k + 1);
        derivs.push(self.clone());
        for _ in 1..=k {
            derivs.push(derivs.last()?.derivative().ok()?);
        }
        let centre = derivs[k - 1].newton_polish(mean);
        if (centre - mean).norm() > radius {
            return None;
        }
        let values: Vec<f64> = derivs.iter().map(|d| d.evaluate(centre).norm()).collect();
        if values[k] == 0.0 {
            return None;
        }
        // Uncertainty of the centre as a simple root of p^(k-1), carried to
        // the lower derivatives through the Taylor expansion.
        let delta = (values[k - 1] + 32.0 * derivs[k - 1].evaluation_error_bound(centre)) / values[k]
            + 4.0 * EPS * centre.norm();
        let ok = (0..k).all(|j| {
            let mut slack = 0.0;
            let mut term = 1.0;
            for (m, v) in values.iter().enumerate().skip(j + 1) {
                term *= delta / (m - j) as f64;
                slack += v * term;
            }
            values[j] <= 32.0 * derivs[j].evaluation_error_bound(centre) + 2.0 * slack
        });
        ok.then_some(centre)
    }
}

fn single_linkage(points: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        let mut j = i;
        while label[j] != r {
            let next = label[j];
            label[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= radius {
                let (ri, rj) = (find(&mut label, i), find(&mut label, j));
                if ri != rj {
                    label[rj.max(ri)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, &z) in points.iter().enumerate() {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(z),
            None => groups.push((r, vec![z])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Outcome of a multiset comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub matched: bool,
    /// Largest distance within the optimal pairing; infinite when the
    /// cardinalities differ.
    pub max_distance: f64,
    /// `assignment[i]` is the index in `b` paired with `a[i]`.
    pub assignment: Vec<usize>,
}

/// Compares two multisets: a minimum-cost perfect matching under `|a_i - b_j|`
/// (Hungarian algorithm), accepted when its largest matched distance is
/// within `tol`.
pub fn multiset_match(a: &RootSet, b: &RootSet, tol: f64) -> MatchReport {
    if a.len() != b.len() {
        return MatchReport {
            matched: false,
            max_distance: f64::INFINITY,
            assignment: Vec::new(),
        };
    }
    if a.is_empty() {
        return MatchReport {
            matched: true,
            max_distance: 0.0,
            assignment: Vec::new(),
        };
    }
    let cost: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let assignment = hungarian(&cost);
    let max_distance = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j])
        .fold(0.0, f64::max);
    MatchReport {
        matched: max_distance <= tol,
        max_distance,
        assignment,
    }
}

/// Minimum-cost assignment for a square cost matrix (shortest augmenting
/// path with potentials, O(n^3)). Returns the column assigned to each row.
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based arrays with a sentinel column 0.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[r - 1][j - 1] - u[r] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = col0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    col1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if owner[j] > 0 {
            assignment[owner[j] - 1] = j - 1;
        }
    }
    assignment
}
