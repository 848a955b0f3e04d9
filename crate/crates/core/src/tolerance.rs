//! Default tolerances, in one place.
//!
//! Linear-algebra thresholds are relative to the Frobenius norm of the
//! operand. Geometric thresholds are relative to the scale of the point set
//! (its maximum pairwise distance). The [`Tolerances`] record carries the
//! user-facing defaults that checkers and the command line echo back in their
//! reports.

use serde::{Deserialize, Serialize};

/// Unit roundoff for `f64`.
pub const EPS: f64 = f64::EPSILON;

/// Allowed relative skew `||A - A*||_F / ||A||_F` for Hermitian input.
pub const HERMITIAN_SKEW: f64 = 1e-10;

/// Allowed deviation of `||z||` from 1 for unit-vector arguments.
pub const UNIT_NORM: f64 = 1e-12;

/// Leading coefficients below this modulus are rejected.
pub const MIN_LEADING: f64 = 1e-300;

/// Sweeps per matrix order allowed in the Hessenberg QR iteration.
pub const QR_SWEEPS_PER_ORDER: usize = 100;

/// QL iterations allowed per eigenvalue of a symmetric tridiagonal matrix.
pub const QL_ITERATIONS: usize = 60;

/// Newton steps used to polish each companion-matrix root.
pub const NEWTON_STEPS: usize = 20;

/// Eigenvalue gap below which the top of `H(theta)` counts as degenerate.
pub const TOP_GAP: f64 = 1e-10;

/// Coincidence radius (relative to scale) for hull deduplication.
pub const DEDUP: f64 = 1e-10;

/// Relative half-width of the exclusion zone around an edge midpoint in the
/// tangency-uniqueness test.
pub const MIDPOINT_EXCLUSION: f64 = 0.05;

/// Exterior margin (relative to scale) at or below which an edge probe counts
/// as a point of `F(A_(1))`.
pub const EDGE_CONTACT: f64 = 1e-12;

/// Multiplier on `(eps ||A||)^(1/k) scale^(1-1/k)`, the spread allowed to the
/// computed eigenvalues of a `k`-fold defective eigenvalue.
pub const CLUSTER_SMEAR: f64 = 8.0;

/// Default number of angles in a support-function sweep.
pub const DEFAULT_SAMPLES: usize = 720;

/// User-facing default tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Maximum matched distance when comparing point multisets.
    pub matching: f64,
    /// Slack for geometric predicates (hull membership, tangency).
    pub geometry: f64,
    /// Residual and interlacing slack.
    pub linalg: f64,
    /// Support-function Hausdorff distance in the elliptical range check,
    /// relative to `1 + ||A||_F`.
    pub hausdorff: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            matching: 1e-6,
            geometry: 1e-7,
            linalg: 1e-8,
            hausdorff: 1e-6,
        }
    }
}
