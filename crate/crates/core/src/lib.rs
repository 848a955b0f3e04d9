//! Critical points of a polynomial as eigenvalues of a compression.
//!
//! For zeros `lambda_1, ..., lambda_n` put `D = diag(lambda)` and
//! `A = U D U*` with `U` the normalised DFT matrix. Every principal
//! submatrix `A_(i)` (row and column `i` deleted) has the critical points of
//! `p(t) = prod (t - lambda_j)` as its eigenvalues. The crate builds this
//! construction ([`matricial`]) on a small dense eigensolver ([`numlin`]) and
//! a rootfinding oracle ([`poly`]). It then checks the classical location
//! theorems for critical points ([`theorems`]): Gauss-Lucas, interlacing,
//! midpoint tangency of `F(A_(1))`, and the Steiner inellipse. The checks use
//! field-of-values ([`fov`]) and planar geometry ([`geom`]) tools.
//!
//! ```
//! use critloc::poly::RootSet;
//! use critloc::matricial::critical_points_matricial;
//!
//! let zeros = RootSet::from_real(&[0.0, 1.0, 2.0]);
//! let mu = critical_points_matricial(&zeros, 0).unwrap().sorted();
//! assert!((mu.points[0].re - (1.0 - 3f64.sqrt() / 3.0)).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod figure;
pub mod fov;
pub mod geom;
pub mod matricial;
pub mod numlin;
pub mod poly;
pub mod rng;
pub mod theorems;
pub mod tolerance;

pub use error::{Error, Result};
pub use num_complex::Complex64;
