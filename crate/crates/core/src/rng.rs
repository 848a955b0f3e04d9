//! Seeded instance generation.
//!
//! The generator is xoshiro256** whose state is filled from the 64-bit seed
//! by SplitMix64. Uniform reals take the top 53 bits of each output, so
//! every run is reproducible bit for bit from the seed alone.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlin::ComplexMatrix;
use crate::poly::RootSet;
use crate::theorems::check_siebeck_hypotheses;

/// Identifier recorded in output headers.
pub const RNG_ID: &str = "xoshiro256**/splitmix64";

/// Resampling budget for constrained generation.
pub const MAX_ATTEMPTS: usize = 1000;

pub struct SampleRng {
    inner: Xoshiro256StarStar,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn interval(&mut self) -> f64 {
        2.0 * self.uniform() - 1.0
    }

    /// Uniform on the closed unit disk.
    pub fn disk(&mut self) -> Complex64 {
        let r = self.uniform().sqrt();
        let phi = TAU * self.uniform();
        Complex64::from_polar(r, phi)
    }

    pub fn disk_points(&mut self, n: usize) -> RootSet {
        (0..n).map(|_| self.disk()).collect()
    }

    pub fn real_points(&mut self, n: usize) -> RootSet {
        (0..n).map(|_| Complex64::new(self.interval(), 0.0)).collect()
    }

    /// Matrix with independent entries uniform on the unit disk.
    pub fn matrix(&mut self, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| self.disk())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    None,
    Real,
    SiebeckOk,
}

/// One random zero set of size `n`. `SiebeckOk` resamples until the
/// hypotheses of the tangency theorem hold at `tol`.
pub fn random_zeros(rng: &mut SampleRng, n: usize, constraint: Constraint, tol: f64) -> Result<RootSet> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    match constraint {
        Constraint::None => Ok(rng.disk_points(n)),
        Constraint::Real => Ok(rng.real_points(n)),
        Constraint::SiebeckOk => {
            for _ in 0..MAX_ATTEMPTS {
                let z = rng.disk_points(n);
                match check_siebeck_hypotheses(&z, tol) {
                    Ok(h) if h.hold() => return Ok(z),
                    Ok(_) | Err(Error::Collinear) | Err(Error::InvalidArgument(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Err(Error::GenerationCap { attempts: MAX_ATTEMPTS })
        }
    }
}
