use thiserror::Error;

/// Errors raised by the numerical and geometric routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: ||A - A*||_F = {defect:e} exceeds {allowed:e}")]
    NotHermitian { defect: f64, allowed: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("input is empty: {0}")]
    Empty(&'static str),
    #[error("argument out of range: {0}")]
    InvalidArgument(String),
    #[error("leading coefficient is zero or below 1e-300")]
    ZeroLeadingCoefficient,
    #[error("vector is not a unit vector: ||z|| = {norm}")]
    NotUnitVector { norm: f64 },
    #[error("points are collinear")]
    Collinear,
    #[error("degenerate ellipse: {0}")]
    DegenerateEllipse(String),
    #[error("iteration did not converge: {0}")]
    NonConvergence(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("no acceptable instance after {attempts} attempts")]
    GenerationCap { attempts: usize },
}

impl Error {
    /// Failures that stem from floating-point behaviour rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence(_) | Error::Inconsistent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
