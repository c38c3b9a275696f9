use thiserror::Error;

/// Errors raised by the algebraic and numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid matrix shape: {0}")]
    Shape(String),

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is singular within tolerance (smallest |eigenvalue| {min_abs_eigenvalue:e})")]
    Singular { min_abs_eigenvalue: f64 },

    #[error("matrix is not a projection (idempotency residual {residual:e})")]
    NotProjection { residual: f64 },

    #[error("matrix is not an effect (spectrum [{min:e}, {max:e}] leaves [0, 1])")]
    NotEffect { min: f64, max: f64 },

    #[error("invalid spectral resolution: {0}")]
    InvalidResolution(String),

    #[error("resolution of the reconstructed element drifted from the constructed one by {discrepancy:e}")]
    ResolutionDrift { discrepancy: f64 },

    #[error("empty family")]
    EmptyFamily,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
