use thiserror::Error;

/// Errors raised by the correlation toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    /// Matrix dimension outside {2, 3, 4, 8}.
    #[error("unsupported matrix dimension {0}")]
    UnsupportedDimension(usize),
    /// Operand shapes do not fit together.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Required dimension.
        expected: usize,
        /// Dimension received.
        found: usize,
    },
    /// A matrix entry is NaN or infinite.
    #[error("matrix has a non-finite entry")]
    NonFinite,
    /// `max |M - M^dagger|` exceeds the tolerance.
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    /// Density trace differs from one.
    #[error("density trace is {0}, expected 1")]
    InvalidTrace(f64),
    /// Eigenvalue below the negative clamp threshold.
    #[error("negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),
    /// Jacobi sweeps did not reach the residual target.
    #[error("eigensolver did not converge")]
    NoConvergence,
    /// A scalar argument is outside its domain.
    #[error("{name} = {value} is out of range")]
    OutOfRange {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
    },
    /// `1 + p1 p2 p3 cos(m pi)` vanishes; the state cannot be normalized.
    #[error("singular normalization (1 + p1 p2 p3 cos m pi = {0:e})")]
    SingularNormalization(f64),
    /// Mode indices repeated or outside 1..=3.
    #[error("invalid bipartition")]
    InvalidBipartition,
    /// Sweep range or step count is invalid.
    #[error("invalid sweep range [{min}, {max}] with {steps} steps")]
    InvalidRange {
        /// Lower end.
        min: f64,
        /// Upper end.
        max: f64,
        /// Number of grid points.
        steps: usize,
    },
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
