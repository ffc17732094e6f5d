use thiserror::Error;

/// Failures raised by the library.
///
/// Values are widened to `f64` so the error type does not depend on the
/// scalar the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |m - m^dagger| = {max_asymmetry:e} at ({row}, {col})")]
    NotHermitian {
        max_asymmetry: f64,
        row: usize,
        col: usize,
    },

    #[error(
        "Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal {off_diagonal:e})"
    )]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("spectrum is not stochastic: {reason}")]
    NotStochastic { reason: String },

    #[error("invalid density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("unphysical Bell-diagonal state ({x}, {y}, {z}): weight of {label} is {weight}")]
    Unphysical {
        x: f64,
        y: f64,
        z: f64,
        label: &'static str,
        weight: f64,
    },

    #[error("Werner parameter {0} outside [0, 1]")]
    WernerRange(f64),

    #[error("entropic index must be finite, got {0}")]
    NonFiniteIndex(f64),

    #[error("entropic index {0} not allowed here (requires q > 1)")]
    IndexOutOfDomain(f64),

    #[error("conditional entropy denominator {0:e} vanishes")]
    VanishingDenominator(f64),

    #[error("ray never crosses the q-threshold surface (q = {q}, residual at t_max = {t_max} is {residual_at_max:e})")]
    NoCrossing {
        q: f64,
        t_max: f64,
        residual_at_max: f64,
    },

    #[error("invalid ray direction: {0}")]
    InvalidDirection(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("empty q grid")]
    EmptyQGrid,
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::NoCrossing { .. } | Error::VanishingDenominator(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
