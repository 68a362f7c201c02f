use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{context}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },

    #[error("{context}: matrix is {rows}x{cols}, expected square")]
    NotSquare { context: &'static str, rows: usize, cols: usize },

    #[error("{context}: matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { context: &'static str, defect: f64 },

    #[error("invalid cutoff dimension {0} (must be at least 2)")]
    InvalidCutoff(usize),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("eigensolver failed to converge after {0} iterations")]
    EigenNoConvergence(usize),

    #[error("singular matrix in {0}")]
    Singular(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("squeezing relation has no solution: drive amplitude {omega_p:e} >= mechanical detuning {delta_m:e}")]
    NoSqueezingSolution { omega_p: f64, delta_m: f64 },

    #[error("invalid initial state: {0}")]
    InvalidState(String),

    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("trace drift {drift:e} at t = {t} exceeds limit")]
    TraceDrift { t: f64, drift: f64 },

    #[error("integration exceeded {0} steps")]
    TooManySteps(usize),

    #[error("unnormalized amplitudes (norm^2 = {0})")]
    Unnormalized(f64),

    #[error("residual contangle {0:e} is below the clamp tolerance")]
    NegativeResidual(f64),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
