use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("did not converge: {0}")]
    Convergence(String),

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("positivity violated: {0}")]
    Positivity(String),

    #[error("degenerate spectrum: Omega^2 + 4C^2 = {0:.3e} is below the closed-form threshold")]
    DegenerateSpectrum(f64),

    #[error("generator is singular")]
    SingularGenerator,

    #[error("constrained system is rank deficient (rank {rank} of {needed})")]
    RankDeficient { rank: usize, needed: usize },

    #[error("stationary residual {0:.3e} exceeds tolerance")]
    Residual(f64),

    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("maximum step count {0} exceeded")]
    MaxStepsExceeded(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
