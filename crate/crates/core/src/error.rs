use thiserror::Error;

/// Errors raised by the library. Nothing is clamped silently: every
/// violated physical or numerical precondition surfaces here.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("covolume exclusion violated: beta*rho = {0} >= 1")]
    Covolume(f64),

    #[error("loss of hyperbolicity: a^2 = {0} <= 0")]
    NotHyperbolic(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate background: {0}")]
    Degenerate(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("integrator failure: {0}")]
    Integrator(String),

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("CFL violation: dt = {dt} exceeds stable limit {limit}")]
    Cfl { dt: f64, limit: f64 },

    #[error("non-finite state: {0}")]
    NonFinite(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Inadmissible(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
