use thiserror::Error;

/// Errors raised by the spectral solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested energy sits on (or within tolerance of) a pole of the
    /// function being evaluated.
    #[error("energy {energy} is within {distance:e} of a pole of {what}")]
    Pole {
        what: &'static str,
        energy: f64,
        distance: f64,
    },

    #[error("root finder did not converge in [{lo}, {hi}] after {iterations} iterations")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("no sign change in [{lo}, {hi}] (f = {f_lo:e}, {f_hi:e})")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("only {found} of {requested} levels could be resolved")]
    BranchExhausted { requested: usize, found: usize },

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),
}

pub type Result<T> = std::result::Result<T, SpectrumError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(SpectrumError::InvalidInput(msg.into()))
}
