use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    Parameter { field: &'static str, reason: String },

    #[error("incompatible inputs: {0}")]
    Incompatible(String),

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A constructed object failed its own certificate.
    #[error("numerical quality check `{what}` failed: measured {measured:.3e}, limit {limit:.3e}")]
    NumericalQuality {
        what: String,
        measured: f64,
        limit: f64,
    },

    #[error("solver did not converge after {iterations} iterations")]
    Solver {
        iterations: usize,
        trace: Vec<Complex64>,
    },

    #[error("iteration converged to {0}, which is not a lower half-plane resonance")]
    NotAResonance(Complex64),

    #[error("resonance report is stale: residual {residual:.3e} exceeds {limit:.3e}")]
    StaleReport { residual: f64, limit: f64 },

    #[error("state is not admissible for {functional}: {reason}")]
    Admissibility { functional: String, reason: String },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn admissibility(functional: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Admissibility {
            functional: functional.into(),
            reason: reason.into(),
        }
    }
}
