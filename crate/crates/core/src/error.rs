use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: estimate {estimate} (error estimate {abs_err:e}, {evaluations} evaluations)")]
    Convergence {
        estimate: f64,
        abs_err: f64,
        evaluations: usize,
    },

    #[error("integral diverges (partial sum {partial} after {shells} dyadic shells)")]
    Divergence { partial: f64, shells: usize },

    #[error("measure {measure} does not satisfy the {condition} integrability condition")]
    Admissibility { measure: String, condition: String },

    #[error("measure {0} is not admissible: neither integrability condition holds")]
    Inadmissible(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of a numerical procedure (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence { .. } | Error::Divergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
