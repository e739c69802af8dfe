use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A function was evaluated at one of its poles.
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    /// An argument lies outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or integral diverges for the given arguments.
    #[error("divergent: {0}")]
    Divergent(String),

    /// The requested representation cannot be used for these arguments.
    #[error("method unavailable: {0}")]
    Method(String),

    /// A quadrature rule could not be constructed.
    #[error("rule construction failed: {0}")]
    Construction(String),

    /// A sample of the integrand was NaN or infinite.
    #[error("non-finite integrand value {value} at node {node}")]
    NonFinite { node: f64, value: f64 },

    /// The result overflows the double-precision range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The target accuracy was not reached; the best estimate is attached.
    #[error("accuracy not reached in {what}: estimate {estimate} with error {error}")]
    Accuracy { what: String, estimate: f64, error: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(what: impl Into<String>, estimate: f64, error: f64) -> Self {
        Error::Accuracy {
            what: what.into(),
            estimate,
            error,
        }
    }

    /// True for errors caused by the caller's arguments rather than by numerics.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. } | Error::Domain(_) | Error::Divergent(_) | Error::Method(_) | Error::Construction(_)
        )
    }

    /// True for errors where the computation ran but failed to reach its target.
    pub fn is_accuracy(&self) -> bool {
        !self.is_domain()
    }

    /// Best available estimate carried by an accuracy error.
    pub fn best_estimate(&self) -> Option<f64> {
        match self {
            Error::Accuracy { estimate, .. } => Some(*estimate),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
