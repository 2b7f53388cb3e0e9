use thiserror::Error;

/// Diagnostics attached to a convergence failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceFailure {
    pub reason: String,
    /// Best value reached before giving up, in the units of the requested quantity.
    pub partial_value: f64,
    pub est_error: f64,
    pub terms_used: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("convergence failure: {} (partial value {:e}, est. error {:e}, {} terms)", .0.reason, .0.partial_value, .0.est_error, .0.terms_used)]
    Convergence(Box<ConvergenceFailure>),
}

impl CasimirError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Self::Domain(msg.into())
    }
}

pub type Result<T, E = CasimirError> = std::result::Result<T, E>;
