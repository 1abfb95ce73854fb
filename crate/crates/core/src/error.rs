use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraError {
    #[error("invalid recurrence `{family}` at n = {index}: {reason}")]
    InvalidRecurrence {
        family: String,
        index: usize,
        reason: &'static str,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("reality constraint violated: V+ = {v_plus} < |V-| - λ²/8 = {bound}")]
    RealityViolation { v_plus: f64, bound: f64 },
    #[error("inconsistent basis choice: {constraint}")]
    Inconsistent { constraint: String },
    #[error("non-finite matrix entry at index {0}")]
    NonFinite(usize),
    #[error("log-gamma pole at z = {0}")]
    Pole(f64),
    #[error("asymptotic fit failed: relative residual {residual:e} exceeds tolerance {tolerance:e}")]
    FitFailure { residual: f64, tolerance: f64 },
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("coefficient count {given} exceeds basis truncation {available}")]
    Mismatch { given: usize, available: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl TraError {
    /// True for errors caused by the caller's parameters rather than the numerics.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            TraError::InvalidRecurrence { .. }
                | TraError::Domain(_)
                | TraError::RealityViolation { .. }
                | TraError::Inconsistent { .. }
                | TraError::NonFinite(_)
                | TraError::Pole(_)
                | TraError::Mismatch { .. }
        )
    }
}

pub type Result<T, E = TraError> = std::result::Result<T, E>;
