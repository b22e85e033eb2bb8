use thiserror::Error;

/// Errors raised by the bracket engines, flows and model constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("non-finite bivector component pi^({0},{1})")]
    NonFiniteComponent(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("step size underflow (h = {h:e}) at t = {t}")]
    Stiffness { h: f64, t: f64 },

    #[error("non-finite state; last good time t = {last_good_time}")]
    Divergence { last_good_time: f64 },

    #[error("estimation error: {0}")]
    Estimation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
