use thiserror::Error;

/// Errors raised by the numerical routines and the sweep driver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FracError {
    #[error("invalid interval: require a < b, got a = {a}, b = {b}")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid order: alpha = {0} is outside the supported range")]
    InvalidOrder(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate evaluation point: x = b = {b} with alpha = {alpha} > 1")]
    DegeneratePoint { b: f64, alpha: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (best estimate {value:e}, error estimate {error_estimate:e})"
    )]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("integrand produced a non-finite value at t = {0}")]
    NonFinite(f64),

    #[error("configuration error in `{field}`: {message}")]
    Config { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, FracError>;

pub(crate) fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(FracError::InvalidInterval { a, b })
    }
}
