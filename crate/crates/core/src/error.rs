use thiserror::Error;

/// Errors raised by the numerical and experimental routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition of an operation was not met.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The symmetric eigensolver did not reach its tolerance.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    Convergence { sweeps: usize, residual: f64 },

    /// A metric tensor had an eigenvalue too negative to be rounding noise.
    #[error("matrix is not positive semi-definite: eigenvalue {eigenvalue:e} below tolerance (largest {largest:e})")]
    NotPsd { eigenvalue: f64, largest: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Contract(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
