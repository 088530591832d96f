use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{failed} propert{} failed", if *.failed == 1 { "y" } else { "ies" })]
    PropertyFailure { failed: usize },

    #[error(transparent)]
    Core(#[from] resmotif::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io(_) => 1,
            Self::PropertyFailure { .. } => 2,
            Self::Core(e) => match e {
                resmotif::Error::Convergence { .. } | resmotif::Error::NotPsd { .. } => 3,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::PropertyFailure { failed: 2 }.exit_code(), 2);
        let conv = resmotif::Error::Convergence { sweeps: 100, residual: 1.0 };
        assert_eq!(CliError::from(conv).exit_code(), 3);
        let psd = resmotif::Error::NotPsd { eigenvalue: -1.0, largest: 1.0 };
        assert_eq!(CliError::from(psd).exit_code(), 3);
        assert_eq!(CliError::from(resmotif::Error::Contract("x".into())).exit_code(), 1);
    }
}
