use nk6_core::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage and configuration problems, 1 for failed computations.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Io(_) => 2,
            Self::Core(e) => match e {
                Error::InvalidTable(_)
                | Error::TableParse { .. }
                | Error::InvalidConfig(_)
                | Error::UnknownModel(_)
                | Error::NoImmersion(_)
                | Error::PolyParse { .. }
                | Error::Io(_) => 2,
                _ => 1,
            },
            Self::Csv(_) | Self::Json(_) => 1,
        }
    }
}
