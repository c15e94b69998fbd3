use std::path::PathBuf;

/// Failures of the sweep runner, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    ReadConfig { path: PathBuf, source: std::io::Error },

    #[error("invalid config: {0}")]
    ParseConfig(#[from] serde_json::Error),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("cannot write {path}: {source}")]
    WriteOutput { path: PathBuf, source: std::io::Error },

    #[error("{failed} of {total} sweep rows failed")]
    Numerical { failed: usize, total: usize },
}

impl CliError {
    /// 2 for anything wrong with the inputs, 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Numerical { .. } => 3,
            _ => 2,
        }
    }
}

impl From<fadeperf_core::Error> for CliError {
    fn from(e: fadeperf_core::Error) -> Self {
        Self::Config(e.to_string())
    }
}
