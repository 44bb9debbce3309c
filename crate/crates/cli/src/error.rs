use std::path::PathBuf;
use std::process::ExitCode;

use trapezoid_core::scalar::ParseScalarError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("identity check failed: {0}")]
    VerifyFailed(String),
    #[error("{0}")]
    BadInput(String),
    #[error(transparent)]
    Core(#[from] trapezoid_core::Error),
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot build thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// 1 verification failed, 2 bad input, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Io { .. } | CliError::ThreadPool(_) => 3,
            CliError::BadInput(_) | CliError::Core(_) | CliError::Scalar(_) | CliError::Json { .. } => 2,
        }
    }
}

impl From<&CliError> for ExitCode {
    fn from(e: &CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
