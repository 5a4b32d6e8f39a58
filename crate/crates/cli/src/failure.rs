use std::path::PathBuf;

use cryptoherm::Error;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Lib(#[from] Error),
}

pub type Result<T> = std::result::Result<T, Failure>;

fn is_format_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Format { .. }
            | Error::Shape(_)
            | Error::Parameter(_)
            | Error::IndexOutOfRange { .. }
            | Error::Weights(_)
            | Error::DimensionCap { .. }
            | Error::NonFinite { .. }
            | Error::ZeroNorm { .. }
    )
}

impl Failure {
    /// 2 for usage, I/O and malformed input; 1 for numerical verification
    /// failures surfaced as errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io { .. } => 2,
            Failure::Input { source, .. } | Failure::Lib(source) => {
                if is_format_error(source) {
                    2
                } else {
                    1
                }
            }
        }
    }
}
