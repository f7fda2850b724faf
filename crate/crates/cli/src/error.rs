use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] emergence::Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {0}: {1}")]
    Input(String, std::io::Error),

    #[error("cannot write {0}: {1}")]
    Output(String, std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}
