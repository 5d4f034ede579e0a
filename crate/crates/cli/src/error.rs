use lctds::Error;

/// Failures surfaced by the runner, each with its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Lib(e) => match e {
                Error::SymplecticViolation { .. }
                | Error::SingularB { .. }
                | Error::SingularM
                | Error::InvalidTolerance(_) => 2,
                Error::UnstableSystem { .. } => 3,
                _ => 4,
            },
            CliError::Io(_) | CliError::Numerical(_) => 4,
        }
    }

    /// Short machine-readable name, e.g. `SingularB`.
    pub fn kind(&self) -> String {
        match self {
            CliError::Config(_) => "ConfigParse".into(),
            CliError::Lib(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
            CliError::Io(_) => "Io".into(),
            CliError::Numerical(_) => "NumericalFailure".into(),
        }
    }
}
