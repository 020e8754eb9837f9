use paraclass_core::Error;

use crate::modelfile::ParseError;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const AXIOM: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const THEOREM: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{section}: {source}")]
    Core {
        section: &'static str,
        source: Error,
    },
}

impl CliError {
    pub fn core(section: &'static str) -> impl FnOnce(Error) -> CliError {
        move |source| CliError::Core { section, source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => exit::PARSE,
            CliError::Usage(_) => exit::USAGE,
            CliError::Core { source, .. } => match source {
                Error::SingularMetric
                | Error::AsymmetricMetric
                | Error::BadSignature
                | Error::NotLieAlgebra(_)
                | Error::AxiomViolation { .. } => exit::AXIOM,
                Error::DegenerateParameter(_) => exit::USAGE,
                Error::NullSection
                | Error::NotOrthogonal
                | Error::RequiresCommuting
                | Error::TheoremViolation(_) => exit::THEOREM,
            },
        }
    }
}
