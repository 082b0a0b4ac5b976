use std::fmt;
use std::path::PathBuf;

/// Where a configuration value came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Line { file: PathBuf, line: usize },
    Flag(String),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line { file, line } => write!(f, "{}:{line}", file.display()),
            Origin::Flag(name) => write!(f, "flag --{name}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{origin}: malformed line {text:?}, expected key=value")]
    Malformed { origin: Origin, text: String },

    #[error("{origin}: unknown key `{key}` for experiment {experiment}")]
    UnknownKey { key: String, experiment: String, origin: Origin },

    #[error("{origin}: unknown experiment `{name}`")]
    UnknownExperiment { name: String, origin: Origin },

    #[error("{0}")]
    Usage(String),

    #[error("no experiment given (use --experiment or an `experiment=` line)")]
    MissingExperiment,

    #[error("missing required key `{key}` for experiment {experiment}")]
    MissingKey { key: String, experiment: String },

    #[error("{origin}: key `{key}` expects {expected}, got {value:?}")]
    Type { key: String, value: String, expected: String, origin: Origin },

    #[error("invalid parameters: {0}")]
    Invalid(#[from] thetakit::Error),

    #[error("cannot read config file {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Library(#[from] thetakit::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
