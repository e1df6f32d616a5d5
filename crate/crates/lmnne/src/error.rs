use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}:{line}: expected {expected} tab-separated fields, found {found}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        expected: &'static str,
        found: usize,
    },
    #[error("{path}:{line}: invalid label column `{value}` (expected 1 or -1)")]
    BadLabelColumn {
        path: PathBuf,
        line: usize,
        value: String,
    },
    #[error("{path}:{line}: unknown {kind} `{label}`")]
    UnknownLabel {
        path: PathBuf,
        line: usize,
        kind: &'static str,
        label: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("embedding dimension must be at least 1")]
    ZeroDim,
    #[error("row {row} has zero norm and cannot be normalized")]
    ZeroNormRow { row: usize },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("{path}: {reason}")]
    BadTableFile { path: PathBuf, reason: String },
    #[error(
        "vocabulary fingerprint mismatch: embeddings were built for {found:#018x}, dataset is {expected:#018x}"
    )]
    FingerprintMismatch { found: u64, expected: u64 },
    #[error("corruption sampling needs at least 2 entities")]
    NotEnoughEntities,
    #[error("no admissible negative replacement exists for ({head}, {relation}, {tail})")]
    NoNegativeAvailable {
        head: usize,
        relation: usize,
        tail: usize,
    },
    #[error("training diverged at epoch {epoch}: {reason}")]
    Diverged { epoch: usize, reason: String },
    #[error("{0}")]
    Eval(String),
}

impl Error {
    /// Short machine-readable class, used by the CLI for one-line failures.
    pub fn class(&self) -> &'static str {
        match self {
            Error::MalformedLine { .. } | Error::BadLabelColumn { .. } => "parse",
            Error::UnknownLabel { .. } => "unknown-label",
            Error::Io { .. } => "io",
            Error::DimMismatch { .. } | Error::ZeroDim => "dimension",
            Error::ZeroNormRow { .. } | Error::NonFinite(_) | Error::Diverged { .. } => "numeric",
            Error::InvalidConfig(_) => "config",
            Error::BadTableFile { .. } => "table-file",
            Error::FingerprintMismatch { .. } => "fingerprint",
            Error::NotEnoughEntities | Error::NoNegativeAvailable { .. } => "sampling",
            Error::Eval(_) => "eval",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
