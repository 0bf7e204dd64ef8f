use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid sequence spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("index {index} out of range: {reason}")]
    OutOfRange { index: u64, reason: String },

    #[error("contract violation: {0}")]
    Contract(String),

    /// A generator produced a value that violates a structural guarantee
    /// (negative term, inexact division). Always a bug.
    #[error("generator defect in {family}: {reason}")]
    GeneratorDefect { family: String, reason: String },

    #[error("prefix not realizable at n = {index}: {reason}")]
    NotRealizable { index: u64, reason: String },

    #[error("map too large: {size} points exceeds the limit of {limit}")]
    MapTooLarge { size: String, limit: u64 },

    #[error("b-file line {line}: {reason}")]
    BFileParse { line: usize, reason: String },

    #[error("{0}: not found in bundled fixtures or cache")]
    NotFound(String),

    #[error("{0}: not cached and network access is disabled")]
    NetworkDisabled(String),

    #[error("network fetch failed: {0}")]
    Network(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Module-qualified code surfaced by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "arith.domain",
            Error::UnknownFamily(_) => "seq.unknown-family",
            Error::InvalidSpec { .. } => "seq.invalid-spec",
            Error::OutOfRange { .. } => "seq.out-of-range",
            Error::Contract(_) => "contract",
            Error::GeneratorDefect { .. } => "seq.generator-defect",
            Error::NotRealizable { .. } => "realize.not-realizable",
            Error::MapTooLarge { .. } => "realize.map-too-large",
            Error::BFileParse { .. } => "oeis.parse",
            Error::NotFound(_) => "oeis.not-found",
            Error::NetworkDisabled(_) => "oeis.network-disabled",
            Error::Network(_) => "oeis.network",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
