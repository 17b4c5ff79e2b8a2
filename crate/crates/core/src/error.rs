use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument falls outside the range an operation supports.
    #[error("domain error: {0}")]
    Domain(String),

    /// Degenerate, self-intersecting or otherwise malformed boundary data.
    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("sampling error: {0}")]
    Sampling(String),

    /// A bound or formula was evaluated outside the range where it holds.
    #[error("validity error: {0}")]
    Validity(String),

    #[error("no explicit spectrum is available for {0}")]
    UnsupportedSpectrum(String),

    /// The domain lacks the regularity a pipeline requires.
    #[error("method not eligible: {0}")]
    Eligibility(String),

    #[error("method not applicable: {0}")]
    Inapplicable(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
