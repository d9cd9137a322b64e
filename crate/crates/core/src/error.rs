//! Error taxonomy shared by every module.
//!
//! Three failure classes are kept apart on purpose: bad inputs ([`Error::Domain`]),
//! blown resource caps ([`Error::Resource`]), and internal consistency failures
//! ([`Error::Consistency`]) that signal a transcription bug in a formula rather
//! than a bad input. The CLI maps the first two to exit code 2 and the last to
//! exit code 1, alongside genuine mathematical counterexamples.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the operation's domain (e.g. a zero where a
    /// positive integer is required, mismatched series moduli, a residue not
    /// below its modulus).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured memory or work cap would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An internal invariant failed: a quantity that must be even came out
    /// odd, a division that must be exact was not. These indicate a bug in a
    /// formula transcription, never a property of the input.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
