// SPDX-License-Identifier: MIT

//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by library operations.
///
/// The variants mirror how callers are expected to react: `Domain` and
/// `Validation` mean the inputs cannot describe a well-posed object,
/// `Range` means an index or horizon was exceeded, `Unsupported` marks a
/// documented restriction, `Usage` is reserved for command-line argument
/// problems, and `Io` wraps file-system failures.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument lies outside the mathematical domain of the
    /// operation (for example a tail index outside `(0,2)`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structured input violates one of its invariants (for example an
    /// autoregressive polynomial with a root inside the closed unit disk).
    #[error("validation error: {0}")]
    Validation(String),

    /// An index or evaluation point exceeds the available horizon.
    #[error("range error: {0}")]
    Range(String),

    /// The operation is well defined but deliberately not implemented for
    /// these inputs; the message states the restriction.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Command-line arguments could not be parsed or validated.
    #[error("usage error: {0}")]
    Usage(String),

    /// An underlying I/O operation failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code associated with this error by the command-line
    /// front end: 2 for argument/validation problems, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_prefixed() {
        let e = Error::Domain("alpha must lie in (0,2)".into());
        assert_eq!(e.to_string(), "domain error: alpha must lie in (0,2)");
        let e = Error::Usage("unknown subcommand".into());
        assert_eq!(e.to_string(), "usage error: unknown subcommand");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Error::Usage("x".into()).exit_code(), 2);
        assert_eq!(Error::Domain("x".into()).exit_code(), 2);
        let io = Error::from(std::io::Error::new(std::io::ErrorKind::Other, "disk"));
        assert_eq!(io.exit_code(), 3);
    }
}
