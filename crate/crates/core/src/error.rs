use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A syntax error in one of the textual input languages (signatures,
/// homomorphism literals, words). `pos` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.msg)
    }
}

/// Library-wide error type.
///
/// `Parse` is a syntax problem in an input string; everything else is a
/// domain error (violated hypothesis, invalid data) or an internal
/// consistency failure that indicates a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Parse(ParseError),
    /// A mathematical hypothesis does not hold for the given input. The
    /// message states the hypothesis in words.
    Domain(String),
    /// A generator or group-element name that the current presentation or
    /// group does not know.
    UnknownName(String),
    /// A homomorphism failed validation; the payload lists the indices of
    /// the violated relators.
    InvalidHom(Vec<usize>),
    /// Two independent computations of the same quantity disagreed.
    /// This is a bug in the engine, not a user error.
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => e.fmt(f),
            Error::Domain(msg) => write!(f, "{msg}"),
            Error::UnknownName(name) => write!(f, "unknown {name}"),
            Error::InvalidHom(relators) => {
                write!(f, "assignment violates relator(s) ")?;
                for (i, r) in relators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "#{r}")?;
                }
                Ok(())
            }
            Error::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
