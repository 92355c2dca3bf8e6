//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by the library. Callers that want exit-code semantics can
/// treat every variant as a failure; the CLI maps them all to status 1.
#[derive(Debug, Error)]
pub enum Error {
    /// Input is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A sieve or table was requested with a bound too small to hold any prime.
    #[error("bound {0} is below 2, no primes exist in that range")]
    EmptyTable(u64),

    /// A succession index was out of range (indices are 1-based).
    #[error("index error: {0}")]
    Index(String),

    /// The predecessor of the first prime was requested.
    #[error("2 is the first prime and has no predecessor")]
    NoPredecessor,

    /// The value cannot be handled exactly by any available counting method.
    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    /// The request would exceed a configured resource bound.
    #[error("resource limit: {what} exceeds the configured bound {bound}")]
    Resource { what: String, bound: u64 },

    /// A scan ended without finding the requested object.
    #[error("not found: {0}")]
    NotFound(String),

    /// A numeric argument was outside the accepted interval.
    #[error("range error: {0}")]
    Range(String),

    /// A string could not be parsed as a number or identifier.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
