use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument falls outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested object exceeds a configured capacity.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Two operands live over different fields.
    #[error("mixed fields: F_{0} and F_{1}")]
    MixedFields(u64, u64),

    /// `n` is not a divisor of the multiplicative group order; `suggested_m`
    /// is the smallest extension degree that contains an `n`-th root of unity.
    #[error("no element of order {n} in this field (order {order}); smallest valid extension degree is m = {suggested_m}")]
    NoRootOfUnity { n: u64, order: u64, suggested_m: u64 },

    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A mathematical invariant failed. This always signals a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
