use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit class.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input exceeds a configured size ceiling.
    #[error("capacity exceeded: {what} = {value} (allowed {min}..={max})")]
    Capacity {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    /// An argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Operand directions cannot certify the requested result direction.
    #[error("direction mismatch: {0}")]
    Direction(String),

    #[error("division by a value that may be zero")]
    DivisionByZero,

    /// An exponent set is not contained in the set it claims to approximate.
    #[error("invalid exponent set {set}: {value} {reason}")]
    InvalidSet {
        set: &'static str,
        value: u64,
        reason: &'static str,
    },

    /// A certified invariant failed to hold (a bug, not a user error).
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn capacity(what: &'static str, value: u64, min: u64, max: u64) -> Self {
        Error::Capacity {
            what,
            value,
            min,
            max,
        }
    }
}
