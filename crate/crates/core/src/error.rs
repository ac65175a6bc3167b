use thiserror::Error;

/// Errors raised by algebra, lexicographic, model and solver operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value does not belong to the carrier it was used with.
    #[error("value outside carrier of {algebra}: {value}")]
    Domain { algebra: String, value: String },

    /// The instance does not provide the requested operation.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// An algebra specification could not be turned into an instance.
    #[error("cannot construct algebra: {0}")]
    Construction(String),

    /// A tuple is not a member of the lexicographic carrier.
    #[error("invalid lex tuple at index {index}: {reason}")]
    InvalidLexTuple { index: usize, reason: String },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    /// A constraint was evaluated on an assignment missing one of its support variables.
    #[error("variable {0} is not assigned")]
    MissingAssignment(String),

    /// A projection named a variable outside the constraint's support.
    #[error("variable #{variable} is not in the support of {constraint}")]
    NotInSupport { constraint: String, variable: usize },

    /// A mini-bucket width cannot hold some constraint on its own.
    #[error("z = {z} is infeasible: constraint {constraint} has {arity} variables")]
    InfeasibleZ {
        z: usize,
        constraint: String,
        arity: usize,
    },

    /// A caller-supplied argument is out of range, e.g. a non-permutation order.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),

    /// A problem document violates one or more model invariants.
    #[error("invalid problem: {}", .0.join("; "))]
    Invalid(Vec<String>),

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn domain(algebra: impl Into<String>, value: impl std::fmt::Debug) -> Self {
        Error::Domain {
            algebra: algebra.into(),
            value: format!("{value:?}"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
