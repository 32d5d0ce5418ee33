use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition of an operation was not met by its arguments.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// The connected stabilizer does not contain a maximal torus of the
    /// ambient unitary group, so the coinvariant engine does not apply.
    #[error("descriptor {0} is not torus-commensurable; use the Cartan engine")]
    NotTorusCommensurable(String),

    /// A polynomial division that must be exact left a remainder.
    #[error("non-exact polynomial division: {0}")]
    NonExactDivision(String),

    /// A graded piece of a complex exceeds the configured size budget.
    #[error("graded piece in degree {degree} has dimension {dimension}, over the budget of {limit}")]
    ResourceLimit {
        degree: u32,
        dimension: usize,
        limit: usize,
    },

    /// An internal consistency check failed.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("cannot parse descriptor {input:?} at byte {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    /// The two Poincaré engines disagree on a descriptor both can handle.
    #[error("engine mismatch on {descriptor}: molien gives {molien}, cartan gives {cartan}")]
    EngineMismatch {
        descriptor: String,
        molien: String,
        cartan: String,
    },
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::ContractViolation(msg.into()))
}
