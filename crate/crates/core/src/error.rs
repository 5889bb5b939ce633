use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator {generator}: {reason}")]
    InvalidPermutation { generator: usize, reason: String },

    #[error("cayley table is not a group: {0}")]
    NotAGroup(String),

    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("word references generator {0}, which does not exist")]
    UnknownGenerator(i64),

    #[error("subgroup {0} is not normal")]
    NotNormal(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("class functions belong to different groups")]
    GroupMismatch,

    #[error("character is not irreducible")]
    NotIrreducible,

    #[error("element {0} does not fix theta")]
    NotInInertia(usize),

    #[error("element {0} does not square into the normal subgroup")]
    NotInvolutionCoset(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed. Results computed up to this
    /// point must not be trusted.
    #[error("engine defect: {0}")]
    Defect(String),

    #[error("{0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
