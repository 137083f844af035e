use thiserror::Error;

use crate::group::ElementId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element index {index} out of range for group of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("table has {cells} cells, expected {expected} for {size} elements")]
    NonSquareTable {
        size: usize,
        cells: usize,
        expected: usize,
    },

    #[error("empty multiset")]
    EmptyMultiset,

    #[error("power recurrence is ambiguous for element {element} at step {step}")]
    AmbiguousPower { element: ElementId, step: usize },

    #[error("powers of element {0} never return to the identity")]
    NoFiniteOrder(ElementId),

    #[error("group is not involutive")]
    NotInvolutive,

    #[error("group is not commutative")]
    NotCommutative,

    #[error("table does not define a two-valued group")]
    NotTwoValuedGroup,

    #[error("invalid abelian group factors: {0}")]
    InvalidFactors(String),

    #[error("map is not a group automorphism: {0}")]
    NotAutomorphism(String),

    #[error("automorphism does not square to the identity")]
    NotInvolutiveAutomorphism,

    #[error("set is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subset is not closed under multiplication: {0}")]
    ClosureViolation(String),

    #[error("element {0} does not have order two")]
    NotOrderTwo(ElementId),

    #[error("linear system for the direct-factor split is inconsistent")]
    InconsistentSystem,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid quasi-cocycle: {0}")]
    InvalidCocycle(String),

    #[error("product rule does not single out a unique pair: {0}")]
    NonUniquePair(String),

    #[error("reconstructed product is not associative")]
    NotAssociative,

    #[error("table is not an abelian group: {0}")]
    NotAbelian(String),

    #[error("isomorphism search exceeded its budget of {0} nodes")]
    Timeout(u64),

    #[error("enumeration exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),

    #[error("leading coefficient {magnitude:e} is below the degeneracy tolerance")]
    NearDegenerate { magnitude: f64 },

    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
