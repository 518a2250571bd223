use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("closure exceeds the maximum order {max_order}")]
    ClosureOverflow { max_order: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("operands are defined over different groups")]
    GroupMismatch,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("class function is not constant on class {class}")]
    ClassInconsistency { class: usize },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("eigenvalue snapping failed for element {element}: {detail}")]
    SnapFailure { element: usize, detail: String },
    #[error("map is not a group homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("map is not an automorphism")]
    NotAnAutomorphism,
    #[error("gamma set is not closed under inversion and conjugation")]
    InvalidGammaSet,
    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("bad lattice dimensions: {0}")]
    BadDims(String),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("bulk lattice is disconnected into {components} components beyond the evaluation budget")]
    BulkDisconnected { components: usize },
    #[error("result is not a non-negative integer: {0}")]
    NonIntegralResult(String),
    #[error("staggered vacuum requires an even number of sites, got {0}")]
    OddSitesForStaggered(usize),
    #[error("bad charge assignment: {0}")]
    BadCharge(String),
    #[error("site data has length {got}, lattice has {expected} sites")]
    SiteCountMismatch { expected: usize, got: usize },
    #[error("group action is not transitive")]
    NotTransitive,
    #[error("group action is not free")]
    NotFree,
    #[error("representation dimension {0} too large for the Fock oracle")]
    DimTooLarge(usize),
    #[error("representation has no exact matrices; the oracle requires exact input")]
    InexactRepresentation,
}
