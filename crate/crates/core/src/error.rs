use thiserror::Error;

/// Errors raised by the exact algebra, the invariant checks and the document layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not a unit: |det| = {0}")]
    NotAUnit(String),
    #[error("system has no integer solution")]
    NoIntegerSolution,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidMap(String),
    #[error("complex is not acyclic: homology is nonzero in degree {degree}")]
    NotAcyclic { degree: usize },
    #[error("map is not a chain equivalence")]
    NotEquivalence,
    #[error("torsion routes disagree: {0}")]
    InconsistentTorsion(String),
    #[error("formal dimension {0} is not divisible by 4")]
    DimensionNotDivisibleBy4(usize),
    #[error("form is not even")]
    NotEven,
    #[error("middle cohomology pairing is not symmetric")]
    NonSymmetricHomologyPairing,
    #[error("invalid symmetric complex: {0}")]
    InvalidSymmetric(String),
    #[error("invalid unimodular form: {0}")]
    InvalidForm(String),
    #[error("map is not filtered: {0}")]
    NotFiltered(String),
    #[error("invalid filtered complex: {0}")]
    InvalidFiltered(String),
    #[error("bad truncation bounds: {0}")]
    BadBounds(String),
    #[error("filtered complex is not admissible: {0}")]
    NotAdmissible(String),
    #[error("alpha = d beta + beta d is not unitriangular")]
    AlphaNotInvertible,
    #[error("associated graded complex is not contractible")]
    NotContractible,
    #[error("top derived differential does not split: {0}")]
    NotSplit(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("schema error: {0}")]
    SchemaError(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
