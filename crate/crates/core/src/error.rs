use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("empty generator set (supply the identity's degree explicitly)")]
    EmptyGenerators,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("coset index {index} exceeds bound {bound}")]
    IndexBound { index: u64, bound: u64 },
    #[error("enumeration of {order} elements exceeds bound {bound}")]
    EnumerationBound { order: String, bound: u64 },
    #[error("not a factorization: {0}")]
    NotAFactorization(String),
    #[error("cyclic factor is not core-free: {0}")]
    NotCoreFree(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unknown descriptor: {0}")]
    Descriptor(String),
    #[error("search bound exceeded: {0}")]
    SearchBound(String),
    #[error("construction self-check failed: {0}")]
    SelfCheck(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("no suitable element found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
