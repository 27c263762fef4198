use crate::rational::Rational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit of the coefficient ring")]
    NonUnitConstantTerm(String),
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("Eisenstein weight must be even and positive, got {0}")]
    BadWeight(i64),
    #[error("Laurent polynomial is not symmetric under t <-> 1/t: {0}")]
    NotSymmetric(String),
    #[error("non-integer coefficient {0} where a multiplicity is required")]
    NonIntegerCoefficient(Rational),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("non-integral BPS invariant n_{genus}({class:?}) = {value}")]
    NonIntegralBps {
        class: Vec<u64>,
        genus: usize,
        value: Rational,
    },
    #[error("BPS table disagrees with product side at q^{g}, h={h}: {character} vs {product}")]
    MismatchAgainstProduct {
        g: usize,
        h: usize,
        character: String,
        product: String,
    },
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(u32, u32),
    #[error("missing prerequisite P(g={genus}, n={n})")]
    MissingPrerequisite { genus: usize, n: usize },
    #[error("boundary data underdetermined: {unknowns} unknowns, rank {rank}")]
    UnderdeterminedBoundary { unknowns: usize, rank: usize },
    #[error("boundary data inconsistent at q^{0}")]
    InconsistentBoundary(usize),
    #[error("invalid Betti vector: {0}")]
    InvalidBetti(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}
