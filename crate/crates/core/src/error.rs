use thiserror::Error;

use crate::coh::BaseField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no square class")]
    ZeroInput,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(BaseField, BaseField),
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("c_{ell} is undefined over {field}")]
    CharacteristicClash { ell: u64, field: BaseField },
    #[error("boundary map needs an odd residue characteristic")]
    EvenResidueChar,
    #[error("operation is not supported over {0}")]
    UnsupportedField(BaseField),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("H^2 class over Q must have an even number of places")]
    OddPlaceCount,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("subspace is not totally isotropic")]
    NotIsotropic,
    #[error("vectors are linearly dependent")]
    NotIndependent,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not monic with integer coefficients")]
    NotMonic,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("valuation {0} is neither 0 nor 1")]
    BadValuation(i64),
    #[error("character has even valuation, it is not ramified")]
    NotRamified,
    #[error("character is ramified")]
    NotUnramified,
    #[error("profile validation failed: {0}")]
    ValidationFailed(String),
    #[error("missing input: {0}")]
    MissingInput(&'static str),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("Hodge vanishing condition fails: h^({p},{q}) = {h} with p = {prime}")]
    HodgeConditionViolated { p: usize, q: usize, h: i64, prime: u64 },
    #[error("input is not of good reduction: {0}")]
    NotGoodReduction(String),
    #[error("inconsistent synthesis: {0}")]
    InconsistentSynthesis(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
