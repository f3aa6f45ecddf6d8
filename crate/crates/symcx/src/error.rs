use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a complex: d^{0} composed with d^{} is nonzero", .0 - 1)]
    NotAComplex(i32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a chain map at degree {0}")]
    NotChainMap(i32),
    #[error("not a homotopy: the defining identity fails at degree {0}")]
    NotHomotopy(i32),
    #[error("homotopy is not symmetric")]
    NotSymmetricHomotopy,
    #[error("map is not symmetric")]
    NotSymmetric,
    #[error("map is not a quasi-isomorphism")]
    NotQuasiIso,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] swhw_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
