use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown index {0:?}")]
    UnknownIndex(String),
    #[error("invalid Cartan datum: {0}")]
    InvalidCartan(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<String>),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vertex {0} is not exchangeable")]
    NotExchangeable(usize),
    #[error("incompatible pair: entry ({row}, {col}) of Lambda B is {value}")]
    Incompatible { row: usize, col: usize, value: i64 },
    #[error("Lambda is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("normalization exponent {0} is not divisible by 4")]
    Parity(i64),
    #[error("division is not exact: {0}")]
    InexactDivision(String),
    #[error("functional is not injective: {0}")]
    NotInjective(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
