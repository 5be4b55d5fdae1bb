use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("sl_n needs n >= 2, got n = {0}")]
    InvalidRank(usize),
    #[error("element {0} is not in the Cartan subalgebra")]
    NotCartan(String),
    #[error("quadratic Casimir does not act by a scalar on the adjoint module: {0}")]
    NonScalarCasimir(String),
    #[error("{op} needs {expected}, got {got}")]
    WrongAlgebra { op: &'static str, expected: &'static str, got: String },
    #[error("tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("precondition violated ({equation}): {detail}")]
    Precondition { equation: &'static str, detail: String },
    #[error("postcondition violated ({equation}): {detail}")]
    Postcondition { equation: &'static str, detail: String },
    #[error("no solution inside PBW filtration degree {0}; retry with a larger degree bound")]
    NoSolution(usize),
    #[error("unknown fault `{0}`")]
    UnknownFault(String),
    #[error("value leaves the PBW filtration slice of degree {0}")]
    OutsideTruncation(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
