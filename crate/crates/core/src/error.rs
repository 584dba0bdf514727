use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Pell coefficient must be positive")]
    ZeroCoefficient,

    #[error("Pell coefficient {0} is a perfect square")]
    SquareCoefficient(BigUint),

    #[error("invalid Pell problem: {0}")]
    InvalidProblem(&'static str),

    #[error("n = {n} is out of range (requires n >= {min})")]
    NOutOfRange { n: i64, min: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("rank-one summand of odd degree {0} would make the lattice odd")]
    OddDegree(i64),

    #[error("empty lattice specification")]
    EmptyLattice,

    #[error("Gram matrix is degenerate")]
    Degenerate,

    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("transvection needs an isotropic vector, but (x, x) = {0}")]
    NotIsotropic(i64),

    #[error("map does not preserve the Gram matrix")]
    NotIsometry,

    #[error("the zero vector has no divisibility")]
    ZeroVector,

    #[error("wall record invariant violated: {0}")]
    WallInvariant(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
