use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("complex structure is incompatible: {0}")]
    IncompatibleComplexStructure(String),
    #[error("form is not homogeneous")]
    MixedDegree,
    #[error("form does not have pure bidegree")]
    MixedBidegree,
    #[error("odd dimension {0} where an even one is required")]
    OddDimension(usize),
    #[error("negative power of h in polynomial mode")]
    NegativePower,
    #[error("bivector is not Poisson: Jacobi fails at ({0}, {1}, {2})")]
    NotPoisson(usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("unknown suite {name}; available: {available}")]
    UnknownSuite { name: String, available: String },
    #[error("not representable: {0}")]
    NotRepresentable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
