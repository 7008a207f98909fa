use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {0:?} vs {1:?}")]
    ModulusMismatch(Option<u64>, Option<u64>),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires coefficients in Z, found modulus {0}")]
    ModularOperand(u64),
    #[error("operation requires a modulus")]
    MissingModulus,
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("element is not symmetric under t -> t^-1")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("form is degenerate (zero determinant)")]
    Degenerate,
    #[error("form is degenerate at t = 1")]
    DegenerateAtOne,
    #[error("form is not even")]
    NotEven,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not an isometry of the given forms")]
    NotIsometry,
    #[error("matrix does not descend to the cokernels")]
    DoesNotDescend,
    #[error("map is not an isometry of the boundary linking forms")]
    NotLinkingIsometry,
    #[error("value is not in the group {0}")]
    NotInGroup(&'static str),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(&'static str, &'static str),
    #[error("element is not a unitary unit")]
    NotUnitary,
    #[error("unit reduction mod {modulus} is not of the form ±t^k: {poly}")]
    UnexpectedReduction { modulus: u64, poly: String },
    #[error("enumeration budget exceeded: {candidates} candidates > cap {cap}")]
    BudgetExceeded { candidates: u128, cap: u128 },
    #[error("word is not in the kernel of phi (t-exponent sum {0})")]
    NotInKernel(i64),
    #[error("cannot parse word: {0}")]
    WordParse(String),
    #[error("integrality violated: {0}")]
    Integrality(String),
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
