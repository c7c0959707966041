use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A violated side condition of an input triple `(n, a, b)`.
///
/// Positions are 1-based, matching the usual `a_1, ..., a_d` numbering.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("b must exceed 1 (got b = {0})")]
    BMustExceedOne(String),
    #[error("a must contain at least one entry")]
    EmptyA,
    #[error("a_{index} = {value} is not coprime to b = {b}: gcd({value},{b}) = {gcd} != 1")]
    NotCoprime {
        index: usize,
        value: String,
        b: String,
        gcd: String,
    },
    #[error("a_{index} = {value} must be positive")]
    NonPositiveA { index: usize, value: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(#[from] InstanceError),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("basis columns are linearly dependent")]
    DependentColumns,
    #[error("denominator exponent vanishes for generator {0}")]
    DegenerateDenominator(usize),
    #[error("denominator factor {factor} of term {term} vanishes at the evaluation point")]
    PoleAtPoint { term: usize, factor: usize },
    #[error("negative-order coefficient of t^{order} does not cancel: {value}")]
    CancellationFailure { order: i64, value: String },
    #[error("b = {b} exceeds the cyclotomic evaluation bound {bound}")]
    BoundExceeded { b: String, bound: String },
    #[error("cyclotomic sum did not reduce to a rational (degree {0} residue)")]
    NonRationalResult(usize),
    #[error("imaginary residual {imag:e} too large relative to real part {real:e}")]
    ImaginaryResidual { real: f64, imag: f64 },
    #[error("methods disagree: barvinok = {barvinok}, cyclotomic = {cyclotomic}")]
    MethodMismatch {
        barvinok: String,
        cyclotomic: String,
    },
}

impl Error {
    /// Whether the error is the caller's fault rather than an internal consistency failure.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInstance(_)
                | Error::NotCoprime(..)
                | Error::BadDimension(_)
                | Error::BoundExceeded { .. }
        )
    }
}
