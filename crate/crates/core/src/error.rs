use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable `{var}` is not available in arity {arity}")]
    WrongVariable { var: char, arity: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("exponent overflow: {exponent} exceeds the cap {cap}")]
    ExponentOverflow { exponent: u64, cap: u32 },

    #[error("weighted degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: i64, cap: i64 },

    #[error("invalid weight system: {0}")]
    InvalidWeights(String),

    #[error("polynomial is not weight homogeneous for the given weights")]
    NotHomogeneous,

    #[error("polynomial does not have an isolated singularity (Milnor algebra is infinite-dimensional)")]
    NotIsolatedSingularity,

    #[error("Milnor algebra is zero: the polynomial has no singular point at the origin")]
    NoSingularity,

    #[error("polynomial is not square-free")]
    NotSquareFree,

    #[error("quotient algebra is infinite-dimensional")]
    InfiniteDimension,

    #[error("Schouten bracket of degrees ({p}, {q}) is out of range")]
    DegreeOutOfRange { p: usize, q: usize },

    #[error("bivector is not a 2-cocycle")]
    NotACocycle,

    #[error("cocycle is not in the span of the truncated basis (phi power bound {bound})")]
    NotInSpan { bound: usize },

    #[error("truncated series is not a formal deformation: first defect at order {order}")]
    NotADeformation { order: usize },

    #[error("coefficient index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("weighted gauge closed form needs weighted degree of phi equal to the weight sum")]
    WrongWeightClass,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("gradewise coboundary solve failed at order {order}")]
    H1Obstruction { order: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
