use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped loosely: input/parse problems, shape problems,
/// violated preconditions of a construction, and `TheoremViolation`, which
/// means an identity that must hold for mathematical reasons did not. The
/// last one always indicates a bug and is never a user error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operands live over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    BadIndex { index: usize, nvars: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("input columns are linearly dependent")]
    DependentInput,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable x{index} exceeds declared nvars = {nvars}")]
    BadVariable { index: usize, nvars: usize },
    #[error("denominator {0} is not a unit in the field")]
    DivisorNotUnit(String),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("linear part of the map at the origin is singular")]
    SingularLinearPart,
    #[error("map is not of the form x + H with ord(H) >= 2")]
    NotNormalized,
    #[error("no polynomial inverse found up to degree {bound}")]
    NotInvertibleUpToBound { bound: u64 },
    #[error("matrix is not strictly lower triangular")]
    NotStrictlyLowerTriangular,
    #[error("component {component} depends on x{variable}, beyond the first {r} variables")]
    DependenceViolation {
        component: usize,
        variable: usize,
        r: usize,
    },
    #[error("supplied sub-inverse does not invert the leading {0} components")]
    BadSubInverse(usize),
    #[error("paired reduction disagrees with the conjugated map")]
    InconsistentReduction,
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error("search needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { budget: u64, required: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
