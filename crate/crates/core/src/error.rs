use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative power of a series whose leading coefficient is zero")]
    NonInvertibleLeadingTerm,
    #[error("series does not converge: Im(tau) = {0} must be positive")]
    NotConvergent(f64),
    #[error("truncation window too small: {0}")]
    WindowTooSmall(String),
    #[error("bad weight {0}: expected an even integer >= 2")]
    BadWeight(i64),
    #[error("function is undefined at the trivial pair (1, 1)")]
    UndefinedAtTrivialPair,
    #[error("Klein/Hecke form undefined at a lattice point")]
    UndefinedAtLatticePoint,
    #[error("point outside the convergence region |q_tau| < |q_z| < 1 ({0})")]
    OutsideRegion(String),
    #[error("evaluation too close to a pole (denominator magnitude {0:e})")]
    NearPole(f64),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),
    #[error("exponent pair ({0}, {1}) does not generate Z/{2}")]
    NotGenerating(i64, i64, i64),
    #[error("truncation insufficient: tail bound {bound:e} exceeds {limit:e}")]
    TruncationInsufficient { bound: f64, limit: f64 },
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("solved character degree {0} is not a positive integer")]
    NonIntegralCharacter(String),
    #[error("unknown conjugacy class {0}")]
    UnknownClass(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
