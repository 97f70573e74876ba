use thiserror::Error;

/// Errors raised by the kernel. Mathematical failures that are the *answer*
/// to a question (a nonzero residual, an obstruction class) are reported in
/// result structs instead.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("Jacobi identity fails at (e{}, e{}, e{})", .0.0 + 1, .0.1 + 1, .0.2 + 1)]
    Jacobi((usize, usize, usize)),
    #[error("omega is degenerate")]
    Degenerate,
    #[error("omega is not closed: (d omega) at (e{}, e{}, e{}) is nonzero", .0.0 + 1, .0.1 + 1, .0.2 + 1)]
    NotClosed((usize, usize, usize)),
    #[error("truncation order {requested} exceeds the maximum {max}")]
    OrderTooHigh { requested: usize, max: usize },
    #[error("jet order {configured} too low: at least {required} is required")]
    JetOrderTooLow { configured: usize, required: usize },
    #[error("jet extraction unstable: coefficients differ between jet orders {0} and {1}")]
    JetUnstable(usize, usize),
    #[error("star product is not tangential to u = 1: {0}")]
    NotTangential(String),
    #[error("classical limit is not of bidegree (1,1): {0}")]
    NotClassical(String),
    #[error("classical limits differ")]
    ClassicalLimitMismatch,
    #[error("semiclassical data differ: {0}")]
    SemiclassicalMismatch(String),
    #[error("star product is not invariant: {0}")]
    NotInvariant(String),
    #[error("internal solver inconsistency: {0}")]
    Solver(String),
}
