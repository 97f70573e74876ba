//! Exact-arithmetic substrate: rationals, truncated ℏ-series, commutative
//! polynomials, alternating forms and fraction-free linear solving.
//!
//! Nothing in this crate touches floating point. Every equality test in the
//! higher modules is a test for an exact zero.

mod altform;
mod linsolve;
mod poly;
mod scalar;
mod series;

pub use altform::{AltForm, Bivector};
pub(crate) use altform::{increasing_tuples, sort_with_sign};
pub use linsolve::{inverse, mat_mul, mat_vec, rank, solve_exact, transpose, LinearSolveResult, Matrix};
pub use poly::{monomials_of_degree, monomials_up_to, Exponent, Poly};
pub use scalar::{factorial, multi_factorial, parse_scalar, q, Scalar};
pub use series::{series_mul, Coeff, HbarSeries};

/// Highest ℏ truncation order any computation accepts.
pub const MAX_ORDER: usize = 4;
/// Truncation order used when nothing else is configured.
pub const DEFAULT_ORDER: usize = 2;
