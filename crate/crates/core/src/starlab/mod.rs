//! Star products as ℏ-series of bidifferential operators on polynomials, the
//! linear Poisson structure of a central extension, restriction to the
//! hyperplane `u = 1`, the trace operators `D_r`, and the comparison of two
//! invariant star products up to invariant equivalence.

mod diffop;
mod dito;
mod poisson;
mod relative;
mod star;

pub use diffop::{BiDiffOp, DiffOp};
pub(crate) use diffop::binom_multi;
pub use dito::{dito_coefficients, dito_operator};
pub use poisson::{lie_poisson, linear_poisson, PoissonBivector};
pub use relative::{relative_class, RelativeClass};
pub use star::{
    assoc_residual, gutt_star_product, restrict_to_d, star_from_bidiff, tangentiality_check, tangentiality_witness,
    AssocFailure, AssocReport, StarProduct,
};
