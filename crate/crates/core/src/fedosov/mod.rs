//! Fedosov construction over the Chevalley–Eilenberg complex of a symplectic
//! Lie algebra, producing an invariant star product whose class is fixed by a
//! prescribed normalization series.

mod recursion;
mod theorem;
mod weyl;

pub use recursion::{fedosov_recursion, fedosov_recursion_with_cap, fedosov_star, FedosovData, Normalization};
pub use theorem::{main_theorem_check, main_theorem_check_with, weyl_to_text, TheoremVerdict};
pub use weyl::{delta, delta_inv, weyl_moyal, MoyalKernel, WeylElement, WeylKey};
