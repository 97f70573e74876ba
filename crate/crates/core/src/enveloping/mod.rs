//! The universal enveloping algebra in Poincaré–Birkhoff–Witt normal form.
//!
//! [`Enveloping`] is a context object for one Lie algebra at one truncation
//! order. It realizes either the ℏ-deformed algebra
//! `U_ℏ(g) = T(g)[[ℏ]]/⟨x⊗y − y⊗x − ℏ[x,y]⟩` or the ordinary `U(g)[[ℏ]]`
//! (where ℏ is an inert formal parameter). Straightening is memoized in the
//! context; elements themselves are plain immutable values.

mod gutt;
mod pbw;
mod tensor;

pub use gutt::coadjoint_derivation;
pub use pbw::{Enveloping, Monomial, PBWElement, Strategy};
pub use tensor::{TensorSquareU, UTensor};
