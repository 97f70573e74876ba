//! Drinfel'd twists: the axioms, the classical limit, gauge equivalence,
//! twisted products on module algebras, and the construction of a twist from
//! a symplectic Lie algebra through the Gutt product of its central extension.

mod action;
mod build;
mod chart;
mod gauge;
mod text;
mod twist;

pub use action::{star_from_twist, star_from_twist_with_jet, twisted_product, LieAction, TwistedProduct};
pub(crate) use action::default_star_jet;
pub use build::{build_drinfeld_twist, build_drinfeld_twist_with_jet};
pub use chart::{invert_chart, jacobian_series, left_invariant_fields, orbit_chart};
pub use gauge::{gauge_transform, twist_equivalence_solve, Equivalence, GaugeElement};
pub use text::{parse_twist_text, tensor_to_text, twist_to_text};
pub use twist::{classical_limit, twist_axiom_check, Twist, TwistAxiomReport};
