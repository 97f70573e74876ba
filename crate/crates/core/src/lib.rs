//! Exact construction and verification of formal Drinfel'd twists for
//! symplectic Lie algebras.
//!
//! The pipeline runs from a symplectic Lie algebra `(g, ω)` through its
//! central extension `h`, the Gutt star product on polynomials on `h*`, its
//! restriction to the hyperplane `u = 1`, and the pull-back along the orbit
//! chart, to a twist `F ∈ U(g)⊗U(g)[[ℏ]]`. A Fedosov-type construction on
//! the Chevalley–Eilenberg complex provides an independent twist with the
//! trivial class, and [`starlab::relative_class`] compares the two order by
//! order. All arithmetic is exact.

#![allow(clippy::needless_range_loop, clippy::result_large_err)]

pub mod catalog;
pub mod drinfeld;
pub mod enveloping;
pub mod error;
pub mod exactalg;
pub mod fedosov;
pub mod io;
pub mod liecore;
pub mod starlab;

pub use error::Error;
