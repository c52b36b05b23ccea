//! Exact calculator for knot Floer homology of Legendrian knots.
//!
//! The crate is organised bottom-up: [`exact_linalg`] supplies exact rational
//! and F₂[U] matrix algebra, [`complexes`] computes homology of bigraded
//! chain complexes, [`heegaard`] works with combinatorial Heegaard diagrams,
//! and [`surgery`] / [`hfk_catalog`] hold the closed-form invariants.

pub mod complexes;
pub mod exact_linalg;
pub mod fixtures;
pub mod heegaard;
pub mod hfk_catalog;
pub mod report;
pub mod surgery;

pub use num::{BigInt, BigRational};
