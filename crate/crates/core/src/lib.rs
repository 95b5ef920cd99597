//! Exact truncated combinatorial framed Kontsevich integral.
//!
//! The crate evaluates links presented as q-tangle words into sums of chord
//! diagrams with exact rational coefficients, and checks the identities that
//! express products of linking numbers and framings as sums of coefficients.

pub mod algebra;
pub mod diagrams;
pub mod error;
pub mod invariants;
pub mod qtangle;
pub mod rational;
pub mod suite;

pub use diagrams::{ChordDiagram, FourTRelator, TypeMatrix};
pub use error::{Error, Result};
pub use rational::Rational;
