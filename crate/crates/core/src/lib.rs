//! Exact computations with central hyperplane arrangements: intersection
//! lattices, characteristic polynomials, Orlik-Solomon algebras, resonance
//! varieties over Q and F_p, multinets and pencils of curves, and lower
//! central series / Chen ranks of the holonomy Lie algebra.

pub mod arith;
pub mod arrangement;
pub mod cli;
pub mod error;
pub mod lie;
pub mod os;
pub mod par;
pub mod pencils;
pub mod resonance;

pub use error::{Error, Result};
