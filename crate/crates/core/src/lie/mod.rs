//! Holonomy Lie algebras, lower central series and Chen ranks, minimal free
//! resolutions, and the formulas relating them to resonance.

pub mod formulas;
pub mod free;
pub mod holonomy;
pub mod resolution;
