//! Scarf complexes of powers of extremal square-free monomial ideals.
//!
//! The generators of `E_q^r` correspond to the lattice points `N^r_q`
//! ([`lattice`]). A set of generators is a Scarf face when its lcm label is
//! unique; this is decided from labels ([`ideal`]), from half-space geometry
//! ([`scarfgeo`]), and for `r = 3` from an explicit facet and nonface
//! catalog ([`r3`]). [`morse`] builds and checks the acyclic matching whose
//! critical cells are the Scarf faces, and [`bounds`] evaluates the closed
//! betti-number formulas.

pub mod bounds;
pub mod complex;
pub mod error;
pub mod ideal;
pub mod lattice;
pub mod morse;
pub mod r3;
pub mod scarfgeo;

pub use error::{Error, Result};
