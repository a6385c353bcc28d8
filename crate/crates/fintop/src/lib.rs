//! A calculus for finite topological spaces.
//!
//! Finite topologies are in bijection with preorders; this crate exploits
//! that to provide exact, exhaustive implementations of the categorical
//! primitives (sums, products, subspaces, quotients, initial and final
//! topologies), prime-factor decompositions, the pinch constructions
//! `tri`/`dtri`, iterated attachment towers, hull-membership oracles for
//! coreflective and (bi/epi)reflective families, bounded closure saturation,
//! and a symbolic fragment for finite-or-cofinite sets over the naturals.
//!
//! The `cli` module exposes the same machinery behind a small expression
//! language; see the crate examples for library-level entry points.

pub mod canon;
pub mod classes;
pub mod constructions;
pub mod error;
pub mod map;
pub mod omega;
pub mod prime;
pub mod space;

pub mod cli;
pub mod expr;
pub mod suites;

pub use error::{Error, Result};
pub use space::{FinSpace, Mask, TopProperty};
