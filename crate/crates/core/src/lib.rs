//! Exact verification machinery for finite-dimensional Poisson algebras.
//!
//! Everything here works over exact fields: the rationals, cyclotomic
//! extensions and rational functions in one variable `t`. Degenerations are
//! certified by computing a limit at `t = 0`, non-degenerations by closed
//! condition sets and invariant inequalities.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod arith;
pub mod catalog;
pub mod cocycle;
pub mod degeneration;
pub mod graph;
pub mod invariants;
pub mod separating;

pub use algebra::{BilinearPair, Identity, IdentityReport, StructureConstants, Symmetry};
pub use arith::{Cyclo, Field, LaurentPoly, Matrix, RatFunc, Rational};
