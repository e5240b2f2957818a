//! Exact scalar types and linear algebra.

mod cyclo;
pub mod expr;
mod field;
mod laurent;
mod matrix;
pub mod mpoly;
mod ratfunc;
mod rational;
pub(crate) mod upoly;

pub use cyclo::Cyclo;
pub use field::Field;
pub use laurent::{LaurentPoly, ParseScalarError};
pub use matrix::{Matrix, SingularMatrix};
pub use ratfunc::{PoleAtZero, RatFunc};
pub use rational::Rational;

/// Gaussian rationals, `i` being a primitive fourth root of unity.
pub type Gaussian = Cyclo<4>;
