//! Noncommutative rational functions through Fornasini–Marchesini
//! realizations centred at a matrix point.
//!
//! The crate compiles nc rational expressions into realizations centred at a
//! tuple of `s x s` matrices, minimizes them, checks the linearized
//! lost-abbey conditions, and evaluates values, domains, Taylor–Taylor
//! series and difference-differential operators. All algorithms are generic
//! over [`Scalar`]; the aliases below fix the exact rational instance used by
//! the command line tool and the test-suites.

pub mod calculus;
pub mod error;
pub mod expr;
pub mod io;
pub mod linalg;
pub mod point;
pub mod realization;
pub mod sample;
pub mod scalar;
pub mod selftest;
pub mod synthesis;

pub use error::{Error, Result};
pub use expr::{parse, NcExpr};
pub use linalg::{BlockLinearMap, Mat};
pub use point::MatTuple;
pub use realization::FMRealization;
pub use scalar::Scalar;

/// Arbitrary precision rational numbers.
pub type Rat = num_rational::BigRational;
/// Dense rational matrix.
pub type QMat = Mat<Rat>;
/// Linear map on `s x s` rational matrices.
pub type QBlockMap = BlockLinearMap<Rat>;
/// Expression with rational constants.
pub type QExpr = NcExpr<Rat>;
/// Rational evaluation point.
pub type QPoint = MatTuple<Rat>;

/// Realizations over the rationals.
pub type QRealization = FMRealization<Rat>;
