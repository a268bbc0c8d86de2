//! Exact rational scalars, multivariate polynomials, linear forms, and
//! dense rational linear algebra.
//!
//! Everything in this module is immutable after construction and every
//! operation is a pure function, so values can be shared freely between
//! threads.

mod matrix;
mod parse;
mod poly;
mod rational;

pub use matrix::RationalMatrix;
pub use parse::{parse_polynomial, PolyParseError};
pub use poly::{
    monomials_of_degree, reduce_mod_linear, LinearForm, Monomial, PivotRule, Polynomial,
};
pub use rational::{format_rational, parse_rational, RationalParseError};

pub use num::BigInt;
/// Arbitrary-precision rational scalar, always stored reduced with a
/// positive denominator.
pub use num::BigRational as Rational;
