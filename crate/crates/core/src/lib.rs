//! Exact computer algebra for differential operators over `Q(x)`.
//!
//! The core types are generic over an exact [`Scalar`] field; the aliases at
//! the crate root fix it to arbitrary-precision rationals.

pub mod error;
pub mod fractions;
pub mod linalg;
pub mod modules;
pub mod orematrix;
pub mod orepoly;
pub mod parse;
pub mod poly;
mod qpoly;
pub mod random;
pub mod ring;
pub mod ratfunc;
pub mod regularize;
pub mod scalar;
pub mod side;
pub mod suites;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use side::Side;

/// Arbitrary-precision rationals, the default coefficient field.
pub type Rational = num_rational::BigRational;

pub type Polynomial = poly::Poly<Rational>;
pub type RationalFunction = ratfunc::RatFunc<Rational>;
pub type Operator = orepoly::OrePoly<Rational>;
pub type OperatorMatrix = orematrix::OreMatrix<Rational>;
pub type Fraction = fractions::OperatorFraction<Operator>;
