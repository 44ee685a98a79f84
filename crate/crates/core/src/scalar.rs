//! Exact coefficient fields.
//!
//! Everything above this module is generic over [`Scalar`], a field of
//! characteristic zero with exact arithmetic. Gcd computations and zero tests
//! assume exact equality, so floating point types are deliberately not
//! implementors.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{NumAssign, Signed};

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + NumAssign + Signed + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Parses an unsigned decimal integer literal.
    fn from_decimal(digits: &str) -> Option<Self>;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// True when the value is an integer (denominator one). Used by the
    /// printer to decide whether a coefficient needs grouping.
    fn is_integral(&self) -> bool;

    /// A faster monic gcd for nonzero polynomials (ascending coefficients),
    /// when the field has one.
    fn poly_gcd(_a: &[Self], _b: &[Self]) -> Option<Vec<Self>> {
        None
    }

    /// A faster product of nonzero polynomials, when the field has one.
    fn poly_mul(_a: &[Self], _b: &[Self]) -> Option<Vec<Self>> {
        None
    }

    /// A faster `(quotient, remainder)` for `deg a >= deg b`, `b` nonzero.
    fn poly_div_rem(_a: &[Self], _b: &[Self]) -> Option<(Vec<Self>, Vec<Self>)> {
        None
    }
}

/// Below this length the generic rational loops are cheaper.
const KERNEL_THRESHOLD: usize = 2;

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_decimal(digits: &str) -> Option<Self> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        BigInt::from_str(digits).ok().map(BigRational::from_integer)
    }

    fn is_integral(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn poly_gcd(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        Some(crate::qpoly::rational_poly_gcd(a, b))
    }

    fn poly_mul(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        (a.len().min(b.len()) >= KERNEL_THRESHOLD).then(|| crate::qpoly::mul(a, b))
    }

    fn poly_div_rem(a: &[Self], b: &[Self]) -> Option<(Vec<Self>, Vec<Self>)> {
        (b.len() >= KERNEL_THRESHOLD).then(|| crate::qpoly::div_rem(a, b))
    }
}

macro_rules! machine_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_i64(n: i64) -> Self {
                Ratio::from_integer(<$int>::from(n))
            }

            fn from_decimal(digits: &str) -> Option<Self> {
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                digits.parse::<$int>().ok().map(Ratio::from_integer)
            }

            fn is_integral(&self) -> bool {
                Ratio::is_integer(self)
            }
        }
    };
}

// Overflow panics; only suitable for small computations.
machine_ratio!(i64);
machine_ratio!(i128);
