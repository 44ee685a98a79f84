//! The interface shared by `K[D]` and `Mat_l(K[D])`.
//!
//! Fractions and module witnesses are written once against [`OreRing`]; the
//! scalar ring answers with the Euclidean algorithm and the matrix ring with
//! Hermite reductions.

use std::fmt;

use rand::Rng;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::side::Side;

/// Extended gcd certificate.
///
/// Right side: `d = u*a + v*b`, `a = a1*d`, `b = b1*d`.
/// Left side: `d = a*u + b*v`, `a = d*a1`, `b = d*b1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bezout<R> {
    pub d: R,
    pub u: R,
    pub v: R,
    pub a1: R,
    pub b1: R,
    pub side: Side,
}

/// Lcm certificate.
///
/// Right side: `m = a*b1 = b*a1` generates `aR ∩ bR`.
/// Left side: `m = b1*a = a1*b` generates `Ra ∩ Rb`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lcm<R> {
    pub m: R,
    pub a1: R,
    pub b1: R,
    pub side: Side,
}

pub trait OreRing: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Sized {
    type Scalar: Scalar;

    /// Zero of the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// The central element `c * 1`.
    fn constant_like(&self, c: Self::Scalar) -> Self;

    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, c: &Self::Scalar) -> Self;

    /// Errors when the two operands cannot be combined.
    fn check_compatible(&self, other: &Self) -> Result<()>;

    fn is_regular(&self) -> bool;
    fn is_unit(&self) -> bool;

    /// Order for operators, degree of the Dieudonné determinant for matrices;
    /// `None` when the element is not regular.
    fn degree(&self) -> Option<usize>;

    /// The formal adjoint anti-involution.
    fn adjoint(&self) -> Self;

    fn gcd(a: &Self, b: &Self, side: Side) -> Result<Bezout<Self>>;
    fn lcm(a: &Self, b: &Self, side: Side) -> Result<Lcm<Self>>;

    /// Ore witness for a regular `b`.
    ///
    /// Right: `b*a1 = a*b1`. Left: `a1*b = b1*a`. In both cases `b1` is
    /// regular.
    fn ore_witness(a: &Self, b: &Self, side: Side) -> Result<(Self, Self)>;

    /// Left: `p` with `p*a = c`. Right: `p` with `a*p = c`. `None` when no
    /// exact quotient exists.
    fn exact_quotient(c: &Self, a: &Self, side: Side) -> Option<Self>;

    /// Canonical representative of `self` up to a unit on the given side.
    ///
    /// Left: returns `(w*self, w)`; right: returns `(self*w, w)`, with `w` a
    /// unit. Regular inputs only.
    fn normalize_unit(&self, side: Side) -> (Self, Self);

    /// The `index`-th candidate of the regularization search.
    fn search_candidate<G: Rng>(&self, index: usize, rng: &mut G) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}
