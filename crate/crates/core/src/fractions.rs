//! One-sided fractions in the ring of quotients of `K[D]` or `Mat_l(K[D])`.
//!
//! A fraction is a certified pair; nothing is expanded as a series in
//! `D^-1`. Minimal decompositions are unique up to a unit, and the unit is
//! fixed by normalizing the denominator (monic for operators, Hermite form
//! for matrices), so minimal fractions with equal values are structurally
//! equal.

use crate::error::{Error, Result};
use crate::ring::OreRing;
use crate::side::Side;

/// `num * den^-1` (right) or `den^-1 * num` (left), with `den` regular.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorFraction<R> {
    pub num: R,
    pub den: R,
    pub side: Side,
    /// Set only by [`make_minimal`]: `num` and `den` are coprime on `side`.
    pub minimal: bool,
}

/// A minimal decomposition together with the evidence for it.
///
/// `gcd_stripped` is the common factor removed from the input, and `u`, `v`
/// are Bezout cofactors proving coprimality of the result:
/// `u*num + v*den = 1` (right) or `num*u + den*v = 1` (left).
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalDecomposition<R> {
    pub fraction: OperatorFraction<R>,
    pub gcd_stripped: R,
    pub u: R,
    pub v: R,
}

/// Output of [`theorem31_q`]: `q` with `a = a1*q`, `b = b1*q` (right) or
/// `a = q*a1`, `b = q*b1` (left), already checked.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonFactor<R> {
    pub q: R,
    pub u: R,
    pub v: R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractionOp {
    Add,
    Mul,
}

impl<R: OreRing> OperatorFraction<R> {
    pub fn new(num: R, den: R, side: Side) -> Result<Self> {
        num.check_compatible(&den)?;
        if !den.is_regular() {
            return Err(Error::precondition("fraction denominator must be regular"));
        }
        Ok(OperatorFraction {
            num,
            den,
            side,
            minimal: false,
        })
    }

    /// `a` as the fraction `a * 1^-1`.
    pub fn integral(a: R, side: Side) -> Self {
        let den = a.one_like();
        OperatorFraction {
            num: a,
            den,
            side,
            minimal: false,
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        self.num.check_compatible(&other.num)
    }
}

pub fn is_coprime<R: OreRing>(a: &R, b: &R, side: Side) -> Result<bool> {
    Ok(R::gcd(a, b, side)?.d.is_unit())
}

/// Inverse of a unit.
fn unit_inverse<R: OreRing>(w: &R) -> Result<R> {
    R::exact_quotient(&w.one_like(), w, Side::Left)
        .ok_or_else(|| Error::Inconsistent(format!("{w} is not a unit")))
}

/// Strips the gcd on the fraction's side and normalizes the denominator.
pub fn make_minimal_certified<R: OreRing>(f: &OperatorFraction<R>) -> Result<MinimalDecomposition<R>> {
    if !f.den.is_regular() {
        return Err(Error::precondition("fraction denominator must be regular"));
    }
    let g = R::gcd(&f.num, &f.den, f.side)?;
    let (num, den, u, v) = match f.side {
        Side::Right => {
            // a = a1*d, b = b1*d and u*a1 + v*b1 = 1; normalize with b1*w
            let (den, w) = g.b1.normalize_unit(Side::Right);
            let num = g.a1.times(&w);
            let w_inv = unit_inverse(&w)?;
            (num, den, w_inv.times(&g.u), w_inv.times(&g.v))
        }
        Side::Left => {
            let (den, w) = g.b1.normalize_unit(Side::Left);
            let num = w.times(&g.a1);
            let w_inv = unit_inverse(&w)?;
            (num, den, g.u.times(&w_inv), g.v.times(&w_inv))
        }
    };
    Ok(MinimalDecomposition {
        fraction: OperatorFraction {
            num,
            den,
            side: f.side,
            minimal: true,
        },
        gcd_stripped: g.d,
        u,
        v,
    })
}

pub fn make_minimal<R: OreRing>(f: &OperatorFraction<R>) -> Result<OperatorFraction<R>> {
    Ok(make_minimal_certified(f)?.fraction)
}

/// Recovers the common factor between a decomposition and a minimal one of
/// the same value, following the Bezout construction `q = u*a + v*b`.
pub fn theorem31_q<R: OreRing>(
    f_raw: &OperatorFraction<R>,
    f_min: &OperatorFraction<R>,
) -> Result<CommonFactor<R>> {
    f_raw.check_compatible(f_min)?;
    if f_raw.side != f_min.side {
        return Err(Error::precondition("both decompositions must be on the same side"));
    }
    if !f_raw.den.is_regular() || !f_min.den.is_regular() {
        return Err(Error::precondition("fraction denominators must be regular"));
    }
    let side = f_raw.side;
    let (a, b) = (&f_raw.num, &f_raw.den);
    let (a1, b1) = (&f_min.num, &f_min.den);
    let g = R::gcd(a1, b1, side)?;
    if !g.d.is_unit() {
        return Err(Error::precondition("reference decomposition is not coprime"));
    }
    let d_inv = unit_inverse(&g.d)?;
    let (q, u, v) = match side {
        Side::Right => {
            let u = d_inv.times(&g.u);
            let v = d_inv.times(&g.v);
            (u.times(a).plus(&v.times(b)), u, v)
        }
        Side::Left => {
            let u = g.u.times(&d_inv);
            let v = g.v.times(&d_inv);
            (a.times(&u).plus(&b.times(&v)), u, v)
        }
    };
    let holds = match side {
        Side::Right => a1.times(&q) == *a && b1.times(&q) == *b,
        Side::Left => q.times(a1) == *a && q.times(b1) == *b,
    };
    if !holds {
        return Err(Error::ValueMismatch);
    }
    if !q.is_regular() {
        return Err(Error::Inconsistent("common factor is not regular".into()));
    }
    Ok(CommonFactor { q, u, v })
}

/// Rewrites the fraction on the other side and minimizes it.
pub fn convert_side<R: OreRing>(f: &OperatorFraction<R>) -> Result<OperatorFraction<R>> {
    if !f.den.is_regular() {
        return Err(Error::precondition("fraction denominator must be regular"));
    }
    let converted = match f.side {
        Side::Right => {
            // a*b^-1 = b'^-1*a'  <=>  a'*b = b'*a
            let (a1, b1) = R::ore_witness(&f.num, &f.den, Side::Left)?;
            OperatorFraction::new(a1, b1, Side::Left)?
        }
        Side::Left => {
            // b^-1*a = a'*b'^-1  <=>  a*b' = b*a'
            let (a1, b1) = R::ore_witness(&f.num, &f.den, Side::Right)?;
            OperatorFraction::new(a1, b1, Side::Right)?
        }
    };
    make_minimal(&converted)
}

fn to_side<R: OreRing>(f: &OperatorFraction<R>, side: Side) -> Result<OperatorFraction<R>> {
    if f.side == side {
        Ok(f.clone())
    } else {
        convert_side(f)
    }
}

/// Value equality through a common denominator (the lcm of the two
/// denominators on the fraction side). `g` is converted to `f`'s side first
/// if needed.
pub fn fraction_equal<R: OreRing>(f: &OperatorFraction<R>, g: &OperatorFraction<R>) -> Result<bool> {
    f.check_compatible(g)?;
    let g = to_side(g, f.side)?;
    if f.den == g.den {
        return Ok(f.num == g.num);
    }
    let l = R::lcm(&f.den, &g.den, f.side)?;
    // right: m = b*b1 = d*a1, so a*b^-1 = (a*b1)*m^-1 and c*d^-1 = (c*a1)*m^-1
    Ok(match f.side {
        Side::Right => f.num.times(&l.b1) == g.num.times(&l.a1),
        Side::Left => l.b1.times(&f.num) == l.a1.times(&g.num),
    })
}

/// Sum or product, returned minimal. The result is on `f`'s side.
pub fn fraction_arith<R: OreRing>(
    f: &OperatorFraction<R>,
    g: &OperatorFraction<R>,
    op: FractionOp,
) -> Result<OperatorFraction<R>> {
    f.check_compatible(g)?;
    let g = to_side(g, f.side)?;
    let (a, b, c, d) = (&f.num, &f.den, &g.num, &g.den);
    let raw = match (op, f.side) {
        (FractionOp::Add, Side::Right) => {
            let l = R::lcm(b, d, Side::Right)?;
            OperatorFraction::new(a.times(&l.b1).plus(&c.times(&l.a1)), l.m, Side::Right)?
        }
        (FractionOp::Add, Side::Left) => {
            let l = R::lcm(b, d, Side::Left)?;
            OperatorFraction::new(l.b1.times(a).plus(&l.a1.times(c)), l.m, Side::Left)?
        }
        (FractionOp::Mul, Side::Right) => {
            // b^-1*c = c'*b'^-1 with b*c' = c*b'
            let (c1, b1) = R::ore_witness(c, b, Side::Right)?;
            OperatorFraction::new(a.times(&c1), d.times(&b1), Side::Right)?
        }
        (FractionOp::Mul, Side::Left) => {
            // a*d^-1 = d'^-1*a' with a'*d = d'*a
            let (a1, d1) = R::ore_witness(a, d, Side::Left)?;
            OperatorFraction::new(a1.times(c), d1.times(b), Side::Left)?
        }
    };
    make_minimal(&raw)
}

/// Denominator degrees of the minimal left and right decompositions of the
/// same value, as `(left, right)`. They always agree.
pub fn degree_invariant<R: OreRing>(f: &OperatorFraction<R>) -> Result<(usize, usize)> {
    let (left, right) = match f.side {
        Side::Left => (make_minimal(f)?, convert_side(f)?),
        Side::Right => (convert_side(f)?, make_minimal(f)?),
    };
    let deg = |h: &OperatorFraction<R>| {
        h.den
            .degree()
            .ok_or_else(|| Error::Inconsistent("singular denominator after minimization".into()))
    };
    Ok((deg(&left)?, deg(&right)?))
}
