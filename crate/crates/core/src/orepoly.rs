//! The ring `K[D]` of differential operators over `K = Q(x)`.
//!
//! Multiplication follows the commutation rule `D*f = f*D + f'`. The ring is
//! a left and right Euclidean domain; gcds, lcms and Ore witnesses are all
//! produced by the extended Euclidean algorithm on the appropriate side.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::ring::{Bezout, Lcm, OreRing};
use crate::scalar::Scalar;
use crate::side::Side;

/// `c_0 + c_1 D + ... + c_n D^n` with nonzero `c_n`; zero is the empty
/// sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct OrePoly<F> {
    coeffs: Vec<RatFunc<F>>,
}

/// Result of [`divide`].
///
/// `Side::Left` means `a = quotient*b + remainder`, `Side::Right` means
/// `a = b*quotient + remainder`. In both cases `order(remainder) < order(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult<F> {
    pub quotient: OrePoly<F>,
    pub remainder: OrePoly<F>,
    pub side: Side,
}

/// Extended gcd certificate for scalar operators.
pub type BezoutCertificate<F> = Bezout<OrePoly<F>>;

/// Lcm certificate for scalar operators.
pub type LcmCertificate<F> = Lcm<OrePoly<F>>;

impl<F: Scalar> OrePoly<F> {
    pub fn new(mut coeffs: Vec<RatFunc<F>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OrePoly { coeffs }
    }

    pub fn zero() -> Self {
        OrePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    /// The derivation `D` itself.
    pub fn d() -> Self {
        Self::monomial(RatFunc::one(), 1)
    }

    pub fn x() -> Self {
        Self::from_ratfunc(RatFunc::x())
    }

    pub fn from_ratfunc(c: RatFunc<F>) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_ratfunc(RatFunc::from_i64(n))
    }

    pub fn constant(c: F) -> Self {
        Self::from_ratfunc(RatFunc::constant(c))
    }

    /// `c * D^k`.
    pub fn monomial(c: RatFunc<F>, k: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[RatFunc<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc<F> {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Order in `D`; `None` stands for the order of zero, below every integer.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Units of `K[D]` are the nonzero elements of `K`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading_coeff(&self) -> Option<&RatFunc<F>> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// `c * self`, computed coefficientwise.
    pub fn left_scale(&self, c: &RatFunc<F>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OrePoly {
            coeffs: self.coeffs.iter().map(|a| c * a).collect(),
        }
    }

    /// `self * c`; the leading coefficient becomes `lc * c`.
    pub fn right_scale(&self, c: &RatFunc<F>) -> Self {
        self * &Self::from_ratfunc(c.clone())
    }

    /// Multiplication by a field constant, which is central.
    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        OrePoly {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `D * self`.
    pub fn d_times(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![RatFunc::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] = &out[k] + &c.derive();
            out[k + 1] = &out[k + 1] + c;
        }
        Self::new(out)
    }

    /// Applies the operator to a rational function: `sum c_i * y^(i)`.
    pub fn apply(&self, y: &RatFunc<F>) -> RatFunc<F> {
        let mut acc = RatFunc::zero();
        let mut deriv = y.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                deriv = deriv.derive();
            }
            if !c.is_zero() && !deriv.is_zero() {
                acc = &acc + &(c * &deriv);
            }
        }
        acc
    }

    /// Formal adjoint: `D* = -D`, `f* = f`, extended anti-multiplicatively.
    pub fn adjoint(&self) -> Self {
        // sum (-D)^i f_i evaluated by Horner's rule
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(-&acc.d_times()) + &Self::from_ratfunc(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by the inverse leading coefficient on the given side so the
    /// result is monic. Returns the scaling factor used.
    fn make_monic(&self, side: Side) -> (Self, RatFunc<F>) {
        let lc = self.leading_coeff().expect("nonzero operator");
        let c = lc.inv().expect("nonzero leading coefficient");
        let scaled = match side {
            Side::Left => self.left_scale(&c),
            Side::Right => self.right_scale(&c),
        };
        (scaled, c)
    }
}

impl<F: Scalar> Add for &OrePoly<F> {
    type Output = OrePoly<F>;
    fn add(self, rhs: &OrePoly<F>) -> OrePoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        OrePoly::new(coeffs)
    }
}

impl<F: Scalar> Sub for &OrePoly<F> {
    type Output = OrePoly<F>;
    fn sub(self, rhs: &OrePoly<F>) -> OrePoly<F> {
        self + &(-rhs)
    }
}

impl<F: Scalar> Neg for &OrePoly<F> {
    type Output = OrePoly<F>;
    fn neg(self) -> OrePoly<F> {
        OrePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<F: Scalar> Mul for &OrePoly<F> {
    type Output = OrePoly<F>;
    /// `sum_i a_i * (D^i * b)`, with `D^i * b` built by repeated commutation.
    fn mul(self, rhs: &OrePoly<F>) -> OrePoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return OrePoly::zero();
        }
        if rhs.coeffs.len() == 1 && rhs.coeffs[0].as_constant().is_some() {
            return self.scale(&rhs.coeffs[0].as_constant().unwrap());
        }
        let mut acc = OrePoly::zero();
        let mut shifted = rhs.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = shifted.d_times();
            }
            if !a.is_zero() {
                acc = &acc + &shifted.left_scale(a);
            }
        }
        acc
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Scalar> $tr for OrePoly<F> {
            type Output = OrePoly<F>;
            fn $m(self, rhs: OrePoly<F>) -> OrePoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Scalar> Neg for OrePoly<F> {
    type Output = OrePoly<F>;
    fn neg(self) -> OrePoly<F> {
        -&self
    }
}

impl<F: Scalar> From<RatFunc<F>> for OrePoly<F> {
    fn from(c: RatFunc<F>) -> Self {
        OrePoly::from_ratfunc(c)
    }
}

/// Euclidean division on the given side.
///
/// Leading terms are eliminated with a commutative division of leading
/// coefficients, since `D^k * b` and `b * D^k` both have leading coefficient
/// `lc(b)`.
pub fn divide<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, side: Side) -> Result<DivisionResult<F>> {
    let bo = b.order().ok_or(Error::DivisionByZero)?;
    let lb_inv = b.coeffs[bo].inv()?;
    let mut rem = a.clone();
    let mut quot = vec![RatFunc::zero(); a.coeffs.len().saturating_sub(bo)];
    while let Some(ro) = rem.order() {
        if ro < bo {
            break;
        }
        let k = ro - bo;
        let c = &rem.coeffs[ro] * &lb_inv;
        let term = OrePoly::monomial(c.clone(), k);
        let sub = match side {
            Side::Left => &term * b,
            Side::Right => b * &term,
        };
        rem = &rem - &sub;
        debug_assert!(rem.order() < Some(ro));
        quot[k] = &quot[k] + &c;
    }
    Ok(DivisionResult {
        quotient: OrePoly::new(quot),
        remainder: rem,
        side,
    })
}

/// Quotient of a division that must be exact; a nonzero remainder is an
/// internal inconsistency.
pub(crate) fn exact_quotient<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, side: Side) -> Result<OrePoly<F>> {
    let div = divide(a, b, side)?;
    if !div.remainder.is_zero() {
        return Err(Error::Inconsistent(format!(
            "expected exact {side} division of {a} by {b}"
        )));
    }
    Ok(div.quotient)
}

/// Quotient if `b` divides `a` exactly on the given side.
pub fn try_exact_quotient<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, side: Side) -> Option<OrePoly<F>> {
    let div = divide(a, b, side).ok()?;
    div.remainder.is_zero().then_some(div.quotient)
}

/// Euclidean remainder sequence with cofactor rows.
///
/// For `Side::Right` every remainder is `s*a + t*b` (left combinations) and
/// the returned pair of rows are the gcd row and the annihilating row.
struct EuclidRows<F> {
    gcd: OrePoly<F>,
    gcd_row: (OrePoly<F>, OrePoly<F>),
    zero_row: (OrePoly<F>, OrePoly<F>),
}

fn euclid_rows<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, side: Side) -> Result<EuclidRows<F>> {
    // right gcd uses quotients on the left and vice versa
    let div_side = side.opposite();
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut row0 = (OrePoly::one(), OrePoly::zero());
    let mut row1 = (OrePoly::zero(), OrePoly::one());
    while !r1.is_zero() {
        let DivisionResult { quotient: q, remainder, .. } = divide(&r0, &r1, div_side)?;
        let row2 = match side {
            Side::Right => (&row0.0 - &(&q * &row1.0), &row0.1 - &(&q * &row1.1)),
            Side::Left => (&row0.0 - &(&row1.0 * &q), &row0.1 - &(&row1.1 * &q)),
        };
        r0 = std::mem::replace(&mut r1, remainder);
        row0 = std::mem::replace(&mut row1, row2);
    }
    Ok(EuclidRows {
        gcd: r0,
        gcd_row: row0,
        zero_row: row1,
    })
}

/// Extended gcd with Bezout cofactors and the cofactors of `a`, `b` over `d`.
pub fn gcd_extended<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, side: Side) -> Result<BezoutCertificate<F>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::DegenerateInput("gcd of two zero operators"));
    }
    let rows = euclid_rows(a, b, side)?;
    // the scaling acts on the same side as the cofactors
    let (d, c) = rows.gcd.make_monic(side.opposite());
    let (u, v) = match side {
        Side::Right => (rows.gcd_row.0.left_scale(&c), rows.gcd_row.1.left_scale(&c)),
        Side::Left => (rows.gcd_row.0.right_scale(&c), rows.gcd_row.1.right_scale(&c)),
    };
    let div_side = side.opposite();
    let a1 = exact_quotient(a, &d, div_side)?;
    let b1 = exact_quotient(b, &d, div_side)?;
    Ok(BezoutCertificate { d, u, v, a1, b1, side })
}

/// Least common multiple with its cofactors, normalized monic.
///
/// The final row of the Euclidean algorithm on the opposite side annihilates
/// `(a, b)`; it yields the lcm, which is verified before returning.
pub fn lcm<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, side: Side) -> Result<LcmCertificate<F>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::DegenerateInput("lcm with a zero operator"));
    }
    let rows = euclid_rows(a, b, side.opposite())?;
    let (s, t) = rows.zero_row;
    let cert = match side {
        Side::Right => {
            // a*s + b*t = 0
            let m = a * &s;
            let (m, c) = m.make_monic(Side::Right);
            LcmCertificate {
                m,
                b1: s.right_scale(&c),
                a1: (-&t).right_scale(&c),
                side,
            }
        }
        Side::Left => {
            // s*a + t*b = 0
            let m = &s * a;
            let (m, c) = m.make_monic(Side::Left);
            LcmCertificate {
                m,
                b1: s.left_scale(&c),
                a1: (-&t).left_scale(&c),
                side,
            }
        }
    };
    let (via_a, via_b) = match side {
        Side::Right => (a * &cert.b1, b * &cert.a1),
        Side::Left => (&cert.b1 * a, &cert.a1 * b),
    };
    if via_a != cert.m || via_b != cert.m {
        return Err(Error::Inconsistent("lcm certificate does not verify".into()));
    }
    Ok(cert)
}

/// Ore witness: `b*a1 = a*b1` with `b1 != 0`.
pub fn ore_witness<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<(OrePoly<F>, OrePoly<F>)> {
    if b.is_zero() {
        return Err(Error::precondition("Ore witness needs a nonzero denominator"));
    }
    if a.is_zero() {
        return Ok((OrePoly::zero(), OrePoly::one()));
    }
    let cert = lcm(a, b, Side::Right)?;
    Ok((cert.a1, cert.b1))
}

/// Left Ore witness: `a1*b = b1*a` with `b1 != 0`.
pub fn left_ore_witness<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<(OrePoly<F>, OrePoly<F>)> {
    if b.is_zero() {
        return Err(Error::precondition("Ore witness needs a nonzero denominator"));
    }
    if a.is_zero() {
        return Ok((OrePoly::zero(), OrePoly::one()));
    }
    let cert = lcm(a, b, Side::Left)?;
    Ok((cert.a1, cert.b1))
}

impl<F: Scalar> OrePoly<F> {
    fn write_term(c: &RatFunc<F>, k: usize, f: &mut String) {
        let power = if k == 1 { "D".to_string() } else { format!("D^{k}") };
        if k == 0 {
            f.push_str(&c.to_string());
        } else if c.is_one() {
            f.push_str(&power);
        } else if (-c).is_one() {
            f.push('-');
            f.push_str(&power);
        } else if c.is_atomic() {
            f.push_str(&format!("{c}*{power}"));
        } else {
            f.push_str(&format!("({c})*{power}"));
        }
    }
}

impl<F: Scalar> fmt::Display for OrePoly<F> {
    /// Canonical form `sum c_i(x)*D^i`, highest order first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut term = String::new();
            Self::write_term(c, k, &mut term);
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        f.write_str(&out)
    }
}

/// Signed integers in the order 0, 1, -1, 2, -2, ...
pub(crate) fn interleaved_integer(index: usize) -> i64 {
    let k = index.div_ceil(2) as i64;
    if index % 2 == 1 {
        k
    } else {
        -k
    }
}

impl<F: Scalar> OreRing for OrePoly<F> {
    type Scalar = F;

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn constant_like(&self, c: F) -> Self {
        Self::constant(c)
    }

    fn is_zero(&self) -> bool {
        OrePoly::is_zero(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negate(&self) -> Self {
        -self
    }

    fn scale(&self, c: &F) -> Self {
        OrePoly::scale(self, c)
    }

    fn check_compatible(&self, _other: &Self) -> Result<()> {
        Ok(())
    }

    /// `K[D]` is a domain: every nonzero element is regular.
    fn is_regular(&self) -> bool {
        !OrePoly::is_zero(self)
    }

    fn is_unit(&self) -> bool {
        OrePoly::is_unit(self)
    }

    fn degree(&self) -> Option<usize> {
        self.order()
    }

    fn adjoint(&self) -> Self {
        OrePoly::adjoint(self)
    }

    fn gcd(a: &Self, b: &Self, side: Side) -> Result<Bezout<Self>> {
        gcd_extended(a, b, side)
    }

    fn lcm(a: &Self, b: &Self, side: Side) -> Result<Lcm<Self>> {
        lcm(a, b, side)
    }

    fn ore_witness(a: &Self, b: &Self, side: Side) -> Result<(Self, Self)> {
        match side {
            Side::Right => ore_witness(a, b),
            Side::Left => left_ore_witness(a, b),
        }
    }

    fn exact_quotient(c: &Self, a: &Self, side: Side) -> Option<Self> {
        try_exact_quotient(c, a, side)
    }

    fn normalize_unit(&self, side: Side) -> (Self, Self) {
        let (scaled, c) = self.make_monic(side);
        (scaled, OrePoly::from_ratfunc(c))
    }

    /// Integer constants first, then random operators of order at most one.
    fn search_candidate<G: Rng>(&self, index: usize, rng: &mut G) -> Self {
        if index < 64 {
            return OrePoly::from_i64(interleaved_integer(index));
        }
        let coeff = |rng: &mut G| {
            let c0 = F::from_i64(rng.gen_range(-3..=3));
            let c1 = F::from_i64(rng.gen_range(-3..=3));
            RatFunc::from_poly(crate::poly::Poly::new(vec![c0, c1]))
        };
        OrePoly::new(vec![coeff(rng), coeff(rng)])
    }
}
