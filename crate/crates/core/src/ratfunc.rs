//! The differential field `Q(x)` with derivation `d/dx`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A rational function in lowest terms.
///
/// Invariants: the denominator is monic, numerator and denominator are
/// coprime, and zero is stored as `0/1`. Equality is therefore structural.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Scalar> RatFunc<F> {
    /// Builds `num/den` in canonical form.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = F::one() / lc;
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Skips the gcd; the caller guarantees coprimality.
    fn from_coprime(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = F::one() / lc;
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        RatFunc { num, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a field constant, if it is one.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coprime(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// `d/dx` by the quotient rule.
    pub fn derive(&self) -> Self {
        if self.num.is_constant() && self.den.is_one() {
            return Self::zero();
        }
        let dn = self.num.derivative();
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative();
        Self::canonical(
            &(&dn * &self.den) - &(&self.num * &dd),
            &self.den * &self.den,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::from_coprime(self.num.pow(e), self.den.pow(e))
    }

    /// Splits off the polynomial part: `self = poly + proper`.
    pub fn split_polynomial(&self) -> (Poly<F>, Self) {
        let (q, r) = self.num.div_rem(&self.den);
        (q, Self::from_coprime(r, self.den.clone()))
    }
}

impl<F: Scalar> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            // Coprime denominators cannot cancel against the new numerator.
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::from_coprime(num, &self.den * &rhs.den);
        }
        let left = self.den.exact_div(&g);
        let right = rhs.den.exact_div(&g);
        let num = &(&self.num * &right) + &(&rhs.num * &left);
        RatFunc::canonical(num, &(&left * &right) * &g)
    }
}

impl<F: Scalar> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<F: Scalar> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatFunc::from_coprime(num, den)
    }
}

impl<F: Scalar> Div for &RatFunc<F> {
    type Output = RatFunc<F>;
    /// Panics on division by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.checked_div(rhs).expect("rational function division by zero")
    }
}

impl<F: Scalar> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Scalar> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl<F: Scalar> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

impl<F: Scalar> From<Poly<F>> for RatFunc<F> {
    fn from(p: Poly<F>) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<F: Scalar> RatFunc<F> {
    /// True when the printed form is a single signed product, so it can be
    /// followed by `*D^k` without parentheses.
    pub(crate) fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl<F: Scalar> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let single = |p: &Poly<F>| {
            p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
                && p.leading_coeff().is_some_and(|c| c.is_one())
        };
        if single(&self.num) || self.num.is_constant() && !self.num.leading_coeff().unwrap().is_negative()
        {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if single(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

/// `g = derive(integrated) + residue_part`, with `residue_part` proper and of
/// squarefree denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteDecomposition<F> {
    pub integrated: RatFunc<F>,
    pub residue_part: RatFunc<F>,
}

/// Hermite reduction of a rational function.
///
/// The polynomial part is integrated exactly; the proper part is reduced
/// until its denominator is squarefree. The remainder is the unique proper
/// squarefree-denominator representative of `g` modulo derivatives.
pub fn hermite_reduce<F: Scalar>(g: &RatFunc<F>) -> HermiteDecomposition<F> {
    let (poly_part, proper) = g.split_polynomial();
    let mut integrated = RatFunc::from_poly(poly_part.antiderivative());
    if proper.is_zero() {
        return HermiteDecomposition {
            integrated,
            residue_part: RatFunc::zero(),
        };
    }

    let mut a = proper.num().clone();
    let mut d = proper.den().clone();
    let factors = d.squarefree_decomposition();
    for (idx, v) in factors.iter().enumerate() {
        let mult = idx + 1;
        if mult < 2 || v.is_constant() {
            continue;
        }
        let u = d.exact_div(&v.pow(mult as u32));
        let dv = v.derivative();
        let uv = &u * &dv;
        for j in (1..mult).rev() {
            let jj = F::from_i64(j as i64);
            let rhs = a.scale(&(-(F::one() / jj.clone())));
            // b*u*v' + c*v = -a/j
            let (b, c) = Poly::solve_bezout(&uv, v, &rhs);
            integrated = &integrated + &RatFunc::canonical(b.clone(), v.pow(j as u32));
            a = &c.scale(&(-jj)) - &(&u * &b.derivative());
        }
        d = &u * v;
    }
    HermiteDecomposition {
        integrated,
        residue_part: RatFunc::canonical(a, d),
    }
}

/// True iff `g` is the derivative of a rational function.
pub fn is_total_derivative<F: Scalar>(g: &RatFunc<F>) -> bool {
    hermite_reduce(g).residue_part.is_zero()
}
