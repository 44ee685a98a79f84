//! Seeded generators for property suites.

use rand::Rng;

use crate::orematrix::OreMatrix;
use crate::orepoly::OrePoly;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::ring::OreRing;
use crate::scalar::Scalar;

/// Size limits for random operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorShape {
    pub max_order: usize,
    /// Degree bound for coefficient numerators and denominators.
    pub max_degree: usize,
    /// Integer coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    /// Allow non-polynomial coefficients.
    pub rational: bool,
    /// Probability that a coefficient below the leading one is zero.
    pub sparsity: f64,
}

impl Default for OperatorShape {
    fn default() -> Self {
        OperatorShape {
            max_order: 2,
            max_degree: 1,
            coeff_bound: 3,
            rational: true,
            sparsity: 0.3,
        }
    }
}

impl OperatorShape {
    pub fn with_order(self, max_order: usize) -> Self {
        OperatorShape { max_order, ..self }
    }
}

pub fn random_poly<F: Scalar, G: Rng>(rng: &mut G, max_degree: usize, bound: i64) -> Poly<F> {
    let deg = rng.gen_range(0..=max_degree);
    Poly::new((0..=deg).map(|_| F::from_i64(rng.gen_range(-bound..=bound))).collect())
}

pub fn random_nonzero_poly<F: Scalar, G: Rng>(rng: &mut G, max_degree: usize, bound: i64) -> Poly<F> {
    loop {
        let p = random_poly(rng, max_degree, bound.max(1));
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ratfunc<F: Scalar, G: Rng>(rng: &mut G, shape: &OperatorShape) -> RatFunc<F> {
    let num = random_poly(rng, shape.max_degree, shape.coeff_bound);
    if !shape.rational {
        return RatFunc::from_poly(num);
    }
    let den = random_nonzero_poly(rng, shape.max_degree, shape.coeff_bound);
    RatFunc::new(num, den).expect("nonzero denominator")
}

pub fn random_nonzero_ratfunc<F: Scalar, G: Rng>(rng: &mut G, shape: &OperatorShape) -> RatFunc<F> {
    loop {
        let f = random_ratfunc(rng, shape);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Order drawn uniformly from `0..=max_order`; may be zero.
pub fn random_operator<F: Scalar, G: Rng>(rng: &mut G, shape: &OperatorShape) -> OrePoly<F> {
    let order = rng.gen_range(0..=shape.max_order);
    let mut coeffs = Vec::with_capacity(order + 1);
    for _ in 0..order {
        if rng.gen_bool(shape.sparsity) {
            coeffs.push(RatFunc::zero());
        } else {
            coeffs.push(random_ratfunc(rng, shape));
        }
    }
    coeffs.push(random_ratfunc(rng, shape));
    OrePoly::new(coeffs)
}

pub fn random_nonzero_operator<F: Scalar, G: Rng>(rng: &mut G, shape: &OperatorShape) -> OrePoly<F> {
    loop {
        let a = random_operator(rng, shape);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Operator of exactly the given order.
pub fn random_operator_of_order<F: Scalar, G: Rng>(rng: &mut G, order: usize, shape: &OperatorShape) -> OrePoly<F> {
    let mut coeffs: Vec<RatFunc<F>> = (0..order)
        .map(|_| {
            if rng.gen_bool(shape.sparsity) {
                RatFunc::zero()
            } else {
                random_ratfunc(rng, shape)
            }
        })
        .collect();
    coeffs.push(random_nonzero_ratfunc(rng, shape));
    OrePoly::new(coeffs)
}

pub fn random_matrix<F: Scalar, G: Rng>(rng: &mut G, size: usize, shape: &OperatorShape) -> OreMatrix<F> {
    OreMatrix::from_fn(size, |_, _| random_operator(rng, shape))
}

pub fn random_regular_matrix<F: Scalar, G: Rng>(rng: &mut G, size: usize, shape: &OperatorShape) -> OreMatrix<F> {
    loop {
        let m = random_matrix(rng, size, shape);
        if m.is_regular() {
            return m;
        }
    }
}

/// A random element of the same ring as `like`.
pub trait RandomElement: OreRing {
    fn random_like<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self;

    fn random_regular_like<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self {
        loop {
            let r = self.random_like(rng, shape);
            if r.is_regular() {
                return r;
            }
        }
    }
}

impl<F: Scalar> RandomElement for OrePoly<F> {
    fn random_like<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self {
        random_operator(rng, shape)
    }
}

impl<F: Scalar> RandomElement for OreMatrix<F> {
    fn random_like<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self {
        random_matrix(rng, self.size(), shape)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = OperatorShape::default().with_order(3);
        for _ in 0..50 {
            let a: OrePoly<Rational> = random_operator(&mut rng, &shape);
            assert!(a.order().map_or(true, |o| o <= 3));
            for c in a.coeffs() {
                assert!(c.num().degree().map_or(true, |d| d <= 1));
                assert!(c.den().degree().unwrap() <= 1);
            }
        }
        let b: OrePoly<Rational> = random_operator_of_order(&mut rng, 2, &shape);
        assert_eq!(b.order(), Some(2));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let shape = OperatorShape::default();
        let a: OrePoly<Rational> = random_operator(&mut ChaCha8Rng::seed_from_u64(1), &shape);
        let b: OrePoly<Rational> = random_operator(&mut ChaCha8Rng::seed_from_u64(1), &shape);
        assert_eq!(a, b);
    }
}
