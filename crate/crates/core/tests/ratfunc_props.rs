use num_traits::Zero;
use ore_core::poly::Poly;
use ore_core::ratfunc::{hermite_reduce, is_total_derivative, RatFunc};
use ore_core::{Polynomial, Rational, RationalFunction};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-9i64..=9, 0..6).prop_map(|c| Poly::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

/// Horner evaluation, independent of the library's arithmetic.
fn eval(p: &Polynomial, t: i64) -> Rational {
    p.coeffs().iter().rev().fold(Rational::zero(), |acc, c| acc * q(t) + c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_evaluates_pointwise(a in poly(), b in poly(), t in -6i64..=6) {
        prop_assert_eq!(eval(&(&a * &b), t), eval(&a, t) * eval(&b, t));
    }

    #[test]
    fn division_identity(a in poly(), b in nonzero_poly()) {
        let (quo, rem) = a.div_rem(&b);
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_with_coprime_cofactors(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (a, b) = (&a * &c, &b * &c);
        let g = a.gcd(&b);
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
        prop_assert!(c.rem(&g).is_zero() || c.is_constant());
        let (one, s, t) = a.exact_div(&g).extended_gcd(&b.exact_div(&g));
        prop_assert!(one.is_one());
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn field_axioms(f in ratfunc(), g in ratfunc(), h in ratfunc()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        if !f.is_zero() {
            prop_assert!((&f * &f.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form(f in ratfunc()) {
        prop_assert!(f.den().is_monic());
        prop_assert!(f.num().gcd(f.den()).is_one() || f.is_zero());
    }

    #[test]
    fn leibniz_rule(f in ratfunc(), g in ratfunc()) {
        prop_assert_eq!((&f * &g).derive(), &(&f.derive() * &g) + &(&f * &g.derive()));
    }

    #[test]
    fn hermite_reduction_decomposes(g in ratfunc()) {
        let h = hermite_reduce(&g);
        prop_assert_eq!(&h.integrated.derive() + &h.residue_part, g);
        let r = &h.residue_part;
        prop_assert!(r.is_zero() || r.num().degree() < r.den().degree());
        prop_assert!(r.den().is_squarefree());
    }

    #[test]
    fn derivatives_are_total_derivatives(f in ratfunc()) {
        prop_assert!(is_total_derivative(&f.derive()));
    }

    #[test]
    fn simple_poles_are_not_total_derivatives(c in -5i64..=5, k in 1i64..=4) {
        // k/(x - c) integrates to a logarithm
        let g = RatFunc::new(Poly::constant(q(k)), Poly::from_i64s(&[-c, 1])).unwrap();
        prop_assert!(!is_total_derivative(&g));
    }
}

#[test]
fn constants_are_canonical() {
    let half = RatFunc::new(Poly::constant(q(1)), Poly::constant(q(2))).unwrap();
    assert_eq!(half.as_constant(), Some(Rational::new(1.into(), 2.into())));
    assert!(RationalFunction::one().is_one());
}
