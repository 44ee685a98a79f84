use ore_core::fractions::{convert_side, degree_invariant, fraction_equal, make_minimal, OperatorFraction};
use ore_core::modules::{
    intersection_check, isotropy_class, kernel_polynomial, pairing_class, skew_pair_check, CyclicModule, LeftModule,
    NaturalModule,
};
use ore_core::orepoly;
use ore_core::random::{
    random_matrix, random_nonzero_operator, random_operator, random_operator_of_order, random_ratfunc,
    OperatorShape,
};
use ore_core::ratfunc::RatFunc;
use ore_core::{Operator, OperatorMatrix, RationalFunction, Side};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape(max_order: usize) -> OperatorShape {
    OperatorShape {
        max_order,
        max_degree: 1,
        coeff_bound: 3,
        rational: true,
        sparsity: 0.3,
    }
}

fn rng(s: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(s)
}

fn op(order: usize) -> impl Strategy<Value = Operator> {
    any::<u64>().prop_map(move |s| random_operator(&mut rng(s), &shape(order)))
}

fn nonzero_op(order: usize) -> impl Strategy<Value = Operator> {
    any::<u64>().prop_map(move |s| random_nonzero_operator(&mut rng(s), &shape(order)))
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    any::<u64>().prop_map(|s| random_ratfunc(&mut rng(s), &shape(0)))
}

fn cyclic() -> impl Strategy<Value = CyclicModule<ore_core::Rational>> {
    (any::<u64>(), 1usize..=3).prop_map(|(s, k)| {
        CyclicModule::new(random_operator_of_order(&mut rng(s), k, &shape(3))).unwrap()
    })
}

fn module_axioms<M: LeftModule<Operator>>(m: &M, a: &Operator, b: &Operator, x: &M::Elem, y: &M::Elem) -> bool {
    let act = |r: &Operator, e: &M::Elem| m.act(r, e).unwrap();
    act(&(a * b), x) == act(a, &act(b, x))
        && act(&(a + b), x) == m.add(&act(a, x), &act(b, x))
        && act(a, &m.add(x, y)) == m.add(&act(a, x), &act(a, y))
        && act(&Operator::one(), x) == *x
        && m.contains(&act(a, x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn natural_module_axioms(a in op(2), b in op(2), f in ratfunc(), g in ratfunc()) {
        let v = NaturalModule::new(1).unwrap();
        prop_assert!(module_axioms(&v, &a, &b, &vec![f], &vec![g]));
    }

    #[test]
    fn cyclic_module_axioms(m in cyclic(), a in op(2), b in op(2), s in any::<u64>()) {
        let mut r = rng(s);
        let x = LeftModule::<Operator>::random_element(&m, &mut r, &shape(2));
        let y = LeftModule::<Operator>::random_element(&m, &mut r, &shape(2));
        prop_assert!(m.contains(&x) && m.contains(&y));
        prop_assert!(module_axioms(&m, &a, &b, &x, &y));
        // the modulus acts as zero on the class of 1
        prop_assert!(LeftModule::<Operator>::is_zero(&m, &m.act(m.modulus(), &Operator::one()).unwrap()));
    }

    #[test]
    fn matrix_module_axioms(s in any::<u64>()) {
        let mut r = rng(s);
        let a: OperatorMatrix = random_matrix(&mut r, 2, &shape(1));
        let b: OperatorMatrix = random_matrix(&mut r, 2, &shape(1));
        let v = NaturalModule::new(2).unwrap();
        let x = LeftModule::<OperatorMatrix>::random_element(&v, &mut r, &shape(1));
        let act = |m: &OperatorMatrix, e: &Vec<RationalFunction>| v.act(m, e).unwrap();
        prop_assert_eq!(act(&(&a * &b), &x), act(&a, &act(&b, &x)));
    }

    #[test]
    fn intersection_on_natural_module(a in nonzero_op(2), b in nonzero_op(2), s in any::<u64>()) {
        prop_assume!(orepoly::gcd_extended(&a, &b, Side::Left).unwrap().d.is_unit());
        let v = NaturalModule::new(1).unwrap();
        let report = intersection_check(&a, &b, &v, 2, s, &shape(1)).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report.failures);
    }

    #[test]
    fn integration_by_parts(a in op(3), f in ratfunc(), g in ratfunc()) {
        let lhs = pairing_class(&[a.apply(&f)], &[g.clone()]).unwrap();
        let rhs = pairing_class(&[f], &[a.adjoint().apply(&g)]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn skew_family_is_isotropic(b in nonzero_op(2), x in ratfunc(), x2 in ratfunc()) {
        let a = &Operator::d() * &b;
        prop_assert!(skew_pair_check(&a, &b));
        prop_assert!(isotropy_class(&a, &b, &[x], &[x2]).unwrap().is_zero());
    }

    #[test]
    fn fraction_sides_agree(a in op(2), b in nonzero_op(2)) {
        let f = OperatorFraction::new(a, b, Side::Right).unwrap();
        let g = convert_side(&f).unwrap();
        prop_assert_eq!(g.side, Side::Left);
        prop_assert!(fraction_equal(&f, &g).unwrap());
        prop_assert!(fraction_equal(&f, &make_minimal(&f).unwrap()).unwrap());
        let (l, r) = degree_invariant(&f).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn kernel_bases_solve_the_equation(b in nonzero_op(2), n in 0usize..6) {
        let basis = kernel_polynomial(&b, n).unwrap();
        prop_assert!(basis.len() <= b.order().unwrap());
        for p in &basis {
            prop_assert!(p.degree().is_some_and(|d| d <= n));
            prop_assert!(b.apply(&RatFunc::from_poly(p.clone())).is_zero());
        }
    }
}
