use ore_core::orematrix::OreMatrix;
use ore_core::random::{random_matrix, random_regular_matrix, OperatorShape};
use ore_core::{OperatorMatrix, Side};
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

fn matrix(size: usize, order: usize) -> impl Strategy<Value = OperatorMatrix> {
    any::<u64>().prop_map(move |s| random_matrix(&mut ChaCha8Rng::seed_from_u64(s), size, &shape(order)))
}

fn regular(size: usize, order: usize) -> impl Strategy<Value = OperatorMatrix> {
    any::<u64>().prop_map(move |s| random_regular_matrix(&mut ChaCha8Rng::seed_from_u64(s), size, &shape(order)))
}

fn upper_triangular(h: &OperatorMatrix) -> bool {
    (0..h.size()).all(|i| (0..i).all(|j| h.get(i, j).is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(a in matrix(2, 1), b in matrix(2, 1), c in matrix(2, 1)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn hermite_certificate(m in matrix(2, 2)) {
        let cert = m.row_hermite();
        prop_assert_eq!(&cert.u * &m, cert.h.clone());
        prop_assert!(upper_triangular(&cert.h));
        prop_assert_eq!(cert.u.ddet_degree(), Some(0));
        prop_assert_eq!(cert.replay_inverse(), m);
    }

    #[test]
    fn hermite_form_is_canonical(m in regular(2, 1), w in regular(2, 0)) {
        // a constant regular w is unimodular, so w*m has the same row space
        let h1 = m.row_hermite().h;
        let h2 = (&w * &m).row_hermite().h;
        prop_assert_eq!(h1, h2);
    }

    #[test]
    fn degree_is_additive(a in regular(2, 1), b in regular(2, 1)) {
        let (da, db) = (a.ddet_degree().unwrap(), b.ddet_degree().unwrap());
        prop_assert_eq!((&a * &b).ddet_degree(), Some(da + db));
    }

    #[test]
    fn regularity_matches_degree(m in matrix(2, 1)) {
        prop_assert_eq!(m.is_regular(), m.ddet_degree().is_some());
    }

    #[test]
    fn adjoint_reverses_products(a in matrix(2, 1), b in matrix(2, 1)) {
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn gcd_certificates(a in regular(2, 1), b in regular(2, 1)) {
        let g = OreMatrix::matrix_gcd(&a, &b, Side::Right).unwrap();
        prop_assert_eq!(&(&g.u * &a) + &(&g.v * &b), g.d.clone());
        prop_assert_eq!(&g.a1 * &g.d, a.clone());
        prop_assert_eq!(&g.b1 * &g.d, b.clone());
        let g = OreMatrix::matrix_gcd(&a, &b, Side::Left).unwrap();
        prop_assert_eq!(&(&a * &g.u) + &(&b * &g.v), g.d.clone());
        prop_assert_eq!(&g.d * &g.a1, a);
        prop_assert_eq!(&g.d * &g.b1, b);
    }

    #[test]
    fn lcm_certificates(a in regular(2, 1), b in regular(2, 1)) {
        for side in [Side::Left, Side::Right] {
            let l = OreMatrix::matrix_lcm(&a, &b, side).unwrap();
            let (via_a, via_b) = match side {
                Side::Left => (&l.b1 * &a, &l.a1 * &b),
                Side::Right => (&a * &l.b1, &b * &l.a1),
            };
            prop_assert_eq!(&via_a, &l.m);
            prop_assert_eq!(&via_b, &l.m);
            let g = OreMatrix::matrix_gcd(&a, &b, side.opposite()).unwrap();
            let deg = |m: &OperatorMatrix| m.ddet_degree().unwrap();
            prop_assert_eq!(deg(&l.m) + deg(&g.d), deg(&a) + deg(&b));
        }
    }
}
