//! Seeded property suites over the rational field.
//!
//! Each suite draws every trial from its own generator, seeded by
//! [`trial_seed`], so a failure is replayed by rerunning that one seed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fractions::{degree_invariant, make_minimal, theorem31_q, OperatorFraction};
use crate::modules::{
    isotropy_class, kernel_gcd_check, kernel_image_check, kernel_polynomial, maximal_isotropy_witness,
    skew_pair_check, thm33_witness, trial_seed, CyclicModule, LeftModule, NaturalModule, SearchOptions,
    TrialFailure,
};
use crate::orematrix::OreMatrix;
use crate::orepoly::{self, OrePoly};
use crate::parse::parse_operator;
use crate::poly::Poly;
use crate::random::{self, OperatorShape, RandomElement};
use crate::ratfunc::is_total_derivative;
use crate::regularize::{regularize, regularize_pair, shifted, DEFAULT_BUDGET};
use crate::ring::OreRing;
use crate::side::Side;
use crate::{Operator, OperatorMatrix, Rational, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<TrialFailure>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.trials > 0 && self.passes == self.trials
    }
}

/// Trial counts for every suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteSizes {
    pub bezout: usize,
    pub lcm: usize,
    pub common_factor: usize,
    pub degree_scalar: usize,
    pub degree_matrix: usize,
    pub witness_natural: usize,
    pub witness_cyclic: usize,
    pub pairing: usize,
    pub isotropy: usize,
    pub hermite: usize,
    pub ddet_products: usize,
    pub regularize: usize,
    pub roundtrip: usize,
    /// Operator order bound of the Euclid and roundtrip suites.
    pub max_order: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            bezout: 500,
            lcm: 200,
            common_factor: 200,
            degree_scalar: 100,
            degree_matrix: 50,
            witness_natural: 200,
            witness_cyclic: 200,
            pairing: 300,
            isotropy: 100,
            hermite: 100,
            ddet_products: 50,
            regularize: 100,
            roundtrip: 500,
            max_order: 4,
        }
    }
}

impl SuiteSizes {
    /// Every count set to `n`.
    pub fn uniform(n: usize) -> Self {
        SuiteSizes {
            bezout: n,
            lcm: n,
            common_factor: n,
            degree_scalar: n,
            degree_matrix: n,
            witness_natural: n,
            witness_cyclic: n,
            pairing: n,
            isotropy: n,
            hermite: n,
            ddet_products: n,
            regularize: n,
            roundtrip: n,
            max_order: 4,
        }
    }
}

/// Runs `trial` on `trials` seeds; `Ok(None)` is a pass and `Ok(Some(msg))`
/// or an error is a failure.
fn run_suite<T>(name: &'static str, trials: usize, seed: u64, mut trial: T) -> SuiteReport
where
    T: FnMut(&mut ChaCha8Rng, usize, u64) -> Result<Option<String>>,
{
    let start = Instant::now();
    let mut report = SuiteReport {
        name,
        trials,
        passes: 0,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for t in 0..trials {
        let s = trial_seed(seed, t);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        match trial(&mut rng, t, s) {
            Ok(None) => report.passes += 1,
            Ok(Some(msg)) => report.failures.push(TrialFailure { seed: s, inputs: msg }),
            Err(e) => report.failures.push(TrialFailure {
                seed: s,
                inputs: format!("error: {e}"),
            }),
        }
    }
    report.elapsed = start.elapsed();
    report
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(msg)
}

/// Distribution of the Euclid suites: order at most 4, coefficient degrees
/// at most 2, integers in `[-5, 5]`.
pub fn euclid_shape() -> OperatorShape {
    OperatorShape {
        max_order: 4,
        max_degree: 2,
        coeff_bound: 5,
        rational: true,
        sparsity: 0.2,
    }
}

fn small_shape(max_order: usize) -> OperatorShape {
    OperatorShape {
        max_order,
        max_degree: 1,
        coeff_bound: 3,
        rational: true,
        sparsity: 0.3,
    }
}

fn is_right_divisor(d: &Operator, a: &Operator) -> bool {
    orepoly::divide(a, d, Side::Left).is_ok_and(|r| r.remainder.is_zero())
}

/// `d = u*a + v*b`, `d` right-divides both, and the quotients are right
/// coprime.
pub fn bezout_suite(trials: usize, seed: u64) -> SuiteReport {
    bezout_suite_with(trials, seed, &euclid_shape())
}

pub fn bezout_suite_with(trials: usize, seed: u64, shape: &OperatorShape) -> SuiteReport {
    run_suite("bezout", trials, seed, |rng, _, _| {
        let a: Operator = random::random_nonzero_operator(rng, shape);
        let b: Operator = random::random_nonzero_operator(rng, shape);
        let g = orepoly::gcd_extended(&a, &b, Side::Right)?;
        let q = orepoly::gcd_extended(&g.a1, &g.b1, Side::Right)?;
        Ok(check(
            g.d == &(&g.u * &a) + &(&g.v * &b)
                && is_right_divisor(&g.d, &a)
                && is_right_divisor(&g.d, &b)
                && &g.a1 * &g.d == a
                && &g.b1 * &g.d == b
                && q.d.is_unit(),
            || format!("a = {a}; b = {b}"),
        ))
    })
}

/// `m = a*b1 = b*a1` and the order formula `lcm + gcd = a + b`, on both sides.
pub fn lcm_suite(trials: usize, seed: u64) -> SuiteReport {
    let shape = small_shape(3);
    run_suite("lcm", trials, seed, |rng, _, _| {
        let a: Operator = random::random_nonzero_operator(rng, &shape);
        let b: Operator = random::random_nonzero_operator(rng, &shape);
        let ord = |p: &Operator| p.order().unwrap_or(0);
        let mut ok = true;
        for side in [Side::Right, Side::Left] {
            let l = orepoly::lcm(&a, &b, side)?;
            let g = orepoly::gcd_extended(&a, &b, side.opposite())?;
            ok &= match side {
                Side::Right => &a * &l.b1 == l.m && &b * &l.a1 == l.m,
                Side::Left => &l.b1 * &a == l.m && &l.a1 * &b == l.m,
            };
            ok &= ord(&l.m) + ord(&g.d) == ord(&a) + ord(&b);
        }
        Ok(check(ok, || format!("a = {a}; b = {b}")))
    })
}

/// Builds `a = a1*q`, `b = b1*q` from right-coprime `(a1, b1)` and recovers
/// `q` up to a unit.
pub fn common_factor_suite(trials: usize, seed: u64) -> SuiteReport {
    let shape = small_shape(2);
    run_suite("common-factor", trials, seed, |rng, _, _| {
        let (a1, b1) = loop {
            let a1: Operator = random::random_operator(rng, &shape);
            let b1: Operator = random::random_nonzero_operator(rng, &shape);
            if orepoly::gcd_extended(&a1, &b1, Side::Right)?.d.is_unit() {
                break (a1, b1);
            }
        };
        let q: Operator = random::random_nonzero_operator(rng, &shape);
        let raw = OperatorFraction::new(&a1 * &q, &b1 * &q, Side::Right)?;
        let min = make_minimal(&raw)?;
        let cf = theorem31_q(&raw, &min)?;
        let w = orepoly::try_exact_quotient(&cf.q, &q, Side::Left);
        Ok(check(
            &min.num * &cf.q == raw.num
                && &min.den * &cf.q == raw.den
                && cf.q.is_regular()
                && w.is_some_and(|w| w.is_unit()),
            || format!("a1 = {a1}; b1 = {b1}; q = {q}"),
        ))
    })
}

/// Denominator degree agrees across side conversion.
pub fn degree_invariant_suite(scalar_trials: usize, matrix_trials: usize, seed: u64) -> SuiteReport {
    let shape = small_shape(3);
    let mshape = small_shape(2);
    run_suite("degree-invariant", scalar_trials + matrix_trials, seed, |rng, index, _| {
        if index < scalar_trials {
            let a: Operator = random::random_operator(rng, &shape);
            let b: Operator = random::random_nonzero_operator(rng, &shape);
            let (l, r) = degree_invariant(&OperatorFraction::new(a.clone(), b.clone(), Side::Right)?)?;
            Ok(check(l == r, || format!("a = {a}; b = {b}; left {l}, right {r}")))
        } else {
            let a: OperatorMatrix = random::random_matrix(rng, 2, &mshape);
            let b: OperatorMatrix = random::random_regular_matrix(rng, 2, &mshape);
            let (l, r) = degree_invariant(&OperatorFraction::new(a.clone(), b.clone(), Side::Right)?)?;
            Ok(check(l == r, || format!("a = {a}; b = {b}; left {l}, right {r}")))
        }
    })
}

fn left_coprime_pair(rng: &mut ChaCha8Rng, shape: &OperatorShape) -> Result<(Operator, Operator)> {
    loop {
        let a: Operator = random::random_nonzero_operator(rng, shape);
        let b: Operator = random::random_nonzero_operator(rng, shape);
        if orepoly::gcd_extended(&a, &b, Side::Left)?.d.is_unit() {
            return Ok((a, b));
        }
    }
}

fn witness_trial<M>(
    a: &Operator,
    b: &Operator,
    module: &M,
    rng: &mut ChaCha8Rng,
    seed: u64,
) -> Result<Option<String>>
where
    M: LeftModule<Operator>,
{
    let l = orepoly::lcm(a, b, Side::Right)?;
    let z0 = module.random_element(rng, &small_shape(2));
    let x = module.act(&l.b1, &z0)?;
    let y = module.act(&l.a1, &z0)?;
    let (z, trace) = thm33_witness(a, b, &x, &y, module, &SearchOptions::with_seed(seed))?;
    Ok(check(
        module.act(&trace.b1, &z)? == x && module.act(&trace.input_a1(), &z)? == y && trace.verify(),
        || format!("a = {a}; b = {b}; z0 = {}", module.render(&z0)),
    ))
}

/// The intersection witness on `Q(x)` and on `R/Rc`, from instances built
/// out of a random `z0`.
pub fn witness_suite(natural_trials: usize, cyclic_trials: usize, seed: u64) -> SuiteReport {
    let shape = small_shape(2);
    let v = NaturalModule { dim: 1 };
    run_suite("witness", natural_trials + cyclic_trials, seed, |rng, index, s| {
        let (a, b) = left_coprime_pair(rng, &shape)?;
        if index < natural_trials {
            witness_trial(&a, &b, &v, rng, s)
        } else {
            let order = rng.gen_range(1..=3);
            let c: Operator = random::random_operator_of_order(rng, order, &small_shape(3));
            witness_trial(&a, &b, &CyclicModule::new(c)?, rng, s)
        }
    })
}

/// `a(f)*g - f*a*(g)` is a total derivative.
pub fn pairing_suite(trials: usize, seed: u64) -> SuiteReport {
    let shape = small_shape(3);
    run_suite("integration-by-parts", trials, seed, |rng, _, _| {
        let a: Operator = random::random_operator(rng, &shape);
        let f: RationalFunction = random::random_ratfunc(rng, &shape);
        let g: RationalFunction = random::random_ratfunc(rng, &shape);
        let h = &a.apply(&f) * &g - &f * &a.adjoint().apply(&g);
        Ok(check(is_total_derivative(&h), || format!("a = {a}; f = {f}; g = {g}")))
    })
}

/// For `a = D*b`: skewness, vanishing isotropy classes, and membership
/// recovery for orthogonal pairs (with `b` of order zero, where `a` and `b`
/// are right coprime).
pub fn isotropy_suite(trials: usize, seed: u64) -> SuiteReport {
    let shape = small_shape(2);
    let v = NaturalModule { dim: 1 };
    run_suite("isotropy", trials, seed, |rng, _, s| {
        let b: Operator = random::random_nonzero_operator(rng, &shape);
        let a = &Operator::d() * &b;
        let x1 = vec![random::random_ratfunc(rng, &shape)];
        let x2 = vec![random::random_ratfunc(rng, &shape)];
        let skew = skew_pair_check(&a, &b);
        let isotropic = isotropy_class(&a, &b, &x1, &x2)?.is_zero();

        let b0 = Operator::from_ratfunc(random::random_nonzero_ratfunc(rng, &shape));
        let a0 = &Operator::d() * &b0;
        let z0 = vec![random::random_ratfunc(rng, &shape)];
        let y1 = v.act(&b0, &z0)?;
        let y2 = v.act(&a0, &z0)?;
        let z = maximal_isotropy_witness(&a0, &b0, &y1, &y2, &v, &SearchOptions::with_seed(s))?;
        let recovered = v.act(&b0, &z)? == y1 && v.act(&a0, &z)? == y2;
        Ok(check(skew && isotropic && recovered, || {
            format!("b = {b}; x1 = {}; x2 = {}; b0 = {b0}; z0 = {}", x1[0], x2[0], z0[0])
        }))
    })
}

fn is_upper_triangular(h: &OperatorMatrix) -> bool {
    (0..h.size()).all(|i| (0..i).all(|j| h.get(i, j).is_zero()))
}

/// Hermite certificates at sizes 2 and 3, then degree additivity on
/// regular products.
pub fn hermite_suite(trials: usize, product_trials: usize, seed: u64) -> SuiteReport {
    let shape = small_shape(2);
    run_suite("hermite", trials + product_trials, seed, |rng, index, _| {
        if index < trials {
            let size = 2 + index % 2;
            let m: OperatorMatrix = random::random_matrix(rng, size, &shape);
            let cert = m.row_hermite();
            Ok(check(
                &cert.u * &m == cert.h
                    && is_upper_triangular(&cert.h)
                    && cert.u.ddet_degree() == Some(0)
                    && cert.replay_inverse() == m,
                || format!("m = {m}"),
            ))
        } else {
            let a: OperatorMatrix = random::random_regular_matrix(rng, 2, &shape);
            let b: OperatorMatrix = random::random_regular_matrix(rng, 2, &shape);
            let (da, db, dab) = (a.ddet_degree(), b.ddet_degree(), (&a * &b).ddet_degree());
            Ok(check(
                matches!((da, db, dab), (Some(x), Some(y), Some(z)) if x + y == z),
                || format!("a = {a}; b = {b}"),
            ))
        }
    })
}

fn poly_strings(ps: &[Poly<Rational>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// The crafted kernel instances: `(operator, degree bound, expected basis)`.
pub fn crafted_kernels() -> Vec<(&'static str, usize, Vec<&'static str>)> {
    vec![
        ("D^2", 5, vec!["1", "x"]),
        ("x*D - 1", 5, vec!["x"]),
        ("D^2 - (2/x)*D + 2/x^2", 5, vec!["x", "x^2"]),
    ]
}

/// Pairs `(a, b)` for the gcd kernel check.
pub fn crafted_gcd_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("D^3", "(x*D - 2)*D"),
        ("x^2*D^2 - 2*x*D + 2", "D^2"),
        ("D^2 - (2/x)*D + 2/x^2", "x*D - 2"),
    ]
}

/// Left-coprime pairs `(a, b)` for the lcm kernel image check.
pub fn crafted_image_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("x*D - 1", "D^2"),
        ("D", "x*D - 2"),
        ("D^2", "x^2*D^2 - 2*x*D + 2"),
        ("x*D", "(x*D - 2)*D"),
    ]
}

/// Kernel bases, `ker a ∩ ker b = ker d`, and `a1(ker b1) = ker b` on the
/// crafted instances.
pub fn kernel_suite() -> SuiteReport {
    let mut cases: Vec<Box<dyn Fn() -> Result<Option<String>>>> = Vec::new();
    for (op, n, expected) in crafted_kernels() {
        cases.push(Box::new(move || {
            let basis = kernel_polynomial(&parse_operator::<Rational>(op)?, n)?;
            let got = poly_strings(&basis);
            Ok(check(got == expected, || format!("kernel of {op}: {got:?}")))
        }));
    }
    for (a, b) in crafted_gcd_pairs() {
        cases.push(Box::new(move || {
            let rep = kernel_gcd_check(&parse_operator::<Rational>(a)?, &parse_operator(b)?, 8)?;
            Ok(check(rep.holds && !rep.kernel_d.is_empty(), || format!("gcd kernels of {a}, {b}")))
        }));
    }
    for (a, b) in crafted_image_pairs() {
        cases.push(Box::new(move || {
            let rep = kernel_image_check(&parse_operator::<Rational>(a)?, &parse_operator(b)?, 8)?;
            Ok(check(rep.holds && rep.complete, || format!("kernel image of {a}, {b}")))
        }));
    }
    let n = cases.len();
    run_suite("kernels", n, 0, |_, index, _| cases[index]())
}

/// A random singular-leaning matrix: a rank-one outer product, the zero
/// matrix, or a constant matrix.
fn low_order_input(rng: &mut ChaCha8Rng) -> OperatorMatrix {
    let constant = small_shape(0);
    let low = small_shape(1);
    match rng.gen_range(0..4) {
        0 => OperatorMatrix::zero(2),
        1 => random::random_matrix(rng, 2, &constant),
        _ => {
            let shape = if rng.gen_bool(0.5) { constant } else { low };
            let col: Vec<Operator> = (0..2).map(|_| random::random_operator(rng, &shape)).collect();
            let row: Vec<Operator> = (0..2).map(|_| random::random_operator(rng, &shape)).collect();
            OreMatrix::from_fn(2, |i, j| &col[i] * &row[j])
        }
    }
}

/// Regularizing shifts at size 2 on both sides, singly and in pairs.
pub fn regularize_suite(trials: usize, seed: u64, budget: usize) -> SuiteReport {
    run_suite("regularize", trials, seed, |rng, _, s| {
        let a = low_order_input(rng);
        let a2 = low_order_input(rng);
        let b = a.random_regular_like(rng, &small_shape(1));
        let b2 = a.random_regular_like(rng, &small_shape(0));
        let mut ok = true;
        for side in [Side::Right, Side::Left] {
            let q = regularize(&a, &b, side, budget, s)?;
            ok &= shifted(&a, &q, &b, side).is_regular();
            let q = regularize_pair(&a, &b, &a2, &b2, side, budget, s)?;
            ok &= shifted(&a, &q, &b, side).is_regular() && shifted(&a2, &q, &b2, side).is_regular();
        }
        Ok(check(ok, || format!("a = {a}; b = {b}; a2 = {a2}; b2 = {b2}")))
    })
}

/// `parse(print(p)) = p` on random operators.
pub fn roundtrip_suite(trials: usize, seed: u64) -> SuiteReport {
    roundtrip_suite_with(trials, seed, &euclid_shape())
}

pub fn roundtrip_suite_with(trials: usize, seed: u64, shape: &OperatorShape) -> SuiteReport {
    run_suite("parse-roundtrip", trials, seed, |rng, _, _| {
        let a: Operator = random::random_operator(rng, shape);
        let text = a.to_string();
        let back: OrePoly<Rational> = parse_operator(&text)?;
        Ok(check(back == a, || format!("printed {text}, parsed {back}")))
    })
}

/// Every suite, in acceptance order.
pub fn run_all(sizes: &SuiteSizes, seed: u64) -> Vec<SuiteReport> {
    let shape = euclid_shape().with_order(sizes.max_order);
    vec![
        bezout_suite_with(sizes.bezout, seed, &shape),
        lcm_suite(sizes.lcm, seed),
        common_factor_suite(sizes.common_factor, seed),
        degree_invariant_suite(sizes.degree_scalar, sizes.degree_matrix, seed),
        witness_suite(sizes.witness_natural, sizes.witness_cyclic, seed),
        pairing_suite(sizes.pairing, seed),
        isotropy_suite(sizes.isotropy, seed),
        hermite_suite(sizes.hermite, sizes.ddet_products, seed),
        kernel_suite(),
        regularize_suite(sizes.regularize, seed, DEFAULT_BUDGET),
        roundtrip_suite_with(sizes.roundtrip, seed, &shape),
    ]
}
