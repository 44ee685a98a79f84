//! Left modules over `K[D]` and `Mat_l(K[D])`, and constructive membership
//! witnesses for `aV ∩ bV = mV` and its adjoint forms.
//!
//! Every witness re-checks its defining equations before returning, so a
//! returned value is correct whenever the exact arithmetic is.

use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::orematrix::OreMatrix;
use crate::orepoly::{self, OrePoly};
use crate::poly::Poly;
use crate::random::{self, OperatorShape};
use crate::ratfunc::{hermite_reduce, RatFunc};
use crate::regularize::{regularize, regularize_pair, DEFAULT_BUDGET};
use crate::ring::OreRing;
use crate::scalar::Scalar;
use crate::side::Side;

/// A left module over the ring `R`.
pub trait LeftModule<R: OreRing> {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// `r·x`; errors when `r` does not act on this module.
    fn act(&self, r: &R, x: &Self::Elem) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &R::Scalar, x: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    /// Shape and canonical-form check for elements.
    fn contains(&self, x: &Self::Elem) -> bool;
    fn random_element<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self::Elem;
    /// A finite basis over the scalars, when there is one.
    fn basis(&self) -> Option<Vec<Self::Elem>>;
    fn render(&self, x: &Self::Elem) -> String;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let minus_one = -<R::Scalar as One>::one();
        self.add(x, &self.scale(&minus_one, y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }
}

/// `K^l` with operators acting by differentiation and multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaturalModule {
    pub dim: usize,
}

impl NaturalModule {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DegenerateInput("module dimension must be positive"));
        }
        Ok(NaturalModule { dim })
    }

    fn check_len<F>(&self, x: &[RatFunc<F>]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::SizeMismatch {
                left: self.dim,
                right: x.len(),
            });
        }
        Ok(())
    }

    fn render_column<F: Scalar>(x: &[RatFunc<F>]) -> String {
        let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<F: Scalar> LeftModule<OrePoly<F>> for NaturalModule {
    type Elem = Vec<RatFunc<F>>;

    fn act(&self, r: &OrePoly<F>, x: &Self::Elem) -> Result<Self::Elem> {
        if self.dim != 1 {
            return Err(Error::KindMismatch(format!(
                "a scalar operator acts on the 1-column module, not on dimension {}",
                self.dim
            )));
        }
        self.check_len(x)?;
        Ok(vec![r.apply(&x[0])])
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        x.iter().map(|a| a.scale(c)).collect()
    }

    fn zero(&self) -> Self::Elem {
        vec![RatFunc::zero(); self.dim]
    }

    fn contains(&self, x: &Self::Elem) -> bool {
        x.len() == self.dim
    }

    fn random_element<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self::Elem {
        (0..self.dim).map(|_| random::random_ratfunc(rng, shape)).collect()
    }

    fn basis(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn render(&self, x: &Self::Elem) -> String {
        Self::render_column(x)
    }
}

impl<F: Scalar> LeftModule<OreMatrix<F>> for NaturalModule {
    type Elem = Vec<RatFunc<F>>;

    fn act(&self, r: &OreMatrix<F>, x: &Self::Elem) -> Result<Self::Elem> {
        if r.size() != self.dim {
            return Err(Error::KindMismatch(format!(
                "a {0}x{0} operator matrix acts on {0}-columns, not on dimension {1}",
                r.size(),
                self.dim
            )));
        }
        self.check_len(x)?;
        Ok((0..self.dim)
            .map(|i| {
                (0..self.dim).fold(RatFunc::zero(), |acc, j| acc + r.get(i, j).apply(&x[j]))
            })
            .collect())
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        <Self as LeftModule<OrePoly<F>>>::add(self, x, y)
    }

    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        <Self as LeftModule<OrePoly<F>>>::scale(self, c, x)
    }

    fn zero(&self) -> Self::Elem {
        vec![RatFunc::zero(); self.dim]
    }

    fn contains(&self, x: &Self::Elem) -> bool {
        x.len() == self.dim
    }

    fn random_element<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self::Elem {
        <Self as LeftModule<OrePoly<F>>>::random_element(self, rng, shape)
    }

    fn basis(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn render(&self, x: &Self::Elem) -> String {
        Self::render_column(x)
    }
}

/// The cyclic module `R/Rc`; elements are remainders of left division by `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicModule<F> {
    c: OrePoly<F>,
}

impl<F: Scalar> CyclicModule<F> {
    pub fn new(c: OrePoly<F>) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DegenerateInput("cyclic module modulus must be nonzero"));
        }
        Ok(CyclicModule { c })
    }

    pub fn modulus(&self) -> &OrePoly<F> {
        &self.c
    }

    /// Dimension over `K`.
    pub fn rank(&self) -> usize {
        self.c.order().unwrap_or(0)
    }

    /// Canonical remainder `r` of `a = q*c + r`.
    pub fn reduce(&self, a: &OrePoly<F>) -> OrePoly<F> {
        orepoly::divide(a, &self.c, Side::Left)
            .expect("nonzero modulus")
            .remainder
    }
}

impl<F: Scalar> LeftModule<OrePoly<F>> for CyclicModule<F> {
    type Elem = OrePoly<F>;

    fn act(&self, r: &OrePoly<F>, x: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.reduce(&(r * x)))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x + y
    }

    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        x.scale(c)
    }

    fn zero(&self) -> Self::Elem {
        OrePoly::zero()
    }

    fn contains(&self, x: &Self::Elem) -> bool {
        x.order().map_or(true, |o| o < self.rank())
    }

    fn random_element<G: Rng>(&self, rng: &mut G, shape: &OperatorShape) -> Self::Elem {
        let shape = shape.with_order(self.rank().saturating_sub(1));
        if self.rank() == 0 {
            return OrePoly::zero();
        }
        random::random_operator(rng, &shape)
    }

    fn basis(&self) -> Option<Vec<Self::Elem>> {
        Some(
            (0..self.rank())
                .map(|k| OrePoly::monomial(RatFunc::one(), k))
                .collect(),
        )
    }

    fn render(&self, x: &Self::Elem) -> String {
        x.to_string()
    }
}

/// Budget and seed for the randomized searches inside the witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

impl SearchOptions {
    pub fn with_seed(seed: u64) -> Self {
        SearchOptions {
            seed,
            ..Default::default()
        }
    }
}

/// Every intermediate of the intersection witness.
///
/// `a` is the operator actually used: the input plus `b*shift` when the input
/// was not regular. The identities of [`WitnessTrace::verify`] refer to this
/// effective `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessTrace<R> {
    pub a: R,
    pub b: R,
    pub shift: Option<R>,
    pub m: R,
    pub a1: R,
    pub b1: R,
    pub u: R,
    pub v: R,
    pub p: R,
    pub q: R,
    pub u_regular: bool,
    pub v_regular: bool,
}

impl<R: OreRing> WitnessTrace<R> {
    /// `m = a*b1 = b*a1`, `u*b1 + v*a1 = 1`, `1 - a1*v = p*b`, `a1*u = p*a`,
    /// `1 - b1*u = q*a`, `b1*v = q*b`.
    pub fn identities(&self) -> [(&'static str, bool); 6] {
        let one = self.a.one_like();
        [
            (
                "m = a*b1 = b*a1",
                self.m == self.a.times(&self.b1) && self.m == self.b.times(&self.a1),
            ),
            (
                "u*b1 + v*a1 = 1",
                self.u.times(&self.b1).plus(&self.v.times(&self.a1)) == one,
            ),
            ("1 - a1*v = p*b", one.minus(&self.a1.times(&self.v)) == self.p.times(&self.b)),
            ("a1*u = p*a", self.a1.times(&self.u) == self.p.times(&self.a)),
            ("1 - b1*u = q*a", one.minus(&self.b1.times(&self.u)) == self.q.times(&self.a)),
            ("b1*v = q*b", self.b1.times(&self.v) == self.q.times(&self.b)),
        ]
    }

    pub fn verify(&self) -> bool {
        self.identities().iter().all(|(_, ok)| *ok)
    }

    /// The cofactor for the original `a`: `a_in*b1 = b*a1_in` and
    /// `y = a1_in*z`.
    pub fn input_a1(&self) -> R {
        match &self.shift {
            Some(q0) => self.a1.minus(&q0.times(&self.b1)),
            None => self.a1.clone(),
        }
    }

    /// `a` before the regularizing shift.
    pub fn input_a(&self) -> R {
        match &self.shift {
            Some(q0) => self.a.minus(&self.b.times(q0)),
            None => self.a.clone(),
        }
    }
}

fn require_left_coprime<R: OreRing>(a: &R, b: &R) -> Result<()> {
    let g = R::gcd(a, b, Side::Left)?;
    if !g.d.is_unit() {
        return Err(Error::precondition(format!("{a} and {b} are not left coprime")));
    }
    Ok(())
}

fn require_right_coprime<R: OreRing>(a: &R, b: &R) -> Result<()> {
    let g = R::gcd(a, b, Side::Right)?;
    if !g.d.is_unit() {
        return Err(Error::precondition(format!("{a} and {b} are not right coprime")));
    }
    Ok(())
}

fn require_regular<R: OreRing>(b: &R, what: &str) -> Result<()> {
    if !b.is_regular() {
        return Err(Error::precondition(format!("{what} must be regular, got {b}")));
    }
    Ok(())
}

/// The right lcm `m = a*b1 = b*a1` after replacing a non-regular `a` by
/// `a + b*q0`. Returns `(effective a, q0, lcm)`.
fn shifted_right_lcm<R: OreRing>(
    a: &R,
    b: &R,
    opts: &SearchOptions,
) -> Result<(R, Option<R>, crate::ring::Lcm<R>)> {
    let (a_eff, shift) = if a.is_regular() {
        (a.clone(), None)
    } else {
        let q0 = regularize(a, b, Side::Right, opts.budget, opts.seed)?;
        (a.plus(&b.times(&q0)), Some(q0))
    };
    let lcm = R::lcm(&a_eff, b, Side::Right)?;
    Ok((a_eff, shift, lcm))
}

/// Given `a*x = b*y` with `a`, `b` left coprime and `b` regular, finds `z`
/// with `x = b1*z` and `y = a1_in*z`, where `a_in*b1 = b*a1_in` is the right
/// lcm (see [`WitnessTrace::input_a1`]).
pub fn thm33_witness<R, M>(
    a: &R,
    b: &R,
    x: &M::Elem,
    y: &M::Elem,
    module: &M,
    opts: &SearchOptions,
) -> Result<(M::Elem, WitnessTrace<R>)>
where
    R: OreRing,
    M: LeftModule<R>,
{
    a.check_compatible(b)?;
    require_regular(b, "b")?;
    if !module.contains(x) || !module.contains(y) {
        return Err(Error::precondition("x and y must be elements of the module"));
    }
    require_left_coprime(a, b)?;
    if module.act(a, x)? != module.act(b, y)? {
        return Err(Error::precondition("a*x and b*y differ"));
    }

    let (a_eff, shift, lcm) = shifted_right_lcm(a, b, opts)?;
    let y_eff = match &shift {
        Some(q0) => module.add(y, &module.act(q0, x)?),
        None => y.clone(),
    };
    let (a1, b1, m) = (lcm.a1, lcm.b1, lcm.m);

    // u*b1 + v*a1 = d with d a unit, rescaled to 1
    let g = R::gcd(&b1, &a1, Side::Right)?;
    let d_inv = R::exact_quotient(&a_eff.one_like(), &g.d, Side::Left)
        .ok_or_else(|| Error::Inconsistent(format!("gcd {} of the lcm cofactors is not a unit", g.d)))?;
    let mut u = d_inv.times(&g.u);
    let mut v = d_inv.times(&g.v);

    // u + lambda*a and v - lambda*b keep the Bezout identity since a*b1 = b*a1
    if !(u.is_regular() && v.is_regular()) {
        let lambda = regularize_pair(&u, &a_eff, &v, &b.negate(), Side::Left, opts.budget, opts.seed)?;
        u = u.plus(&lambda.times(&a_eff));
        v = v.minus(&lambda.times(b));
    }

    let one = a_eff.one_like();
    let p = R::exact_quotient(&a1.times(&u), &a_eff, Side::Left)
        .ok_or_else(|| Error::Inconsistent("a1*u is not a left multiple of a".into()))?;
    let q = R::exact_quotient(&one.minus(&b1.times(&u)), &a_eff, Side::Left)
        .ok_or_else(|| Error::Inconsistent("1 - b1*u is not a left multiple of a".into()))?;

    let trace = WitnessTrace {
        u_regular: u.is_regular(),
        v_regular: v.is_regular(),
        a: a_eff,
        b: b.clone(),
        shift,
        m,
        a1,
        b1,
        u,
        v,
        p,
        q,
    };
    if let Some((name, _)) = trace.identities().iter().find(|(_, ok)| !ok) {
        return Err(Error::Inconsistent(format!("witness identity {name} fails")));
    }

    let z = module.add(&module.act(&trace.u, x)?, &module.act(&trace.v, &y_eff)?);
    if module.act(&trace.b1, &z)? != *x || module.act(&trace.input_a1(), &z)? != *y {
        return Err(Error::Inconsistent("witness does not reproduce x and y".into()));
    }
    Ok((z, trace))
}

/// A failed trial, replayable from its seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFailure {
    pub seed: u64,
    pub inputs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<TrialFailure>,
}

impl IntersectionReport {
    pub fn all_passed(&self) -> bool {
        self.passes == self.trials
    }
}

/// Per-trial seed derived from a run seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

/// Checks `mV ⊆ aV ∩ bV` on random `z` and the reverse inclusion through
/// [`thm33_witness`].
pub fn intersection_check<R, M>(
    a: &R,
    b: &R,
    module: &M,
    trials: usize,
    seed: u64,
    shape: &OperatorShape,
) -> Result<IntersectionReport>
where
    R: OreRing,
    M: LeftModule<R>,
{
    a.check_compatible(b)?;
    require_regular(b, "b")?;
    require_left_coprime(a, b)?;
    let opts = SearchOptions::with_seed(seed);
    let (_, shift, lcm) = shifted_right_lcm(a, b, &opts)?;
    let b1 = lcm.b1;
    let a1 = match &shift {
        Some(q0) => lcm.a1.minus(&q0.times(&b1)),
        None => lcm.a1,
    };
    let m = b.times(&a1);

    let mut report = IntersectionReport {
        trials,
        passes: 0,
        failures: Vec::new(),
    };
    for t in 0..trials {
        let s = trial_seed(seed, t);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let z = module.random_element(&mut rng, shape);
        let outcome = (|| -> Result<bool> {
            let x = module.act(&b1, &z)?;
            let y = module.act(&a1, &z)?;
            let mz = module.act(&m, &z)?;
            if module.act(a, &x)? != mz || module.act(b, &y)? != mz {
                return Ok(false);
            }
            let (w, _) = thm33_witness(a, b, &x, &y, module, &SearchOptions::with_seed(s))?;
            Ok(module.act(&b1, &w)? == x && module.act(&a1, &w)? == y)
        })();
        if matches!(outcome, Ok(true)) {
            report.passes += 1;
        } else {
            report.failures.push(TrialFailure {
                seed: s,
                inputs: format!("a = {a}; b = {b}; z = {}", module.render(&z)),
            });
        }
    }
    Ok(report)
}

/// Given `a* x = eps * b* y` with `a*b = eps * b* a`, `a`, `b` right coprime
/// and `b` regular, finds `z` with `x = b*z` and `y = a*z`.
pub fn cor34_witness<R, M>(
    a: &R,
    b: &R,
    x: &M::Elem,
    y: &M::Elem,
    eps: &R::Scalar,
    module: &M,
    opts: &SearchOptions,
) -> Result<M::Elem>
where
    R: OreRing,
    M: LeftModule<R>,
{
    a.check_compatible(b)?;
    if eps.is_zero() {
        return Err(Error::precondition("epsilon must be nonzero"));
    }
    require_regular(b, "b")?;
    require_right_coprime(a, b)?;
    let (sa, sb) = (a.adjoint(), b.adjoint());
    if sa.times(b) != sb.times(a).scale(eps) {
        return Err(Error::precondition(format!("adjoint(a)*b != {eps}*adjoint(b)*a")));
    }
    let eps_y = module.scale(eps, y);
    if module.act(&sa, x)? != module.act(&sb, &eps_y)? {
        return Err(Error::precondition(format!("adjoint(a)*x != {eps}*adjoint(b)*y")));
    }

    let (z, trace) = thm33_witness(&sa, &sb, x, &eps_y, module, opts)?;
    // b1 = b*w for a unit w, since adjoint(a)*b is already the lcm
    let w = R::exact_quotient(&trace.b1, b, Side::Right)
        .ok_or_else(|| Error::Inconsistent("lcm cofactor is not a right multiple of b".into()))?;
    let z = module.act(&w, &z)?;
    if module.act(b, &z)? != *x || module.act(a, &z)? != *y {
        return Err(Error::Inconsistent("adjoint witness does not reproduce x and y".into()));
    }
    Ok(z)
}

/// Ring-level skewness `a*b + b*a = 0`.
pub fn skew_pair_check<R: OreRing>(a: &R, b: &R) -> bool {
    skew_element(a, b).is_zero()
}

fn skew_element<R: OreRing>(a: &R, b: &R) -> R {
    a.adjoint().times(b).plus(&b.adjoint().times(a))
}

/// Skewness at both levels: as a ring element, and as an action on a module
/// with a finite basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkewReport {
    pub ring_level: bool,
    /// `None` when the module has no finite basis.
    pub module_level: Option<bool>,
}

pub fn skew_pair_report<R, M>(a: &R, b: &R, module: &M) -> Result<SkewReport>
where
    R: OreRing,
    M: LeftModule<R>,
{
    a.check_compatible(b)?;
    let s = skew_element(a, b);
    let module_level = match module.basis() {
        Some(basis) => {
            let mut zero = true;
            for e in &basis {
                zero &= module.is_zero(&module.act(&s, e)?);
            }
            Some(zero)
        }
        None => None,
    };
    Ok(SkewReport {
        ring_level: s.is_zero(),
        module_level,
    })
}

/// For skew `(a, b)` and `y1 ⊕ y2` orthogonal to `{bx ⊕ ax}`, finds `z`
/// with `y1 = b*z` and `y2 = a*z`.
pub fn maximal_isotropy_witness<R, M>(
    a: &R,
    b: &R,
    y1: &M::Elem,
    y2: &M::Elem,
    module: &M,
    opts: &SearchOptions,
) -> Result<M::Elem>
where
    R: OreRing,
    M: LeftModule<R>,
{
    a.check_compatible(b)?;
    if !skew_pair_check(a, b) {
        return Err(Error::precondition("a*b + b*a is not zero"));
    }
    let residue = module.add(&module.act(&a.adjoint(), y1)?, &module.act(&b.adjoint(), y2)?);
    if !module.is_zero(&residue) {
        return Err(Error::precondition("y1 + y2 is not orthogonal to the subgroup"));
    }
    let minus_one = -<R::Scalar as One>::one();
    cor34_witness(a, b, y1, y2, &minus_one, module, opts)
}

/// A class in `K/DK`, stored as its Hermite residue part.
#[derive(Clone, Debug, PartialEq)]
pub struct KModClass<F> {
    representative: RatFunc<F>,
}

impl<F: Scalar> KModClass<F> {
    pub fn of(g: &RatFunc<F>) -> Self {
        KModClass {
            representative: hermite_reduce(g).residue_part,
        }
    }

    pub fn zero() -> Self {
        KModClass {
            representative: RatFunc::zero(),
        }
    }

    pub fn representative(&self) -> &RatFunc<F> {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

impl<F: Scalar> Add for KModClass<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        KModClass::of(&(self.representative + rhs.representative))
    }
}

impl<F: Scalar> fmt::Display for KModClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

/// The class of `sum x_i*y_i` in `K/DK`.
pub fn pairing_class<F: Scalar>(x: &[RatFunc<F>], y: &[RatFunc<F>]) -> Result<KModClass<F>> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let s = x.iter().zip(y).fold(RatFunc::zero(), |acc, (a, b)| acc + a * b);
    Ok(KModClass::of(&s))
}

/// `<x1 ⊕ x2 | y1 ⊕ y2> = (x1, y2) + (x2, y1)`.
pub fn extended_pairing<F: Scalar>(
    x1: &[RatFunc<F>],
    x2: &[RatFunc<F>],
    y1: &[RatFunc<F>],
    y2: &[RatFunc<F>],
) -> Result<KModClass<F>> {
    Ok(pairing_class(x1, y2)? + pairing_class(x2, y1)?)
}

/// `<bx ⊕ ax | bx' ⊕ ax'>`, which vanishes for skew pairs.
pub fn isotropy_class<F, R>(
    a: &R,
    b: &R,
    x: &[RatFunc<F>],
    x2: &[RatFunc<F>],
) -> Result<KModClass<F>>
where
    F: Scalar,
    R: OreRing<Scalar = F>,
    NaturalModule: LeftModule<R, Elem = Vec<RatFunc<F>>>,
{
    let v = NaturalModule::new(x.len())?;
    let (x, x2) = (x.to_vec(), x2.to_vec());
    extended_pairing(&v.act(b, &x)?, &v.act(a, &x)?, &v.act(b, &x2)?, &v.act(a, &x2)?)
}

fn clear_denominators<F: Scalar>(b: &OrePoly<F>) -> OrePoly<F> {
    let l = b.coeffs().iter().fold(Poly::one(), |l, c| {
        let g = l.gcd(c.den());
        (&l * c.den()).exact_div(&g)
    });
    b.left_scale(&RatFunc::from_poly(l))
}

/// Basis of the polynomial solutions of `b*p = 0` with `deg p <= n`.
///
/// The basis is monic, sorted by degree, and reduced: no basis element
/// contains the leading monomial of another.
pub fn kernel_polynomial<F: Scalar>(b: &OrePoly<F>, n: usize) -> Result<Vec<Poly<F>>> {
    if b.is_zero() {
        return Err(Error::DegenerateInput("kernel of the zero operator"));
    }
    let b = clear_denominators(b);
    let images: Vec<Poly<F>> = (0..=n)
        .map(|k| {
            let r = b.apply(&RatFunc::from_poly(Poly::monomial(F::one(), k)));
            debug_assert!(r.is_polynomial());
            r.num().clone()
        })
        .collect();
    let height = images.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    let rows: Vec<Vec<F>> = (0..height)
        .map(|i| images.iter().map(|p| p.coeff(i)).collect())
        .collect();
    let sols: Vec<Poly<F>> = linalg::nullspace(rows, n + 1)
        .into_iter()
        .map(Poly::new)
        .collect();
    Ok(linalg::canonical_span(&sols))
}

/// Polynomial kernels of `a`, `b` and their right gcd `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelGcdReport<F> {
    pub d: OrePoly<F>,
    pub kernel_a: Vec<Poly<F>>,
    pub kernel_b: Vec<Poly<F>>,
    pub intersection: Vec<Poly<F>>,
    pub kernel_d: Vec<Poly<F>>,
    /// `ker a ∩ ker b = ker d` as spans.
    pub holds: bool,
}

pub fn kernel_gcd_check<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, n: usize) -> Result<KernelGcdReport<F>> {
    let d = orepoly::gcd_extended(a, b, Side::Right)?.d;
    let kernel_a = kernel_polynomial(a, n)?;
    let kernel_b = kernel_polynomial(b, n)?;
    let kernel_d = kernel_polynomial(&d, n)?;
    let intersection = linalg::span_intersection(&kernel_a, &kernel_b);
    Ok(KernelGcdReport {
        holds: intersection == kernel_d,
        d,
        kernel_a,
        kernel_b,
        intersection,
        kernel_d,
    })
}

/// Polynomial kernels of `b` and of the lcm cofactor `b1`, and the image of
/// the latter under `a1`, for `m = a*b1 = b*a1`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelImageReport<F> {
    pub a1: OrePoly<F>,
    pub b1: OrePoly<F>,
    pub kernel_b: Vec<Poly<F>>,
    pub kernel_b1: Vec<Poly<F>>,
    /// `a1(ker b1)`; `None` if some image is not a polynomial.
    pub image: Option<Vec<Poly<F>>>,
    /// Both kernels have full dimension `order`.
    pub complete: bool,
    /// `a1(ker b1) = ker b` as spans.
    pub holds: bool,
}

pub fn kernel_image_check<F: Scalar>(a: &OrePoly<F>, b: &OrePoly<F>, n: usize) -> Result<KernelImageReport<F>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::precondition("kernel image check needs nonzero a and b"));
    }
    require_left_coprime(a, b)?;
    let lcm = orepoly::lcm(a, b, Side::Right)?;
    let kernel_b = kernel_polynomial(b, n)?;
    let kernel_b1 = kernel_polynomial(&lcm.b1, n)?;
    let image: Option<Vec<Poly<F>>> = kernel_b1
        .iter()
        .map(|p| {
            let r = lcm.a1.apply(&RatFunc::from_poly(p.clone()));
            r.is_polynomial().then(|| r.num().clone())
        })
        .collect::<Option<Vec<_>>>()
        .map(|img| linalg::canonical_span(&img));
    let complete = Some(kernel_b.len()) == b.order() && Some(kernel_b1.len()) == lcm.b1.order();
    Ok(KernelImageReport {
        holds: image.as_ref() == Some(&kernel_b),
        a1: lcm.a1,
        b1: lcm.b1,
        kernel_b,
        kernel_b1,
        image,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Op = OrePoly<Rational>;
    type Rf = RatFunc<Rational>;

    fn d() -> Op {
        Op::d()
    }

    fn x() -> Op {
        Op::x()
    }

    fn c(n: i64) -> Op {
        Op::from_i64(n)
    }

    fn rf_x() -> Rf {
        Rf::x()
    }

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(cs)
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    const V: NaturalModule = NaturalModule { dim: 1 };

    #[test]
    fn natural_action() {
        let x2 = vec![rf_x().pow(2)];
        assert_eq!(V.act(&d(), &x2).unwrap(), vec![rf_x().scale(&r(2))]);
        assert_eq!(V.act(&Op::one(), &x2).unwrap(), x2);
        let v2 = NaturalModule::new(2).unwrap();
        let err = LeftModule::<Op>::act(&v2, &d(), &vec![Rf::one(), Rf::one()]);
        assert!(matches!(err, Err(Error::KindMismatch(_))));
        let m = OreMatrix::diag(vec![d(), x()]);
        let col = vec![rf_x(), rf_x()];
        assert_eq!(v2.act(&m, &col).unwrap(), vec![Rf::one(), rf_x().pow(2)]);
    }

    #[test]
    fn cyclic_action() {
        let v = CyclicModule::new(d().pow(2)).unwrap();
        assert_eq!(v.act(&d(), &d()).unwrap(), Op::zero());
        assert_eq!(v.act(&d(), &x()).unwrap(), &x() * &d() + c(1));
        assert!(v.contains(&d()));
        assert!(!v.contains(&d().pow(2)));
        assert_eq!(v.basis().unwrap().len(), 2);
    }

    #[test]
    fn thm33_unit_case() {
        let xv = vec![rf_x()];
        let (z, trace) = thm33_witness(&c(1), &c(1), &xv, &xv, &V, &SearchOptions::default()).unwrap();
        assert_eq!(z, xv);
        assert!(trace.verify());
    }

    #[test]
    fn thm33_with_unit_a() {
        // a = x, b = D: x * xh = D yh
        let yh = vec![Rf::one() / (rf_x() + Rf::one())];
        let xh = vec![&V.act(&d(), &yh).unwrap()[0] / &rf_x()];
        let (z, trace) = thm33_witness(&x(), &d(), &xh, &yh, &V, &SearchOptions::default()).unwrap();
        assert!(trace.verify());
        assert_eq!(V.act(&trace.b1, &z).unwrap(), xh);
        assert_eq!(V.act(&trace.a1, &z).unwrap(), yh);
    }

    #[test]
    fn thm33_rejects_bad_inputs() {
        let xv = vec![rf_x()];
        let e = thm33_witness(&d(), &d(), &xv, &xv, &V, &SearchOptions::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
        let e = thm33_witness(&c(1), &d(), &xv, &xv, &V, &SearchOptions::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn thm33_zero_a_uses_shift() {
        // a = 0, b = 1: 0 = y
        let xv = vec![rf_x()];
        let (z, trace) = thm33_witness(&Op::zero(), &c(1), &xv, &vec![Rf::zero()], &V, &SearchOptions::default()).unwrap();
        assert!(trace.shift.is_some());
        assert!(trace.verify());
        assert_eq!(trace.input_a(), Op::zero());
        assert_eq!(V.act(&trace.b1, &z).unwrap(), xv);
    }

    #[test]
    fn thm33_roundtrip_on_cyclic_module() {
        let cm = CyclicModule::new(d().pow(2) + x()).unwrap();
        let a = &x() * &d() + c(1);
        let b = d() + c(2);
        let l = orepoly::lcm(&a, &b, Side::Right).unwrap();
        let z0 = &d() * &x();
        let z0 = cm.reduce(&z0);
        let xm = cm.act(&l.b1, &z0).unwrap();
        let ym = cm.act(&l.a1, &z0).unwrap();
        let (z, trace) = thm33_witness(&a, &b, &xm, &ym, &cm, &SearchOptions::default()).unwrap();
        assert!(trace.verify());
        assert_eq!(cm.act(&trace.b1, &z).unwrap(), xm);
        assert_eq!(cm.act(&trace.a1, &z).unwrap(), ym);
    }

    #[test]
    fn thm33_on_matrices() {
        let v2 = NaturalModule::new(2).unwrap();
        let a = OreMatrix::new(vec![vec![d(), c(1)], vec![c(0), x()]]).unwrap();
        let b = OreMatrix::new(vec![vec![c(1), c(0)], vec![d(), d()]]).unwrap();
        let l = OreMatrix::matrix_lcm(&a, &b, Side::Right).unwrap();
        let z0 = vec![rf_x().pow(2), Rf::one() / rf_x()];
        let xm = v2.act(&l.b1, &z0).unwrap();
        let ym = v2.act(&l.a1, &z0).unwrap();
        let (z, trace) = thm33_witness(&a, &b, &xm, &ym, &v2, &SearchOptions::default()).unwrap();
        assert!(trace.verify());
        assert_eq!(v2.act(&trace.b1, &z).unwrap(), xm);
    }

    #[test]
    fn intersection_reports() {
        let shape = OperatorShape::default();
        let rep = intersection_check(&c(1), &c(1), &V, 5, 3, &shape).unwrap();
        assert!(rep.all_passed());
        let cm = CyclicModule::new(d().pow(3) - x()).unwrap();
        let rep = intersection_check(&(d() + x()), &(&x() * &d()), &cm, 10, 9, &shape).unwrap();
        assert_eq!(rep.passes, 10, "{:?}", rep.failures);
        let e = intersection_check(&d(), &d(), &V, 5, 0, &shape);
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn cor34_examples() {
        let eps = r(-1);
        let xv = vec![rf_x().pow(3)];
        let yv = V.act(&d(), &xv).unwrap();
        let z = cor34_witness(&d(), &c(1), &xv, &yv, &eps, &V, &SearchOptions::default()).unwrap();
        assert_eq!(z, xv);

        let z = cor34_witness(&Op::zero(), &c(1), &xv, &vec![Rf::zero()], &eps, &V, &SearchOptions::default()).unwrap();
        assert_eq!(z, xv);
        let e = cor34_witness(&Op::zero(), &c(1), &xv, &xv, &eps, &V, &SearchOptions::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn cor34_roundtrip_with_order_zero_b() {
        // a = D*b with b = x + 1
        let b = x() + c(1);
        let a = &d() * &b;
        let z0 = vec![Rf::one() / rf_x()];
        let y1 = V.act(&b, &z0).unwrap();
        let y2 = V.act(&a, &z0).unwrap();
        let z = maximal_isotropy_witness(&a, &b, &y1, &y2, &V, &SearchOptions::default()).unwrap();
        assert_eq!(V.act(&b, &z).unwrap(), y1);
        assert_eq!(V.act(&a, &z).unwrap(), y2);
        let zero = vec![Rf::zero()];
        let z = maximal_isotropy_witness(&a, &b, &zero, &zero, &V, &SearchOptions::default()).unwrap();
        assert_eq!(z, zero);
    }

    #[test]
    fn skew_pairs() {
        assert!(skew_pair_check(&d(), &c(1)));
        assert!(!skew_pair_check(&c(1), &c(1)));
        let b = &x() * &d() + c(3);
        assert!(skew_pair_check(&(&d() * &b), &b));
        let cm = CyclicModule::new(d().pow(2)).unwrap();
        let rep = skew_pair_report(&d(), &c(1), &cm).unwrap();
        assert_eq!(rep, SkewReport { ring_level: true, module_level: Some(true) });
        // -2*D^2 is nonzero but annihilates R/R*D^2
        let rep = skew_pair_report(&d(), &d(), &cm).unwrap();
        assert_eq!(rep, SkewReport { ring_level: false, module_level: Some(true) });
        let rep = skew_pair_report(&c(1), &c(1), &cm).unwrap();
        assert_eq!(rep.module_level, Some(false));
    }

    #[test]
    fn pairing_classes() {
        let inv_x = Rf::one() / rf_x();
        assert!(!pairing_class(&[inv_x.clone()], &[Rf::one()]).unwrap().is_zero());
        assert!(pairing_class(&[inv_x.clone()], &[Rf::zero()]).unwrap().is_zero());
        let h = Rf::one() / (rf_x().pow(2) + Rf::one());
        let hp = h.derive();
        let half = hp.scale(&Rational::new(1.into(), 2.into()));
        let cls = pairing_class(&[half.clone(), Rf::one()], &[Rf::one(), half]).unwrap();
        assert!(cls.is_zero());
        assert!(pairing_class(&[Rf::one()], &[Rf::one(), Rf::one()]).is_err());
    }

    #[test]
    fn isotropy_vanishes_for_skew_pairs() {
        let b = x() + c(2);
        let a = &d() * &b;
        let x1 = vec![Rf::one() / (rf_x() + Rf::one())];
        let x2 = vec![rf_x().pow(2)];
        assert!(isotropy_class(&a, &b, &x1, &x2).unwrap().is_zero());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_polynomial(&d().pow(2), 5).unwrap(), vec![p(&[1]), p(&[0, 1])]);
        assert_eq!(kernel_polynomial(&(&x() * &d() - c(1)), 5).unwrap(), vec![p(&[0, 1])]);
        let inv_x = Op::from_ratfunc(Rf::one() / rf_x());
        let b = &(d().pow(2) - (&inv_x * &d()).scale(&r(2))) + &(&inv_x * &inv_x).scale(&r(2));
        assert_eq!(kernel_polynomial(&b, 5).unwrap(), vec![p(&[0, 1]), p(&[0, 0, 1])]);
        assert!(kernel_polynomial(&Op::zero(), 3).is_err());
    }

    #[test]
    fn kernel_of_gcd() {
        // ker D^3 ∩ ker (x*D - 2)*D = span{1} = ker D
        let a = d().pow(3);
        let b = &(&x() * &d() - c(2)) * &d();
        let rep = kernel_gcd_check(&a, &b, 6).unwrap();
        assert_eq!(rep.d, d());
        assert!(rep.holds);
        assert_eq!(rep.kernel_d, vec![p(&[1])]);
    }
}
