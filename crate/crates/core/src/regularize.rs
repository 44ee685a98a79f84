//! Searches for `q` making `a + q*b` (or `a + b*q`) regular.
//!
//! Existence is guaranteed but no construction is used; candidates come from
//! [`OreRing::search_candidate`] and every returned `q` has been checked with
//! the ring's regularity test. Running out of budget is reported as
//! [`Error::SearchExhausted`], never as a wrong answer.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::OreRing;
use crate::side::Side;

pub const DEFAULT_BUDGET: usize = 10_000;

/// `a + q*b` for `Side::Left`, `a + b*q` for `Side::Right`.
pub fn shifted<R: OreRing>(a: &R, q: &R, b: &R, side: Side) -> R {
    match side {
        Side::Left => a.plus(&q.times(b)),
        Side::Right => a.plus(&b.times(q)),
    }
}

/// The central regular element `r = 2` with `r - 1` regular, which is what
/// the two-sided search relies on in characteristic zero.
pub fn central_regular_element<R: OreRing>(like: &R) -> R {
    let two = <R::Scalar as crate::Scalar>::from_i64(2);
    like.constant_like(two)
}

pub fn regularize<R: OreRing>(a: &R, b: &R, side: Side, budget: usize, seed: u64) -> Result<R> {
    a.check_compatible(b)?;
    if !b.is_regular() {
        return Err(Error::precondition("regularize needs a regular b"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for index in 0..budget {
        let q = a.search_candidate(index, &mut rng);
        if shifted(a, &q, b, side).is_regular() {
            return Ok(q);
        }
    }
    Err(Error::SearchExhausted { budget })
}

/// One `q` making both `a1 + q*b1` and `a2 + q*b2` regular (or the right-hand
/// versions).
pub fn regularize_pair<R: OreRing>(
    a1: &R,
    b1: &R,
    a2: &R,
    b2: &R,
    side: Side,
    budget: usize,
    seed: u64,
) -> Result<R> {
    a1.check_compatible(b1)?;
    a1.check_compatible(a2)?;
    a1.check_compatible(b2)?;
    if !b1.is_regular() || !b2.is_regular() {
        return Err(Error::precondition("regularize_pair needs regular b1 and b2"));
    }
    let r = central_regular_element(a1);
    debug_assert!(r.is_regular() && r.minus(&r.one_like()).is_regular());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for index in 0..budget {
        let q = a1.search_candidate(index, &mut rng);
        if shifted(a1, &q, b1, side).is_regular() && shifted(a2, &q, b2, side).is_regular() {
            return Ok(q);
        }
    }
    Err(Error::SearchExhausted { budget })
}
