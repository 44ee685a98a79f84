//! Polynomial kernels over `Q` that work on integer coefficients with one
//! common denominator, so reduction happens once per result coefficient
//! instead of once per arithmetic step.
//!
//! The gcd is multi-modular: inputs are cleared to primitive integer
//! polynomials, images modulo 31-bit primes are combined by Chinese
//! remaindering, scaled by the gcd of the leading coefficients, until the
//! candidate stabilizes and divides both inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Monic gcd of two nonzero polynomials, coefficients in ascending order.
pub(crate) fn rational_poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (a, b) = (primitive(a), primitive(b));
    if a.len() == 1 || b.len() == 1 {
        return vec![BigRational::one()];
    }
    let lc_gcd = a.last().unwrap().gcd(b.last().unwrap());

    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut degree = usize::MAX;
    let mut candidate: Option<Vec<BigInt>> = None;

    for p in primes_below(1 << 31) {
        let pb = BigInt::from(p);
        if (a.last().unwrap() % &pb).is_zero() || (b.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(&reduce(&a, p), &reduce(&b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigRational::one()];
        }
        if d > degree {
            continue;
        }
        let scale = lc_gcd.mod_floor(&pb).to_u64().unwrap();
        let image: Vec<u64> = g.iter().map(|c| mul_mod(*c, scale, p)).collect();
        if d < degree {
            degree = d;
            modulus = pb;
            acc = image.into_iter().map(BigInt::from).collect();
            candidate = None;
            continue;
        }
        acc = crt(&acc, &modulus, &image, p);
        modulus *= &pb;
        let lifted: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus)).collect();
        if candidate.as_ref() == Some(&lifted) {
            let h = primitive_int(&lifted);
            if divides(&h, &a) && divides(&h, &b) {
                return monic_rational(&h);
            }
        }
        candidate = Some(lifted);
    }
    unreachable!("ran out of 31-bit primes")
}

/// `p = ints / den` with `den > 0`.
fn clear(p: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (ints, den)
}

fn over(ints: &[BigInt], den: &BigInt) -> Vec<BigRational> {
    ints.iter()
        .map(|c| BigRational::new(c.clone(), den.clone()))
        .collect()
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (ai, ad) = clear(a);
    let (bi, bd) = clear(b);
    let mut out = vec![BigInt::zero(); ai.len() + bi.len() - 1];
    for (i, x) in ai.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bi.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    over(&out, &(ad * bd))
}

/// `a = q*b + r` with `deg r < deg b`, by pseudo-division on the cleared
/// numerators; `b` is nonzero and `deg a >= deg b`.
pub(crate) fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r, mut rd) = clear(a);
    let (bi, bd) = clear(b);
    let m = bi.len() - 1;
    let beta = &bi[m];
    let n = r.len() - 1;
    let mut q = vec![BigRational::zero(); n - m + 1];
    for k in (0..=n - m).rev() {
        let t = std::mem::take(&mut r[k + m]);
        if t.is_zero() {
            continue;
        }
        // r/rd - (t*bd/(rd*beta)) x^k b = (s*r - u*b' x^k) / (rd*s)
        let g = t.gcd(beta);
        let s = beta / &g;
        let u = &t / &g;
        q[k] = BigRational::new(t * &bd, &rd * beta);
        if !s.is_one() {
            for c in r[..k + m].iter_mut() {
                *c *= &s;
            }
            rd *= &s;
        }
        for (i, c) in bi[..m].iter().enumerate() {
            r[k + i] -= &u * c;
        }
    }
    r.truncate(m);
    (q, over(&r, &rd))
}

fn primitive(p: &[BigRational]) -> Vec<BigInt> {
    let den = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    primitive_int(&ints)
}

fn primitive_int(p: &[BigInt]) -> Vec<BigInt> {
    let content = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if p.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let content = content * sign;
    p.iter().map(|c| c / &content).collect()
}

fn monic_rational(p: &[BigInt]) -> Vec<BigRational> {
    let lc = p.last().unwrap().clone();
    p.iter()
        .map(|c| BigRational::new(c.clone(), lc.clone()))
        .collect()
}

/// Exact divisibility over `Q` of primitive integer polynomials, by
/// pseudo-division.
fn divides(h: &[BigInt], a: &[BigInt]) -> bool {
    let dh = h.len() - 1;
    let lc = &h[dh];
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > dh {
        let top = r.last().unwrap().clone();
        if top.is_zero() {
            r.pop();
            continue;
        }
        // Gauss: h primitive, so h | a over Q iff the division is exact over Z
        let (q, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - 1 - dh;
        for (i, c) in h.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

fn reduce(p: &[BigInt], m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    p.iter().map(|c| c.mod_floor(&mb).to_u64().unwrap()).collect()
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Combines `x = acc (mod m)` with `x = image (mod p)`.
fn crt(acc: &[BigInt], m: &BigInt, image: &[u64], p: u64) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    let m_inv = inv_mod(m.mod_floor(&pb).to_u64().unwrap(), p);
    acc.iter()
        .zip(image)
        .map(|(a, &r)| {
            let a_mod = a.mod_floor(&pb).to_u64().unwrap();
            let t = mul_mod((r + p - a_mod) % p, m_inv, p);
            a + m * BigInt::from(t)
        })
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Monic gcd over `Z/p`; both inputs have nonzero leading coefficients.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let inv = inv_mod(*r1.last().unwrap(), p);
        let d1 = r1.len() - 1;
        while r0.len() > d1 {
            let c = mul_mod(*r0.last().unwrap(), inv, p);
            let shift = r0.len() - 1 - d1;
            for (i, &x) in r1.iter().enumerate() {
                r0[shift + i] = (r0[shift + i] + p - mul_mod(c, x, p)) % p;
            }
            trim(&mut r0);
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    r0.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7] {
        if n % q == 0 {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic for n < 2^32
    'witness: for a in [2u64, 7, 61] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes_below(bound: u64) -> impl Iterator<Item = u64> {
    (2..bound).rev().filter(|&n| is_prime(n))
}
