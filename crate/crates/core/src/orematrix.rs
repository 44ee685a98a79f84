//! Square matrices over `K[D]`.
//!
//! Everything here is driven by row Hermite reduction with a recorded
//! unimodular transform. Column-side operations are obtained by conjugating
//! with the adjoint `A* = transpose(entrywise adjoint)`, which reverses
//! products.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::orepoly::{divide, interleaved_integer, try_exact_quotient, OrePoly};
use crate::ratfunc::RatFunc;
use crate::ring::{Bezout, Lcm, OreRing};
use crate::scalar::Scalar;
use crate::side::Side;

#[derive(Clone, Debug, PartialEq)]
pub struct OreMatrix<F> {
    size: usize,
    entries: Vec<OrePoly<F>>,
}

/// An invertible elementary row operation.
#[derive(Clone, Debug, PartialEq)]
pub enum RowOp<F> {
    Swap(usize, usize),
    /// Left-multiplies a row by a nonzero element of `K`.
    Scale { row: usize, factor: RatFunc<F> },
    /// `row[target] += factor * row[source]`.
    AddMultiple {
        target: usize,
        source: usize,
        factor: OrePoly<F>,
    },
}

impl<F: Scalar> RowOp<F> {
    pub fn apply(&self, rows: &mut [Vec<OrePoly<F>>]) {
        match self {
            RowOp::Swap(a, b) => rows.swap(*a, *b),
            RowOp::Scale { row, factor } => {
                for e in rows[*row].iter_mut() {
                    *e = e.left_scale(factor);
                }
            }
            RowOp::AddMultiple { target, source, factor } => {
                let src = rows[*source].clone();
                for (e, s) in rows[*target].iter_mut().zip(&src) {
                    if !s.is_zero() {
                        *e = &*e + &(factor * s);
                    }
                }
            }
        }
    }

    pub fn inverse(&self) -> RowOp<F> {
        match self {
            RowOp::Swap(a, b) => RowOp::Swap(*a, *b),
            RowOp::Scale { row, factor } => RowOp::Scale {
                row: *row,
                factor: factor.inv().expect("scale factors are nonzero"),
            },
            RowOp::AddMultiple { target, source, factor } => RowOp::AddMultiple {
                target: *target,
                source: *source,
                factor: -factor,
            },
        }
    }
}

/// `u * m = h` with `h` upper triangular, monic pivots and entries above
/// each pivot reduced modulo it.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteCertificate<F> {
    pub h: OreMatrix<F>,
    pub u: OreMatrix<F>,
    pub ops: Vec<RowOp<F>>,
}

impl<F: Scalar> HermiteCertificate<F> {
    /// Undoes the recorded operations on `h`, which must give back the input.
    pub fn replay_inverse(&self) -> OreMatrix<F> {
        let mut rows = self.h.to_rows();
        for op in self.ops.iter().rev() {
            op.inverse().apply(&mut rows);
        }
        OreMatrix::from_rows_unchecked(rows)
    }
}

/// Row echelon form of a rectangular grid.
pub(crate) struct Echelon<F> {
    pub h: Vec<Vec<OrePoly<F>>>,
    pub u: Vec<Vec<OrePoly<F>>>,
    pub ops: Vec<RowOp<F>>,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
}

fn identity_rows<F: Scalar>(n: usize) -> Vec<Vec<OrePoly<F>>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { OrePoly::one() } else { OrePoly::zero() }).collect())
        .collect()
}

/// Row reduction by left Euclidean division.
///
/// Pivot choice in each column: minimal order, ties broken by the lowest row
/// index.
pub(crate) fn echelon<F: Scalar>(rows: Vec<Vec<OrePoly<F>>>, ncols: usize, record: bool) -> Echelon<F> {
    let nrows = rows.len();
    let mut st = Echelon {
        h: rows,
        u: identity_rows(nrows),
        ops: Vec::new(),
        pivots: Vec::new(),
    };
    let push = |st: &mut Echelon<F>, op: RowOp<F>| {
        op.apply(&mut st.h);
        op.apply(&mut st.u);
        if record {
            st.ops.push(op);
        }
    };

    let mut r = 0;
    for j in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            let pivot = (r..nrows)
                .filter(|&i| !st.h[i][j].is_zero())
                .min_by_key(|&i| (st.h[i][j].order(), i));
            let Some(p) = pivot else { break };
            if p != r {
                push(&mut st, RowOp::Swap(r, p));
            }
            let mut clean = true;
            for i in r + 1..nrows {
                if st.h[i][j].is_zero() {
                    continue;
                }
                let q = divide(&st.h[i][j], &st.h[r][j], Side::Left)
                    .expect("pivot is nonzero")
                    .quotient;
                if !q.is_zero() {
                    push(
                        &mut st,
                        RowOp::AddMultiple {
                            target: i,
                            source: r,
                            factor: -q,
                        },
                    );
                }
                clean &= st.h[i][j].is_zero();
            }
            if clean {
                break;
            }
        }
        if st.h[r][j].is_zero() {
            continue;
        }
        let lc = st.h[r][j].leading_coeff().unwrap().clone();
        if !lc.is_one() {
            push(
                &mut st,
                RowOp::Scale {
                    row: r,
                    factor: lc.inv().unwrap(),
                },
            );
        }
        for i in 0..r {
            if st.h[i][j].is_zero() {
                continue;
            }
            let q = divide(&st.h[i][j], &st.h[r][j], Side::Left).unwrap().quotient;
            if !q.is_zero() {
                push(
                    &mut st,
                    RowOp::AddMultiple {
                        target: i,
                        source: r,
                        factor: -q,
                    },
                );
            }
        }
        st.pivots.push(j);
        r += 1;
    }
    st
}

/// Solves `x * h = c` row by row for `h` in echelon form.
fn solve_echelon<F: Scalar>(
    h: &[Vec<OrePoly<F>>],
    pivots: &[usize],
    c: &[Vec<OrePoly<F>>],
) -> Option<Vec<Vec<OrePoly<F>>>> {
    let mut out = Vec::with_capacity(c.len());
    for row in c {
        let mut residual = row.clone();
        let mut x = vec![OrePoly::zero(); h.len()];
        for (k, &j) in pivots.iter().enumerate() {
            if residual[j].is_zero() {
                continue;
            }
            let coef = try_exact_quotient(&residual[j], &h[k][j], Side::Left)?;
            for (res, hk) in residual.iter_mut().zip(&h[k]) {
                if !hk.is_zero() {
                    *res = &*res - &(&coef * hk);
                }
            }
            x[k] = coef;
        }
        if residual.iter().any(|e| !e.is_zero()) {
            return None;
        }
        out.push(x);
    }
    Some(out)
}

fn mul_rows<F: Scalar>(a: &[Vec<OrePoly<F>>], b: &[Vec<OrePoly<F>>]) -> Vec<Vec<OrePoly<F>>> {
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|arow| {
            (0..ncols)
                .map(|j| {
                    let mut acc = OrePoly::zero();
                    for (k, aik) in arow.iter().enumerate() {
                        if !aik.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(aik * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

impl<F: Scalar> OreMatrix<F> {
    pub fn new(rows: Vec<Vec<OrePoly<F>>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::DegenerateInput("matrix size must be at least 1"));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::SizeMismatch {
                left: size,
                right: bad.len(),
            });
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    fn from_rows_unchecked(rows: Vec<Vec<OrePoly<F>>>) -> Self {
        let size = rows.len();
        OreMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> OrePoly<F>) -> Self {
        assert!(size > 0, "matrix size must be at least 1");
        let entries = (0..size * size).map(|k| f(k / size, k % size)).collect();
        OreMatrix { size, entries }
    }

    pub fn zero(size: usize) -> Self {
        Self::from_fn(size, |_, _| OrePoly::zero())
    }

    pub fn identity(size: usize) -> Self {
        Self::scalar(size, OrePoly::one())
    }

    /// `c * I`.
    pub fn scalar(size: usize, c: OrePoly<F>) -> Self {
        Self::from_fn(size, |i, j| if i == j { c.clone() } else { OrePoly::zero() })
    }

    pub fn diag(entries: Vec<OrePoly<F>>) -> Self {
        let n = entries.len();
        Self::from_fn(n, |i, j| if i == j { entries[i].clone() } else { OrePoly::zero() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &OrePoly<F> {
        &self.entries[i * self.size + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<OrePoly<F>>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(OrePoly::is_zero)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(OreMatrix {
            size: self.size,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self::from_rows_unchecked(mul_rows(&self.to_rows(), &other.to_rows())))
    }

    pub fn scale(&self, c: &F) -> Self {
        OreMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(j, i).clone())
    }

    /// Transpose with every entry replaced by its formal adjoint.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(j, i).adjoint())
    }

    /// Row Hermite form with its unimodular transform and operation log.
    pub fn row_hermite(&self) -> HermiteCertificate<F> {
        let e = echelon(self.to_rows(), self.size, true);
        HermiteCertificate {
            h: Self::from_rows_unchecked(e.h),
            u: Self::from_rows_unchecked(e.u),
            ops: e.ops,
        }
    }

    fn hermite_diagonal(&self) -> Vec<OrePoly<F>> {
        let e = echelon(self.to_rows(), self.size, false);
        (0..self.size).map(|i| e.h[i][i].clone()).collect()
    }

    /// Regular iff the Hermite form has no zero on the diagonal.
    pub fn is_regular(&self) -> bool {
        self.hermite_diagonal().iter().all(|d| !d.is_zero())
    }

    /// Degree of the Dieudonné determinant: the sum of the orders on the
    /// Hermite diagonal, or `None` for a singular matrix.
    pub fn ddet_degree(&self) -> Option<usize> {
        self.hermite_diagonal().iter().map(OrePoly::order).sum()
    }

    /// `X` with `X * a = c`, if one exists.
    pub fn solve_left(c: &Self, a: &Self) -> Option<Self> {
        let e = echelon(a.to_rows(), a.size, false);
        let y = solve_echelon(&e.h, &e.pivots, &c.to_rows())?;
        Some(Self::from_rows_unchecked(mul_rows(&y, &e.u)))
    }

    /// `X` with `a * X = c`, if one exists.
    pub fn solve_right(c: &Self, a: &Self) -> Option<Self> {
        Self::solve_left(&c.adjoint(), &a.adjoint()).map(|x| x.adjoint())
    }

    /// Stacks `[a; b]` and row-reduces it with a `2l x 2l` unimodular
    /// transform, returned as `(h, u)` grids.
    fn stacked_echelon(a: &Self, b: &Self) -> Echelon<F> {
        let mut rows = a.to_rows();
        rows.extend(b.to_rows());
        echelon(rows, a.size, false)
    }

    fn block(rows: &[Vec<OrePoly<F>>], r0: usize, c0: usize, n: usize) -> Self {
        Self::from_fn(n, |i, j| rows[r0 + i][c0 + j].clone())
    }

    fn right_gcd(a: &Self, b: &Self) -> Result<Bezout<Self>> {
        let n = a.size;
        let e = Self::stacked_echelon(a, b);
        let d = Self::block(&e.h, 0, 0, n);
        let x = Self::block(&e.u, 0, 0, n);
        let y = Self::block(&e.u, 0, n, n);
        let top: Vec<_> = e.h[..n].to_vec();
        let pivots = &e.pivots;
        let solve = |m: &Self| {
            solve_echelon(&top, pivots, &m.to_rows())
                .map(Self::from_rows_unchecked)
                .ok_or_else(|| Error::Inconsistent("gcd does not divide its inputs".into()))
        };
        Ok(Bezout {
            a1: solve(a)?,
            b1: solve(b)?,
            d,
            u: x,
            v: y,
            side: Side::Right,
        })
    }

    /// Matrix gcd with Bezout cofactors.
    ///
    /// Right: `u*a + v*b = d` from the stacked row reduction. Left: the same
    /// on adjoints, so `a*u + b*v = d`.
    pub fn matrix_gcd(a: &Self, b: &Self, side: Side) -> Result<Bezout<Self>> {
        a.check_size(b)?;
        match side {
            Side::Right => Self::right_gcd(a, b),
            Side::Left => {
                let g = Self::right_gcd(&a.adjoint(), &b.adjoint())?;
                Ok(Bezout {
                    d: g.d.adjoint(),
                    u: g.u.adjoint(),
                    v: g.v.adjoint(),
                    a1: g.a1.adjoint(),
                    b1: g.b1.adjoint(),
                    side: Side::Left,
                })
            }
        }
    }

    /// Syzygy rows of `[a; b]`: `(s, t)` with `s*a + t*b = 0` generating all
    /// such pairs. Needs the stacked matrix to have full column rank.
    fn syzygy(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let n = a.size;
        let e = Self::stacked_echelon(a, b);
        if e.pivots.len() < n {
            return Err(Error::MinimalityUnavailable("stacked matrix is rank deficient"));
        }
        Ok((Self::block(&e.u, n, 0, n), Self::block(&e.u, n, n, n)))
    }

    fn left_lcm(a: &Self, b: &Self) -> Result<Lcm<Self>> {
        let (s, t) = Self::syzygy(a, b)?;
        let m = s.checked_mul(a)?;
        // canonical representative: W*m in Hermite form
        let cert = m.row_hermite();
        Ok(Lcm {
            m: cert.h,
            b1: cert.u.checked_mul(&s)?,
            a1: -&cert.u.checked_mul(&t)?,
            side: Side::Left,
        })
    }

    /// Matrix lcm for regular inputs.
    ///
    /// Left: `m = b1*a = a1*b` generates `Ra ∩ Rb`. Right: `m = a*b1 = b*a1`.
    pub fn matrix_lcm(a: &Self, b: &Self, side: Side) -> Result<Lcm<Self>> {
        a.check_size(b)?;
        if !a.is_regular() || !b.is_regular() {
            return Err(Error::MinimalityUnavailable("lcm inputs must be regular"));
        }
        let cert = match side {
            Side::Left => Self::left_lcm(a, b)?,
            Side::Right => {
                let l = Self::left_lcm(&a.adjoint(), &b.adjoint())?;
                Lcm {
                    m: l.m.adjoint(),
                    a1: l.a1.adjoint(),
                    b1: l.b1.adjoint(),
                    side: Side::Right,
                }
            }
        };
        let (via_a, via_b) = match side {
            Side::Left => (cert.b1.checked_mul(a)?, cert.a1.checked_mul(b)?),
            Side::Right => (a.checked_mul(&cert.b1)?, b.checked_mul(&cert.a1)?),
        };
        if via_a != cert.m || via_b != cert.m {
            return Err(Error::Inconsistent("matrix lcm certificate does not verify".into()));
        }
        Ok(cert)
    }

    /// Ore witness for regular `b` (see [`OreRing::ore_witness`]).
    pub fn ore_witness(a: &Self, b: &Self, side: Side) -> Result<(Self, Self)> {
        a.check_size(b)?;
        if !b.is_regular() {
            return Err(Error::precondition("Ore witness needs a regular denominator"));
        }
        match side {
            Side::Left => {
                let (s, t) = Self::syzygy(a, b)?;
                Ok((-&t, s))
            }
            Side::Right => {
                let (s, t) = Self::syzygy(&a.adjoint(), &b.adjoint())?;
                Ok(((-&t).adjoint(), s.adjoint()))
            }
        }
    }
}

impl<F: Scalar> Add for &OreMatrix<F> {
    type Output = OreMatrix<F>;
    fn add(self, rhs: &OreMatrix<F>) -> OreMatrix<F> {
        self.checked_add(rhs).expect("matrix sizes differ")
    }
}

impl<F: Scalar> Sub for &OreMatrix<F> {
    type Output = OreMatrix<F>;
    fn sub(self, rhs: &OreMatrix<F>) -> OreMatrix<F> {
        self.checked_sub(rhs).expect("matrix sizes differ")
    }
}

impl<F: Scalar> Mul for &OreMatrix<F> {
    type Output = OreMatrix<F>;
    fn mul(self, rhs: &OreMatrix<F>) -> OreMatrix<F> {
        self.checked_mul(rhs).expect("matrix sizes differ")
    }
}

impl<F: Scalar> Neg for &OreMatrix<F> {
    type Output = OreMatrix<F>;
    fn neg(self) -> OreMatrix<F> {
        OreMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl<F: Scalar> fmt::Display for OreMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.size).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Number of leading candidates that are multiples of the identity.
const SCALAR_CANDIDATES: usize = 5;
/// Candidates below this index (after the deterministic sweeps) are random
/// constant matrices; later ones have entries of order one.
const RANDOM_CONSTANT_LIMIT: usize = 5000;

fn sign_pattern<F: Scalar>(size: usize, mut k: usize) -> OreMatrix<F> {
    let mut diag = Vec::with_capacity(size);
    for _ in 0..size {
        diag.push(OrePoly::from_i64((k % 3) as i64 - 1));
        k /= 3;
    }
    OreMatrix::diag(diag)
}

impl<F: Scalar> OreRing for OreMatrix<F> {
    type Scalar = F;

    fn zero_like(&self) -> Self {
        Self::zero(self.size)
    }

    fn one_like(&self) -> Self {
        Self::identity(self.size)
    }

    fn constant_like(&self, c: F) -> Self {
        Self::scalar(self.size, OrePoly::constant(c))
    }

    fn is_zero(&self) -> bool {
        OreMatrix::is_zero(self)
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
        OreMatrix::scale(self, c)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.check_size(other)
    }

    fn is_regular(&self) -> bool {
        OreMatrix::is_regular(self)
    }

    fn is_unit(&self) -> bool {
        self.ddet_degree() == Some(0)
    }

    fn degree(&self) -> Option<usize> {
        self.ddet_degree()
    }

    fn adjoint(&self) -> Self {
        OreMatrix::adjoint(self)
    }

    fn gcd(a: &Self, b: &Self, side: Side) -> Result<Bezout<Self>> {
        Self::matrix_gcd(a, b, side)
    }

    fn lcm(a: &Self, b: &Self, side: Side) -> Result<Lcm<Self>> {
        Self::matrix_lcm(a, b, side)
    }

    fn ore_witness(a: &Self, b: &Self, side: Side) -> Result<(Self, Self)> {
        OreMatrix::ore_witness(a, b, side)
    }

    fn exact_quotient(c: &Self, a: &Self, side: Side) -> Option<Self> {
        match side {
            Side::Left => Self::solve_left(c, a),
            Side::Right => Self::solve_right(c, a),
        }
    }

    /// Left: row Hermite form. Right: the column form obtained through the
    /// adjoint, with its diagonal rescaled to be monic.
    fn normalize_unit(&self, side: Side) -> (Self, Self) {
        match side {
            Side::Left => {
                let cert = self.row_hermite();
                (cert.h, cert.u)
            }
            Side::Right => {
                let cert = self.adjoint().row_hermite();
                let h = cert.h.adjoint();
                let signs = Self::diag(
                    (0..self.size)
                        .map(|i| match h.get(i, i).leading_coeff() {
                            Some(lc) => OrePoly::from_ratfunc(lc.inv().unwrap()),
                            None => OrePoly::one(),
                        })
                        .collect(),
                );
                (&h * &signs, &cert.u.adjoint() * &signs)
            }
        }
    }

    /// Multiples of the identity, diagonal sign patterns, random constant
    /// matrices with entries in -3..=3, then random entries of order one.
    fn search_candidate<G: Rng>(&self, index: usize, rng: &mut G) -> Self {
        let n = self.size;
        if index < SCALAR_CANDIDATES {
            return Self::scalar(n, OrePoly::from_i64(interleaved_integer(index)));
        }
        let patterns = 3usize.pow(n.min(12) as u32);
        let index = index - SCALAR_CANDIDATES;
        if index < patterns {
            return sign_pattern(n, index);
        }
        if index < RANDOM_CONSTANT_LIMIT {
            return Self::from_fn(n, |_, _| OrePoly::from_i64(rng.gen_range(-3..=3)));
        }
        Self::from_fn(n, |_, _| {
            let c0 = RatFunc::from_i64(rng.gen_range(-3..=3));
            let c1 = RatFunc::from_i64(rng.gen_range(-3..=3));
            OrePoly::new(vec![c0, c1])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Op = OrePoly<Rational>;
    type M = OreMatrix<Rational>;

    fn d() -> Op {
        Op::d()
    }

    fn m(rows: Vec<Vec<Op>>) -> M {
        M::new(rows).unwrap()
    }

    fn z() -> Op {
        Op::zero()
    }

    fn one() -> Op {
        Op::one()
    }

    #[test]
    fn identities() {
        let a = m(vec![vec![d(), Op::x()], vec![one(), d().pow(2)]]);
        let i = M::identity(2);
        assert_eq!(&a * &i, a);
        assert_eq!(&i * &a, a);
        let lhs = &m(vec![vec![d(), z()], vec![z(), one()]]) * &m(vec![vec![Op::x(), z()], vec![z(), one()]]);
        let xd1 = &Op::monomial(RatFunc::x(), 1) + &one();
        assert_eq!(lhs, m(vec![vec![xd1, z()], vec![z(), one()]]));
    }

    #[test]
    fn size_mismatch() {
        assert!(matches!(
            M::identity(2).checked_mul(&M::identity(3)),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(M::new(vec![vec![one(), z()]]).is_err());
    }

    #[test]
    fn hermite_examples() {
        let cert = M::identity(2).row_hermite();
        assert_eq!(cert.h, M::identity(2));
        assert_eq!(cert.u, M::identity(2));

        let swap = m(vec![vec![z(), one()], vec![one(), z()]]);
        let cert = swap.row_hermite();
        assert_eq!(cert.h, M::identity(2));
        assert_eq!(cert.u, swap);

        let a = m(vec![vec![d(), Op::x()], vec![one(), d()]]);
        let cert = a.row_hermite();
        assert_eq!(&cert.u * &a, cert.h);
        assert!(cert.h.get(1, 0).is_zero());
        assert_eq!(a.ddet_degree(), Some(2));
        assert_eq!(cert.replay_inverse(), a);
        // corner entry is x - D^2 up to a unit
        assert_eq!(cert.h.get(1, 1).order(), Some(2));
    }

    #[test]
    fn regularity_and_degree() {
        assert!(M::identity(2).is_regular());
        assert!(!M::zero(2).is_regular());
        assert!(!m(vec![vec![d(), d()], vec![d(), d()]]).is_regular());
        assert_eq!(M::diag(vec![d(), d().pow(2)]).ddet_degree(), Some(3));
        assert_eq!(m(vec![vec![z(), one()], vec![one(), z()]]).ddet_degree(), Some(0));
        assert_eq!(M::zero(2).ddet_degree(), None);
    }

    #[test]
    fn gcd_examples() {
        let i = M::identity(2);
        let g = M::matrix_gcd(&i, &i, Side::Right).unwrap();
        assert_eq!(g.d, i);

        let a = M::diag(vec![d().pow(2), d()]);
        let b = M::diag(vec![d(), d()]);
        for side in [Side::Left, Side::Right] {
            let g = M::matrix_gcd(&a, &b, side).unwrap();
            match side {
                Side::Right => {
                    assert_eq!(&(&g.u * &a) + &(&g.v * &b), g.d);
                    assert_eq!(&g.a1 * &g.d, a);
                    assert_eq!(&g.b1 * &g.d, b);
                }
                Side::Left => {
                    assert_eq!(&(&a * &g.u) + &(&b * &g.v), g.d);
                    assert_eq!(&g.d * &g.a1, a);
                    assert_eq!(&g.d * &g.b1, b);
                }
            }
            assert_eq!(g.d.ddet_degree(), Some(2));
        }

        let b = m(vec![vec![d(), Op::x()], vec![one(), d()]]);
        let g = M::matrix_gcd(&i, &b, Side::Right).unwrap();
        assert!(OreRing::is_unit(&g.d));
    }

    #[test]
    fn lcm_examples() {
        let a = M::diag(vec![d(), one()]);
        let b = M::diag(vec![&d() + &Op::x(), one()]);
        let scalar = crate::orepoly::lcm(&d(), &(&d() + &Op::x()), Side::Right).unwrap();
        for side in [Side::Left, Side::Right] {
            let l = M::matrix_lcm(&a, &b, side).unwrap();
            assert_eq!(l.m.ddet_degree(), scalar.m.order());
        }
        let l = M::matrix_lcm(&a, &a, Side::Left).unwrap();
        assert_eq!(l.m.ddet_degree(), a.ddet_degree());
        assert!(matches!(
            M::matrix_lcm(&a, &M::zero(2), Side::Left),
            Err(Error::MinimalityUnavailable(_))
        ));
    }

    #[test]
    fn solvers() {
        let a = m(vec![vec![d(), Op::x()], vec![one(), d()]]);
        let x = m(vec![vec![Op::x(), d()], vec![z(), &d() + &one()]]);
        let c = &x * &a;
        assert_eq!(M::solve_left(&c, &a).unwrap(), x);
        let c = &a * &x;
        assert_eq!(M::solve_right(&c, &a).unwrap(), x);
        assert!(M::solve_left(&M::identity(2), &M::diag(vec![d(), one()])).is_none());
    }

    #[test]
    fn ore_witnesses() {
        let a = m(vec![vec![d(), z()], vec![z(), z()]]);
        let b = m(vec![vec![d(), Op::x()], vec![one(), d()]]);
        let (a1, b1) = M::ore_witness(&a, &b, Side::Left).unwrap();
        assert!(b1.is_regular());
        assert_eq!(&a1 * &b, &b1 * &a);
        let (a1, b1) = M::ore_witness(&a, &b, Side::Right).unwrap();
        assert!(b1.is_regular());
        assert_eq!(&b * &a1, &a * &b1);
    }

    #[test]
    fn adjoint_reverses_products() {
        let a = m(vec![vec![d(), Op::x()], vec![one(), d()]]);
        let b = m(vec![vec![Op::x(), d()], vec![z(), &d() + &one()]]);
        assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn normalize_right_is_canonical() {
        let b = m(vec![vec![d(), Op::x()], vec![one(), d()]]);
        let w = m(vec![vec![one(), d()], vec![z(), Op::from_i64(3)]]);
        let (n1, u1) = b.normalize_unit(Side::Right);
        let (n2, _) = (&b * &w).normalize_unit(Side::Right);
        assert_eq!(n1, n2);
        assert_eq!(&b * &u1, n1);
        assert!(n1.get(0, 0).is_monic());
    }
}
