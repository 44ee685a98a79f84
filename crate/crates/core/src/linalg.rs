//! Dense linear algebra over an exact scalar field.

use crate::poly::Poly;
use crate::scalar::Scalar;

/// Reduced row echelon form with zero rows dropped, and the pivot columns.
pub fn rref<F: Scalar>(mut rows: Vec<Vec<F>>, ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v *= inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let t = f.clone() * rows[r][j].clone();
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : M v = 0}` for `M` given by rows of length `ncols`.
pub fn nullspace<F: Scalar>(rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let (reduced, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Canonical basis of the span: monic, sorted by increasing degree, each
/// leading monomial absent from every other basis element.
pub fn canonical_span<F: Scalar>(polys: &[Poly<F>]) -> Vec<Poly<F>> {
    let width = polys.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    let rows: Vec<Vec<F>> = polys
        .iter()
        .map(|p| (0..width).rev().map(|i| p.coeff(i)).collect())
        .collect();
    let (reduced, _) = rref(rows, width);
    let mut basis: Vec<Poly<F>> = reduced
        .into_iter()
        .map(|row| Poly::new(row.into_iter().rev().collect()))
        .collect();
    basis.reverse();
    basis
}

/// Canonical basis of `span(u) ∩ span(w)`.
pub fn span_intersection<F: Scalar>(u: &[Poly<F>], w: &[Poly<F>]) -> Vec<Poly<F>> {
    let width = u.iter().chain(w).filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    let n = u.len() + w.len();
    // Column j of the system is u_j, then -w_j.
    let rows: Vec<Vec<F>> = (0..width)
        .map(|i| {
            u.iter()
                .map(|p| p.coeff(i))
                .chain(w.iter().map(|p| -p.coeff(i)))
                .collect()
        })
        .collect();
    let combos: Vec<Poly<F>> = nullspace(rows, n)
        .into_iter()
        .map(|v| {
            u.iter()
                .zip(&v)
                .fold(Poly::zero(), |acc, (p, c)| acc + p.scale(c))
        })
        .collect();
    canonical_span(&combos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_i64s(c)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let r = |n: i64| Rational::from_integer(n.into());
        let ns = nullspace(vec![vec![r(1), r(2), r(3)]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(v[0].clone() + r(2) * v[1].clone() + r(3) * v[2].clone(), r(0));
        }
    }

    #[test]
    fn canonical_basis() {
        let b = canonical_span(&[p(&[1, 1]), p(&[2, 0, 3]), p(&[0, 1])]);
        assert_eq!(b, vec![p(&[1]), p(&[0, 1]), p(&[0, 0, 1])]);
        assert!(canonical_span::<Rational>(&[Poly::zero()]).is_empty());
    }

    #[test]
    fn intersections() {
        let i = span_intersection(&[p(&[1]), p(&[0, 1])], &[p(&[0, 1]), p(&[0, 0, 1])]);
        assert_eq!(i, vec![p(&[0, 1])]);
        let i = span_intersection(&[p(&[1, 1])], &[p(&[1]), p(&[0, 0, 1])]);
        assert!(i.is_empty());
    }
}
