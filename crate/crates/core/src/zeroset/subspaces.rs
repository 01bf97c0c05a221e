//! Enumeration of linear and affine subspaces of `F_q^n` via reduced row echelon forms.

use rand::Rng;

use crate::gf::linalg;
use crate::gf::{Elem, Field};

use super::{checked_pow, point_from_code, AffineSpace, Point};

/// Number of `m`-dimensional subspaces of `F_q^n` (Gaussian binomial).
pub fn count_subspaces(q: u32, n: usize, m: usize) -> u128 {
    if m > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..m {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32) - 1);
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    num / den
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Every `m`-dimensional subspace, each given by its RREF basis.
pub fn all_subspaces(field: &Field, n: usize, m: usize) -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    for pivots in combinations(n, m) {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = checked_pow(field.order(), free.len());
        for code in 0..total {
            let vals = point_from_code(field, free.len(), code);
            let mut rows = vec![vec![Elem::ZERO; n]; m];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = Elem::ONE;
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                rows[r][c] = v;
            }
            out.push(rows);
        }
    }
    out
}

/// A uniformly random spanning set reduced to RREF, so equal subspaces compare equal.
pub fn random_subspace(field: &Field, n: usize, m: usize, rng: &mut impl Rng) -> Vec<Point> {
    loop {
        let mut rows: Vec<Point> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| Elem(rng.random_range(0..field.order())))
                    .collect()
            })
            .collect();
        if linalg::rref(field, &mut rows).len() == m {
            return rows;
        }
    }
}

/// The `q^{n-m}` cosets of `span(basis)`, in canonical representative order.
pub fn cosets(field: &Field, n: usize, basis: &[Point]) -> Vec<AffineSpace> {
    let complement = linalg::complete_basis(field, n, basis).expect("basis is independent");
    let count = checked_pow(field.order(), complement.len());
    (0..count)
        .map(|i| {
            let digits = point_from_code(field, complement.len(), i);
            let mut rep = vec![Elem::ZERO; n];
            for (c, v) in digits.iter().zip(&complement) {
                for (x, &y) in rep.iter_mut().zip(v) {
                    *x = field.add(*x, field.mul(*c, y));
                }
            }
            AffineSpace::new(field, rep, basis.to_vec()).expect("basis is independent")
        })
        .collect()
}

/// Every affine subspace of `F_q^n` of every dimension.
pub fn all_affine_subspaces(field: &Field, n: usize) -> Vec<AffineSpace> {
    (0..=n)
        .flat_map(|m| all_subspaces(field, n, m))
        .flat_map(|basis| cosets(field, n, &basis))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn gaussian_binomials_match_enumeration() {
        for (q, n) in [(2u64, 3usize), (3, 3), (2, 4), (4, 2), (5, 2)] {
            let f = Field::of_order(q).unwrap();
            for m in 0..=n {
                let subs = all_subspaces(&f, n, m);
                assert_eq!(subs.len() as u128, count_subspaces(f.order(), n, m));
                let distinct: HashSet<_> = subs.iter().collect();
                assert_eq!(distinct.len(), subs.len());
            }
        }
        assert_eq!(count_subspaces(3, 3, 2), 13);
    }

    #[test]
    fn affine_subspace_count_f3_cubed() {
        // 27 points, 13 lines-directions * 9, 13 planes * 3, whole space
        let f = Field::prime(3).unwrap();
        assert_eq!(all_affine_subspaces(&f, 3).len(), 27 + 13 * 9 + 13 * 3 + 1);
    }

    #[test]
    fn random_subspace_is_rref() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let all: HashSet<Vec<Point>> = all_subspaces(&f, 3, 2).into_iter().collect();
        for _ in 0..20 {
            assert!(all.contains(&random_subspace(&f, 3, 2, &mut rng)));
        }
    }
}
