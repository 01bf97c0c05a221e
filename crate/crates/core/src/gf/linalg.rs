//! Dense linear algebra over a [`Field`]: echelon forms, rank, inverses.

use crate::error::{Error, Result};

use super::{Elem, Field};

pub type Vector = Vec<Elem>;
pub type Matrix = Vec<Vec<Elem>>;

/// Incrementally built echelon basis. Each stored row has a unit pivot whose
/// column is zero in every later row, so reduction is a single pass in
/// insertion order.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl EchelonBasis {
    pub fn new(field: &Field, dim: usize) -> Self {
        Self {
            field: field.clone(),
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[Elem]) -> Vector {
        let f = &self.field;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if !c.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was added.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(r[pivot]).expect("pivot is nonzero");
        for x in r.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push((pivot, r));
        true
    }
}

/// Reduced row echelon form; zero rows dropped. Returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, i);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (j, row) in rows.iter_mut().enumerate() {
            if j == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Elem::ONE } else { Elem::ZERO })
                .collect()
        })
        .collect()
}

pub fn mat_vec(field: &Field, m: &[Vector], v: &[Elem]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Elem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect()
}

pub fn mat_mul(field: &Field, a: &[Vector], b: &[Vector]) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(Elem::ZERO, |acc, (&x, brow)| {
                        field.add(acc, field.mul(x, brow[j]))
                    })
                })
                .collect()
        })
        .collect()
}

pub fn inverse(field: &Field, m: &[Vector]) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
        });
    }
    let mut aug: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().copied().chain(id).collect())
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Extends the independent vectors `start` to a basis of `F^n`, appending
/// standard basis vectors `e_1, e_2, ...` greedily. Returns only the added vectors.
pub fn complete_basis(field: &Field, n: usize, start: &[Vector]) -> Result<Vec<Vector>> {
    let mut ech = EchelonBasis::new(field, n);
    for v in start {
        if !ech.insert(v) {
            return Err(Error::LinearlyDependent);
        }
    }
    let mut added = Vec::new();
    for i in 0..n {
        if ech.rank() == n {
            break;
        }
        let mut e = vec![Elem::ZERO; n];
        e[i] = Elem::ONE;
        if ech.insert(&e) {
            added.push(e);
        }
    }
    Ok(added)
}
