//! Exhaustive zero sets and their affine structure.
//!
//! Points of an [`AffineSpace`] are indexed by their coefficient tuple with
//! respect to the basis, first basis vector most significant. For the full
//! space with the standard basis this is lexicographic order on coordinates,
//! which is the canonical point order used everywhere else.

pub mod subspaces;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::linalg::{self, EchelonBasis};
use crate::gf::{Elem, Field};
use crate::poly::{CompiledSystem, PolySystem};

pub type Point = Vec<Elem>;

/// Cap on point evaluations for a single enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

const CHUNK: u128 = 1 << 12;

pub(crate) fn checked_pow(q: u32, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// Canonical code of a point: coordinates as base-`q` digits, `x1` most significant.
pub fn point_code(field: &Field, point: &[Elem]) -> u128 {
    let q = field.order() as u128;
    point.iter().fold(0, |acc, x| acc * q + x.0 as u128)
}

pub fn point_from_code(field: &Field, n: usize, mut code: u128) -> Point {
    let q = field.order() as u128;
    let mut p = vec![Elem::ZERO; n];
    for x in p.iter_mut().rev() {
        *x = Elem((code % q) as u32);
        code /= q;
    }
    p
}

/// A coset `offset + span(basis)` inside `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    field: Field,
    n: usize,
    offset: Point,
    basis: Vec<Point>,
}

impl AffineSpace {
    pub fn new(field: &Field, offset: Point, basis: Vec<Point>) -> Result<Self> {
        let n = offset.len();
        let mut ech = EchelonBasis::new(field, n);
        for b in &basis {
            if b.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: b.len(),
                });
            }
            if !ech.insert(b) {
                return Err(Error::LinearlyDependent);
            }
        }
        Ok(Self {
            field: field.clone(),
            n,
            offset,
            basis,
        })
    }

    /// `F_q^n` with the standard basis.
    pub fn full(field: &Field, n: usize) -> Self {
        let basis = linalg::identity(n);
        Self {
            field: field.clone(),
            n,
            offset: vec![Elem::ZERO; n],
            basis,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn offset(&self) -> &[Elem] {
        &self.offset
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    pub fn cardinality(&self) -> u128 {
        checked_pow(self.field.order(), self.dim())
    }

    /// The point with coefficient-tuple index `index`.
    pub fn point_at(&self, index: u128) -> Point {
        let f = &self.field;
        let coeffs = point_from_code(f, self.dim(), index);
        let mut p = self.offset.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in p.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        p
    }

    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        self.walk(0, self.cardinality(), |p| out.push(p.to_vec()));
        out
    }

    pub fn contains(&self, point: &[Elem]) -> bool {
        if point.len() != self.n {
            return false;
        }
        let f = &self.field;
        let diff: Point = point
            .iter()
            .zip(&self.offset)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        let mut ech = EchelonBasis::new(f, self.n);
        for b in &self.basis {
            ech.insert(b);
        }
        ech.contains(&diff)
    }

    /// Cosets of the same linear subspace.
    pub fn is_parallel(&self, other: &AffineSpace) -> bool {
        if self.field != other.field || self.n != other.n || self.dim() != other.dim() {
            return false;
        }
        let joint: Vec<Point> = self.basis.iter().chain(&other.basis).cloned().collect();
        linalg::rank(&self.field, &joint) == self.dim()
    }

    /// `self` is a subset of `other`.
    pub fn is_subset_of(&self, other: &AffineSpace) -> bool {
        if !other.contains(&self.offset) {
            return false;
        }
        let joint: Vec<Point> = other.basis.iter().chain(&self.basis).cloned().collect();
        linalg::rank(&self.field, &joint) == other.dim()
    }

    /// Visits points with indices in `[start, end)` in order, updating the
    /// current point incrementally as coefficient digits roll over.
    fn walk(&self, start: u128, end: u128, mut visit: impl FnMut(&[Elem])) {
        if start >= end {
            return;
        }
        let f = &self.field;
        let q = f.order();
        let dim = self.dim();
        let mut digits: Vec<u32> = point_from_code(f, dim, start)
            .into_iter()
            .map(|e| e.0)
            .collect();
        let mut p = self.point_at(start);
        visit(&p);
        for _ in start + 1..end {
            // odometer: least significant digit is the last basis vector
            let mut j = dim;
            loop {
                j -= 1;
                let old = digits[j];
                let new = if old + 1 == q { 0 } else { old + 1 };
                digits[j] = new;
                let delta = f.sub(Elem(new), Elem(old));
                for (x, &b) in p.iter_mut().zip(&self.basis[j]) {
                    if !b.is_zero() {
                        *x = f.add(*x, f.mul(delta, b));
                    }
                }
                if new != 0 {
                    break;
                }
            }
            visit(&p);
        }
    }

    fn chunks(&self) -> Vec<(u128, u128)> {
        let total = self.cardinality();
        let mut out = Vec::new();
        let mut s = 0;
        while s < total {
            let e = (s + CHUNK).min(total);
            out.push((s, e));
            s = e;
        }
        out
    }
}

/// Zeros of a system inside a domain, in the domain's enumeration order.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    system: PolySystem,
    domain: AffineSpace,
    points: Vec<Point>,
}

impl ZeroSet {
    pub fn system(&self) -> &PolySystem {
        &self.system
    }

    pub fn domain(&self) -> &AffineSpace {
        &self.domain
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn count(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

fn check_domain(system: &PolySystem, domain: &AffineSpace, budget: Budget) -> Result<()> {
    system.field().check_same(domain.field())?;
    if system.nvars() != domain.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: system.nvars(),
            got: domain.ambient_dim(),
        });
    }
    budget.check(domain.cardinality())
}

pub fn enumerate_zeros(
    system: &PolySystem,
    domain: &AffineSpace,
    budget: Budget,
) -> Result<ZeroSet> {
    check_domain(system, domain, budget)?;
    let compiled = system.compile();
    let parts: Vec<Vec<Point>> = domain
        .chunks()
        .into_par_iter()
        .map(|(s, e)| {
            let mut out = Vec::new();
            domain.walk(s, e, |p| {
                if compiled.vanishes(p) {
                    out.push(p.to_vec());
                }
            });
            out
        })
        .collect();
    Ok(ZeroSet {
        system: system.clone(),
        domain: domain.clone(),
        points: parts.into_iter().flatten().collect(),
    })
}

pub(crate) fn count_in(compiled: &CompiledSystem, domain: &AffineSpace) -> u64 {
    let mut n = 0;
    domain.walk(0, domain.cardinality(), |p| {
        if compiled.vanishes(p) {
            n += 1;
        }
    });
    n
}

/// `N(f, domain)` without storing points.
pub fn count_zeros(system: &PolySystem, domain: &AffineSpace, budget: Budget) -> Result<u64> {
    check_domain(system, domain, budget)?;
    let compiled = system.compile();
    Ok(domain
        .chunks()
        .into_par_iter()
        .map(|(s, e)| {
            let mut n = 0u64;
            domain.walk(s, e, |p| {
                if compiled.vanishes(p) {
                    n += 1;
                }
            });
            n
        })
        .sum())
}

/// Machine-checkable reason a point set is not an affine space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AffineWitness {
    /// `u, v` are in the set but `w = u + v - p0` is not, `p0` the first point.
    Closure { u: Point, v: Point, w: Point },
    /// The set has `count` points but spans an affine space of dimension `rank`, and `count != q^rank`.
    Cardinality { count: u64, q: u32, rank: usize },
}

impl AffineWitness {
    /// Re-derives the negative verdict from the witness alone.
    pub fn confirms(&self, field: &Field, points: &[Point]) -> bool {
        match self {
            AffineWitness::Closure { u, v, w } => {
                let Some(p0) = points.first() else {
                    return false;
                };
                let expect: Point = (0..p0.len())
                    .map(|i| field.sub(field.add(u[i], v[i]), p0[i]))
                    .collect();
                expect == *w && points.contains(u) && points.contains(v) && !points.contains(w)
            }
            AffineWitness::Cardinality { count, q, rank } => {
                *count == points.len() as u64
                    && *q == field.order()
                    && affine_rank(field, points) == *rank
                    && checked_pow(*q, *rank) != *count as u128
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineVerdict {
    pub is_affine: bool,
    /// Dimension of the affine hull.
    pub rank: usize,
    pub dim: Option<usize>,
    pub witness: Option<AffineWitness>,
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_rank(field: &Field, points: &[Point]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let mut ech = EchelonBasis::new(field, p0.len());
    for p in &points[1..] {
        let d: Point = p.iter().zip(p0).map(|(&a, &b)| field.sub(a, b)).collect();
        ech.insert(&d);
        if ech.rank() == p0.len() {
            break;
        }
    }
    ech.rank()
}

const CLOSURE_PAIR_LIMIT: usize = 4_000_000;

/// Decides whether distinct points form an affine space: they do iff their
/// count equals `q^rank` where `rank` is the dimension of their affine hull.
pub fn is_affine_space(field: &Field, points: &[Point]) -> Result<AffineVerdict> {
    let Some(p0) = points.first() else {
        return Err(Error::EmptySet);
    };
    let rank = affine_rank(field, points);
    let count = points.len() as u64;
    if checked_pow(field.order(), rank) == count as u128 {
        return Ok(AffineVerdict {
            is_affine: true,
            rank,
            dim: Some(rank),
            witness: None,
        });
    }
    let set: HashSet<&Point> = points.iter().collect();
    let mut witness = None;
    let mut budget = CLOSURE_PAIR_LIMIT;
    'outer: for (i, u) in points.iter().enumerate() {
        for v in &points[i..] {
            if budget == 0 {
                break 'outer;
            }
            budget -= 1;
            let w: Point = (0..p0.len())
                .map(|k| field.sub(field.add(u[k], v[k]), p0[k]))
                .collect();
            if !set.contains(&w) {
                witness = Some(AffineWitness::Closure {
                    u: u.clone(),
                    v: v.clone(),
                    w,
                });
                break 'outer;
            }
        }
    }
    Ok(AffineVerdict {
        is_affine: false,
        rank,
        dim: None,
        witness: Some(witness.unwrap_or(AffineWitness::Cardinality {
            count,
            q: field.order(),
            rank,
        })),
    })
}

/// Greedy maximal affinely independent subset, scanning in input order.
/// Affinely independent sets are exactly the sets in general position.
pub fn max_general_position(field: &Field, points: &[Point], ambient_dim: usize) -> Vec<Point> {
    let Some(p0) = points.first() else {
        return Vec::new();
    };
    let mut ech = EchelonBasis::new(field, ambient_dim);
    let mut out = vec![p0.clone()];
    for p in &points[1..] {
        if ech.rank() == ambient_dim {
            break;
        }
        let d: Point = p.iter().zip(p0).map(|(&a, &b)| field.sub(a, b)).collect();
        if ech.insert(&d) {
            out.push(p.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCounts {
    pub subspace_dim: usize,
    pub system_degree: u32,
    /// Set when `subspace_dim < system_degree`: congruence of the counts is not guaranteed.
    pub below_degree: bool,
    pub representatives: Vec<Point>,
    pub counts: Vec<u64>,
}

impl CosetCounts {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// All counts agree modulo `q`.
    pub fn congruent_mod(&self, q: u64) -> bool {
        self.counts.windows(2).all(|w| w[0] % q == w[1] % q)
    }
}

/// Complement directions and a change-of-basis for splitting points by coset.
struct CosetIndexer {
    field: Field,
    complement: Vec<Point>,
    /// Rows of the inverse of `[basis | complement]` that give complement coordinates.
    coord_rows: Vec<Point>,
}

impl CosetIndexer {
    fn new(field: &Field, n: usize, basis: &[Point]) -> Result<Self> {
        let complement = linalg::complete_basis(field, n, basis)?;
        let m = basis.len();
        let cols: Vec<&Point> = basis.iter().chain(&complement).collect();
        let mat: Vec<Point> = (0..n)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        let inv = linalg::inverse(field, &mat)?;
        Ok(Self {
            field: field.clone(),
            complement,
            coord_rows: inv[m..].to_vec(),
        })
    }

    fn num_cosets(&self) -> u128 {
        checked_pow(self.field.order(), self.complement.len())
    }

    fn representative(&self, index: u128) -> Point {
        let f = &self.field;
        let n = self.coord_rows.first().map_or(0, Vec::len);
        let digits = point_from_code(f, self.complement.len(), index);
        let mut p = vec![Elem::ZERO; n];
        for (c, v) in digits.iter().zip(&self.complement) {
            for (x, &y) in p.iter_mut().zip(v) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        p
    }

    fn index_of(&self, point: &[Elem]) -> usize {
        let coords = linalg::mat_vec(&self.field, &self.coord_rows, point);
        point_code(&self.field, &coords) as usize
    }
}

fn validate_basis(field: &Field, n: usize, basis: &[Point]) -> Result<()> {
    let mut ech = EchelonBasis::new(field, n);
    for b in basis {
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        if !ech.insert(b) {
            return Err(Error::LinearlyDependent);
        }
    }
    Ok(())
}

/// Splits an already enumerated zero set of the full space by cosets of `span(basis)`.
pub fn coset_counts_from_zeros(
    field: &Field,
    n: usize,
    system_degree: u32,
    zeros: &[Point],
    basis: &[Point],
) -> Result<CosetCounts> {
    validate_basis(field, n, basis)?;
    let idx = CosetIndexer::new(field, n, basis)?;
    let ncos = idx.num_cosets();
    let mut counts = vec![0u64; ncos as usize];
    for z in zeros {
        counts[idx.index_of(z)] += 1;
    }
    Ok(CosetCounts {
        subspace_dim: basis.len(),
        system_degree,
        below_degree: (basis.len() as u32) < system_degree,
        representatives: (0..ncos).map(|i| idx.representative(i)).collect(),
        counts,
    })
}

/// Zero counts over every coset of `span(subspace_basis)`, cosets in canonical order.
pub fn parallel_coset_counts(
    system: &PolySystem,
    subspace_basis: &[Point],
    budget: Budget,
) -> Result<CosetCounts> {
    let f = system.field();
    let n = system.nvars();
    validate_basis(f, n, subspace_basis)?;
    let zeros = enumerate_zeros(system, &AffineSpace::full(f, n), budget)?;
    coset_counts_from_zeros(f, n, system.total_degree(), zeros.points(), subspace_basis)
}

/// The same counts, enumerating each coset separately.
pub fn parallel_coset_counts_direct(
    system: &PolySystem,
    subspace_basis: &[Point],
    budget: Budget,
) -> Result<CosetCounts> {
    let f = system.field();
    let n = system.nvars();
    validate_basis(f, n, subspace_basis)?;
    budget.check(checked_pow(f.order(), n))?;
    let idx = CosetIndexer::new(f, n, subspace_basis)?;
    let compiled = system.compile();
    let reps: Vec<Point> = (0..idx.num_cosets())
        .map(|i| idx.representative(i))
        .collect();
    let counts = reps
        .par_iter()
        .map(|r| {
            let coset = AffineSpace {
                field: f.clone(),
                n,
                offset: r.clone(),
                basis: subspace_basis.to_vec(),
            };
            count_in(&compiled, &coset)
        })
        .collect();
    Ok(CosetCounts {
        subspace_dim: subspace_basis.len(),
        system_degree: system.total_degree(),
        below_degree: (subspace_basis.len() as u32) < system.total_degree(),
        representatives: reps,
        counts,
    })
}

/// Histogram `|S ∩ l| -> number of lines l` over lines meeting `S` in at least two points.
pub fn line_intersection_profile(
    field: &Field,
    points: &[Point],
    budget: Budget,
) -> Result<BTreeMap<usize, u64>> {
    if points.len() < 2 {
        return Err(Error::InvalidParameters("need at least two points".into()));
    }
    let s = points.len() as u128;
    budget.check(s * (s - 1) / 2)?;
    let set: HashSet<&Point> = points.iter().collect();
    let mut seen: HashSet<(Point, Point)> = HashSet::new();
    let mut hist = BTreeMap::new();
    for (i, u) in points.iter().enumerate() {
        for v in &points[i + 1..] {
            let dir: Point = v.iter().zip(u).map(|(&a, &b)| field.sub(a, b)).collect();
            let mut line: Vec<Point> = field
                .elements()
                .map(|l| {
                    u.iter()
                        .zip(&dir)
                        .map(|(&a, &d)| field.add(a, field.mul(l, d)))
                        .collect()
                })
                .collect();
            line.sort();
            let key = (line[0].clone(), line[1].clone());
            if !seen.insert(key) {
                continue;
            }
            let meet = line.iter().filter(|p| set.contains(p)).count();
            *hist.entry(meet).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// Serialized summary of a zero set and its affine analysis.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroSetSummary {
    pub field: Field,
    pub n: usize,
    pub degrees: Vec<u32>,
    pub count: u64,
    pub is_affine: Option<bool>,
    pub witness: Option<AffineWitness>,
    pub general_position_size: usize,
}

impl ZeroSetSummary {
    pub fn new(zeros: &ZeroSet, verdict: Option<&AffineVerdict>) -> Self {
        let f = zeros.system.field();
        Self {
            field: f.clone(),
            n: zeros.system.nvars(),
            degrees: zeros.system.degrees(),
            count: zeros.count(),
            is_affine: verdict.map(|v| v.is_affine),
            witness: verdict.and_then(|v| v.witness.clone()),
            general_position_size: max_general_position(f, &zeros.points, zeros.system.nvars())
                .len(),
        }
    }
}
