//! Multivariate polynomials over a finite field.
//!
//! Polynomials keep their formal degree: nothing is reduced modulo
//! `x_i^q - x_i`, since every bound downstream is stated in terms of the
//! degree as written.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::linalg::{self, Matrix};
use crate::gf::{Elem, Field};

pub use parse::parse_polynomial;

/// Exponent vector. Ordered graded-lexicographically (degree first, then
/// lexicographic with `x1` most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Self(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolyProperties {
    /// `None` for the zero polynomial (degree minus infinity).
    pub degree: Option<u32>,
    pub is_homogeneous: bool,
    pub is_form: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Self {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: Elem) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i, 1), Elem::ONE)
    }

    pub fn term(field: &Field, mono: Monomial, c: Elem) -> Self {
        let mut p = Self::zero(field, mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            field.elem(c.0)?;
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Elem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .copied()
            .unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// A nonzero polynomial whose monomials all share one degree.
    pub fn is_form(&self) -> bool {
        !self.is_zero() && self.is_homogeneous()
    }

    pub fn properties(&self) -> PolyProperties {
        PolyProperties {
            degree: self.degree(),
            is_homogeneous: self.is_homogeneous(),
            is_form: self.is_form(),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        self.field.check_same(&other.field)?;
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let f = &self.field;
        if c.is_zero() {
            return Polynomial::zero(f, self.nvars);
        }
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (ma, &a) in &self.terms {
            for (mb, &b) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(a, b));
            }
        }
        Ok(Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.field, self.nvars, Elem::ONE);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|a| a.0 >= self.field.order()) {
            return Err(Error::FieldMismatch(
                format!("element code {}", bad.0),
                self.field.literal(),
            ));
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        self.terms.iter().fold(Elem::ZERO, |acc, (m, &c)| {
            let v = m.0.iter().zip(point).fold(c, |v, (&e, &x)| {
                if e == 0 {
                    v
                } else {
                    f.mul(v, f.pow(x, e as u64))
                }
            });
            f.add(acc, v)
        })
    }

    /// Replaces `x_i` by `images[i]`; the result lives in the images' ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            let c = self.terms.values().next().copied().unwrap_or(Elem::ZERO);
            return Ok(Polynomial::constant(&self.field, 0, c));
        };
        let m = first.nvars;
        for img in images {
            self.field.check_same(&img.field)?;
            if img.nvars != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: img.nvars,
                });
            }
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(&self.field, m);
        for (mono, &c) in &self.terms {
            let mut prod = Polynomial::constant(&self.field, m, c);
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                prod = prod.mul(&pw)?;
            }
            for (mm, &cc) in &prod.terms {
                out.add_term(mm.clone(), cc);
            }
        }
        Ok(out)
    }

    /// `f(A x + b)` for an invertible `n x n` matrix `A`.
    pub fn substitute_linear(&self, matrix: &Matrix, offset: &[Elem]) -> Result<Polynomial> {
        let n = self.nvars;
        if matrix.len() != n || offset.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: if matrix.len() != n {
                    matrix.len()
                } else {
                    offset.len()
                },
            });
        }
        linalg::inverse(&self.field, matrix)?;
        let f = &self.field;
        let images: Vec<Polynomial> = matrix
            .iter()
            .zip(offset)
            .map(|(row, &b)| {
                let mut y = Polynomial::constant(f, n, b);
                for (j, &a) in row.iter().enumerate() {
                    y.add_term(Monomial::var(n, j, 1), a);
                }
                y
            })
            .collect();
        self.compose(&images)
    }

    /// Linear change of variables sending `e_n` to `v`: returns the invertible
    /// matrix `A` (standard vectors by greedy completion, then `v` as the last
    /// column) together with `f(Ax)`.
    pub fn move_to_last_axis(&self, v: &[Elem]) -> Result<(Matrix, Polynomial)> {
        let n = self.nvars;
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let others = linalg::complete_basis(&self.field, n, &[v.to_vec()])?;
        let cols: Vec<&[Elem]> = others.iter().map(Vec::as_slice).chain([v]).collect();
        let a: Matrix = (0..n)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        let moved = self.substitute_linear(&a, &vec![Elem::ZERO; n])?;
        Ok((a, moved))
    }

    /// Re-indexes variables into a ring with `nvars` variables: `x_{i+1}` becomes `x_{map[i]+1}`.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: bad + 1,
            });
        }
        let mut out = Polynomial::zero(&self.field, nvars);
        for (m, &c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly::new(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return out.write_str("0");
        }
        let f = &self.field;
        let p = f.characteristic();
        for (idx, (m, &c)) in self.terms.iter().rev().enumerate() {
            // prime-subfield coefficients above p/2 print as negatives
            let (negative, mag) = if c.0 < p && p > 2 && c.0 > p / 2 {
                (true, f.neg(c))
            } else {
                (false, c)
            };
            match (idx, negative) {
                (0, true) => out.write_str("-")?,
                (0, false) => {}
                (_, true) => out.write_str(" - ")?,
                (_, false) => out.write_str(" + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            let coef = if mag.0 < p {
                mag.0.to_string()
            } else {
                format!("[{}]", f.format(mag))
            };
            if vars.is_empty() {
                out.write_str(&coef)?;
            } else {
                if mag != Elem::ONE {
                    write!(out, "{coef}*")?;
                }
                out.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {} in {} vars", self, self.field, self.nvars)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Free-function form of [`Polynomial::evaluate`].
pub fn evaluate(poly: &Polynomial, point: &[Elem]) -> Result<Elem> {
    poly.evaluate(point)
}

/// Free-function form of [`Polynomial::substitute_linear`].
pub fn substitute_linear(
    poly: &Polynomial,
    matrix: &Matrix,
    offset: &[Elem],
) -> Result<Polynomial> {
    poly.substitute_linear(matrix, offset)
}

struct CompiledTerm {
    coef_log: u64,
    vars: Vec<(usize, u64)>,
}

/// Evaluation plan for hot enumeration loops: each term is a sum of logs.
pub struct CompiledPoly {
    field: Field,
    constant: Elem,
    terms: Vec<CompiledTerm>,
}

impl CompiledPoly {
    fn new(poly: &Polynomial) -> Self {
        let f = &poly.field;
        let period = f.order() as u64 - 1;
        // as functions on F_q, x^e = x^((e-1) mod (q-1) + 1) for e >= 1
        let mut merged: BTreeMap<Vec<(usize, u64)>, Elem> = BTreeMap::new();
        for (m, &c) in &poly.terms {
            let vars: Vec<(usize, u64)> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, (e as u64 - 1) % period + 1))
                    .collect();
            let slot = merged.entry(vars).or_insert(Elem::ZERO);
            *slot = f.add(*slot, c);
        }
        let mut constant = Elem::ZERO;
        let mut terms = Vec::new();
        for (vars, c) in merged {
            if c.is_zero() {
                continue;
            }
            if vars.is_empty() {
                constant = c;
            } else {
                terms.push(CompiledTerm {
                    coef_log: f.log_of(c) as u64,
                    vars,
                });
            }
        }
        Self {
            field: f.clone(),
            constant,
            terms,
        }
    }

    #[inline]
    pub fn eval(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = self.constant;
        'terms: for t in &self.terms {
            let mut l = t.coef_log;
            for &(i, e) in &t.vars {
                let x = point[i];
                if x.is_zero() {
                    continue 'terms;
                }
                l += f.log_of(x) as u64 * e;
            }
            acc = f.add(acc, f.exp_of(l));
        }
        acc
    }
}

/// An ordered list of polynomials over one field in one set of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct PolySystem {
    field: Field,
    nvars: usize,
    polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(field: &Field, nvars: usize, polys: Vec<Polynomial>) -> Result<Self> {
        for p in &polys {
            field.check_same(&p.field)?;
            if p.nvars != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: p.nvars,
                });
            }
        }
        Ok(Self {
            field: field.clone(),
            nvars,
            polys,
        })
    }

    pub fn single(poly: Polynomial) -> Self {
        Self {
            field: poly.field.clone(),
            nvars: poly.nvars,
            polys: vec![poly],
        }
    }

    /// Parses each text with [`parse_polynomial`].
    pub fn parse(field: &Field, nvars: usize, texts: &[impl AsRef<str>]) -> Result<Self> {
        let polys = texts
            .iter()
            .map(|t| parse_polynomial(t.as_ref(), field, nvars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, nvars, polys)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Member degrees; the zero polynomial imposes no condition and counts as 0.
    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees().iter().sum()
    }

    /// Every member is a nonzero form.
    pub fn is_homogeneous(&self) -> bool {
        self.polys.iter().all(Polynomial::is_form)
    }

    /// Homogeneous with every member of positive degree, so the origin is a zero.
    pub fn is_positive_degree_homogeneous(&self) -> bool {
        self.is_homogeneous() && self.polys.iter().all(|p| p.degree() > Some(0))
    }

    pub fn compile(&self) -> CompiledSystem {
        CompiledSystem {
            polys: self.polys.iter().map(Polynomial::compile).collect(),
        }
    }

    pub fn evaluate(&self, point: &[Elem]) -> Result<Vec<Elem>> {
        self.polys.iter().map(|p| p.evaluate(point)).collect()
    }

    pub fn is_zero_at(&self, point: &[Elem]) -> Result<bool> {
        Ok(self.evaluate(point)?.iter().all(|v| v.is_zero()))
    }

    pub fn substitute_linear(&self, matrix: &Matrix, offset: &[Elem]) -> Result<PolySystem> {
        let polys = self
            .polys
            .iter()
            .map(|p| p.substitute_linear(matrix, offset))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            field: self.field.clone(),
            nvars: self.nvars,
            polys,
        })
    }

    pub fn texts(&self) -> Vec<String> {
        self.polys.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}} over {} in {} vars",
            self.texts().join("; "),
            self.field,
            self.nvars
        )
    }
}

pub struct CompiledSystem {
    polys: Vec<CompiledPoly>,
}

impl CompiledSystem {
    #[inline]
    pub fn vanishes(&self, point: &[Elem]) -> bool {
        self.polys.iter().all(|p| p.eval(point).is_zero())
    }
}
