//! Explicit forms attaining the improved lower bounds, each shipped with a
//! self-checked [`ConstructionCertificate`].

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::bounds::{bound_values, BoundId, Rational};
use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::poly::{Monomial, PolySystem, Polynomial};
use crate::zeroset::{enumerate_zeros, is_affine_space, AffineSpace, AffineWitness, Budget};

/// `N_{F_{q^d}/F_q}(x_1 + x_2 t + ... + x_d t^{d-1})` as a degree-`d` form over `F_q`,
/// where `t` generates `F_{q^d}` with its default modulus.
pub fn norm_form(q: u64, d: u32) -> Result<Polynomial> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Polynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("norm cache").get(&(q, d)) {
        return Ok(p.clone());
    }
    let p = expand_norm_form(q, d)?;
    cache.lock().expect("norm cache").insert((q, d), p.clone());
    Ok(p)
}

fn expand_norm_form(q: u64, d: u32) -> Result<Polynomial> {
    if d == 0 {
        return Err(Error::InvalidParameters("norm form needs d >= 1".into()));
    }
    let base = Field::of_order(q)?;
    let ext_order = q
        .checked_pow(d)
        .ok_or(Error::FieldTooLarge(u64::MAX, crate::gf::MAX_FIELD_ORDER))?;
    let ext = Field::of_order(ext_order)?;
    let emb = Embedding::new(&base, &ext)?;
    let n = d as usize;
    let t = ext.generator();
    let q_exp = base.order() as u64;

    // product of the conjugate linear forms sum_i x_i (t^{q^j})^{i-1}; the
    // degree-j part is a dense array indexed by the colex rank of the monomial,
    // monomials packed as BITS-bit exponent fields of a u128
    const BITS: u32 = 5;
    let field_mask = (1u128 << BITS) - 1;
    let exp = |key: u128, i: usize| ((key >> (BITS * i as u32)) & field_mask) as usize;
    let binom = binomials(n + d as usize);
    let mut coeffs = vec![Elem::ONE];
    let mut monos = vec![0u128];
    let mut tj = t;
    for j in 0..d as usize {
        let weights: Vec<Elem> = (0..n as u64).map(|i| ext.pow(tj, i)).collect();
        let len = binom[n + j][j + 1];
        let mut next = vec![Elem::ZERO; len];
        let mut next_monos = vec![0u128; len];
        // with m as the multiset c_0 <= .. < c_{j-1} and b_r = c_r + r, rank(m) is
        // sum_r C(b_r, r + 1); adding x_i inserts i at position p_i and shifts the tail
        let mut before = vec![0usize; j + 1];
        let mut after = vec![0usize; j + 1];
        for (&m, &c) in monos.iter().zip(&coeffs) {
            let mut bs = Vec::with_capacity(j);
            for i in 0..n {
                for _ in 0..exp(m, i) {
                    bs.push(i + bs.len());
                }
            }
            for (r, &b) in bs.iter().enumerate() {
                before[r + 1] = before[r] + binom[b][r + 1];
            }
            after[j] = 0;
            for r in (0..j).rev() {
                after[r] = after[r + 1] + binom[bs[r] + 1][r + 2];
            }
            let mut p = 0;
            for (i, &w) in weights.iter().enumerate() {
                p += exp(m, i);
                let r = before[p] + binom[i + p][p + 1] + after[p];
                next[r] = ext.add(next[r], ext.mul(c, w));
                next_monos[r] = m + (1u128 << (BITS * i as u32));
            }
        }
        coeffs = next;
        monos = next_monos;
        tj = ext.pow(tj, q_exp);
    }
    let terms = monos
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| {
            let exps = (0..n).map(|i| exp(m, i) as u32).collect();
            emb.restrict(c)
                .map(|b| (exps, b))
                .ok_or_else(|| Error::CoefficientNotInField(ext.format(c)))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(&base, n, terms)
}

fn f2() -> Field {
    Field::prime(2).expect("2 is prime")
}

fn binomials(max: usize) -> Vec<Vec<usize>> {
    let mut c = vec![vec![0usize; max + 2]; max + 1];
    for a in 0..=max {
        c[a][0] = 1;
        for b in 1..=a {
            c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
        }
    }
    c
}

/// `x_n^d - prev * x_n + g`, with `prev` and `g` read in the leading variables.
fn recursion_step(prev: &Polynomial, g: &Polynomial, n: usize, d: u32) -> Result<Polynomial> {
    let f = prev.field().clone();
    let last = n - 1;
    let pad = |m: &Monomial| {
        let mut e = m.exponents().to_vec();
        e.resize(n, 0);
        e
    };
    let mut top = vec![0; n];
    top[last] = d;
    let shifted = prev.terms().map(|(m, c)| {
        let mut e = pad(m);
        e[last] += 1;
        (e, f.neg(c))
    });
    let terms: Vec<(Vec<u32>, Elem)> = std::iter::once((top, Elem::ONE))
        .chain(shifted)
        .chain(g.terms().map(|(m, c)| (pad(m), c)))
        .collect();
    Polynomial::from_terms(&f, n, terms)
}

/// The degree-`d` form over `F_2` in `d + 1` variables with exactly 4 zeros.
pub fn prop41_form(d: u32) -> Result<Polynomial> {
    prop41_chain(d).map(|mut v| v.pop().expect("chain is nonempty"))
}

/// `f_2, ..., f_d` of the 4-zero recursion.
pub fn prop41_chain(d: u32) -> Result<Vec<Polynomial>> {
    if d < 2 {
        return Err(Error::InvalidParameters(
            "the recursion starts at d = 2".into(),
        ));
    }
    let f = f2();
    let mut chain = vec![Polynomial::from_terms(
        &f,
        3,
        [
            (vec![1, 1, 0], f.from_int(1)),
            (vec![0, 0, 2], f.from_int(-1)),
        ],
    )?];
    for k in 3..=d {
        let step = recursion_step(chain.last().unwrap(), &norm_form(2, k)?, k as usize + 1, k)?;
        chain.push(step);
    }
    Ok(chain)
}

/// The degree-`d` form over `F_2` in `d + 2` variables with exactly 6 zeros.
pub fn prop42_form(d: u32) -> Result<Polynomial> {
    if d < 2 {
        return Err(Error::InvalidParameters(
            "the recursion starts at d = 2".into(),
        ));
    }
    let f = f2();
    let mut cur = Polynomial::from_terms(
        &f,
        4,
        [
            (vec![2, 0, 0, 0], f.from_int(1)),
            (vec![1, 1, 0, 0], f.from_int(1)),
            (vec![0, 2, 0, 0], f.from_int(1)),
            (vec![0, 0, 1, 1], f.from_int(1)),
        ],
    )?;
    for k in 3..=d {
        let moved = vanish_at_last_axis(&cur)?;
        cur = recursion_step(&moved, &norm_form(2, k)?, k as usize + 2, k)?;
    }
    Ok(cur)
}

/// Moves the smallest-code nonzero zero of a form to `(0, ..., 0, 1)`.
pub fn vanish_at_last_axis(form: &Polynomial) -> Result<Polynomial> {
    let n = form.nvars();
    let system = PolySystem::single(form.clone());
    let zeros = enumerate_zeros(
        &system,
        &AffineSpace::full(form.field(), n),
        Budget::DEFAULT,
    )?;
    let v = zeros
        .points()
        .iter()
        .find(|p| p.iter().any(|x| !x.is_zero()))
        .ok_or_else(|| Error::NoZeroFound(form.to_string()))?;
    Ok(form.move_to_last_axis(v)?.1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionCertificate {
    pub name: String,
    pub field: Field,
    pub q: u64,
    pub n: usize,
    pub d: u32,
    pub polynomials: Vec<String>,
    pub homogeneous: bool,
    pub claimed_count: u64,
    pub measured_count: u64,
    pub claimed_affine: bool,
    pub measured_affine: bool,
    pub witness: Option<AffineWitness>,
    pub matched_bound: Option<BoundId>,
    pub bound_value: Option<Rational>,
    /// The count equals the matched bound value exactly.
    pub sharp: Option<bool>,
    pub verified: bool,
}

impl ConstructionCertificate {
    /// Enumerates the zero set and fills in the measured fields.
    pub fn certify(
        name: &str,
        poly: Polynomial,
        claimed_count: u64,
        claimed_affine: bool,
        matched_bound: Option<BoundId>,
        budget: Budget,
    ) -> Result<Self> {
        let field = poly.field().clone();
        let n = poly.nvars();
        let d = poly.degree().unwrap_or(0);
        let homogeneous = poly.is_form();
        let system = PolySystem::single(poly);
        let zeros = enumerate_zeros(&system, &AffineSpace::full(&field, n), budget)?;
        let measured_count = zeros.count();
        let verdict = if zeros.is_empty() {
            None
        } else {
            Some(is_affine_space(&field, zeros.points())?)
        };
        let measured_affine = verdict.as_ref().is_some_and(|v| v.is_affine);
        let q = field.order() as u64;
        let bound_value = match matched_bound {
            Some(id) => Some(
                bound_values(q, n as u32, d, homogeneous)?
                    .get(id)
                    .value
                    .clone(),
            ),
            None => None,
        };
        let sharp = bound_value
            .as_ref()
            .map(|b| *b == Rational::integer(measured_count));
        let verified = measured_count == claimed_count
            && measured_affine == claimed_affine
            && sharp != Some(false);
        Ok(Self {
            name: name.to_string(),
            q,
            n,
            d,
            polynomials: system.texts(),
            homogeneous,
            claimed_count,
            measured_count,
            claimed_affine,
            measured_affine,
            witness: verdict.and_then(|v| v.witness),
            matched_bound,
            bound_value,
            sharp,
            verified,
            field,
        })
    }
}

/// The norm form vanishes only at the origin.
pub fn norm_certificate(q: u64, d: u32, budget: Budget) -> Result<ConstructionCertificate> {
    ConstructionCertificate::certify(
        &format!("norm(q={q}, d={d})"),
        norm_form(q, d)?,
        1,
        true,
        None,
        budget,
    )
}

pub fn prop41_certificate(d: u32, budget: Budget) -> Result<ConstructionCertificate> {
    ConstructionCertificate::certify(
        &format!("prop41(d={d})"),
        prop41_form(d)?,
        4,
        false,
        Some(BoundId::Improved1),
        budget,
    )
}

pub fn prop42_certificate(d: u32, budget: Budget) -> Result<ConstructionCertificate> {
    ConstructionCertificate::certify(
        &format!("prop42(d={d})"),
        prop42_form(d)?,
        6,
        false,
        Some(BoundId::Improved1),
        budget,
    )
}

/// `x1*x2 - x3^2` over `F_q`, which has `q^2` zeros.
pub fn h_form(q: u64) -> Result<Polynomial> {
    let f = Field::of_order(q)?;
    Polynomial::from_terms(
        &f,
        3,
        [
            (vec![1, 1, 0], f.from_int(1)),
            (vec![0, 0, 2], f.from_int(-1)),
        ],
    )
}

/// `x1^3 - x2^2*x1 + c(x2, x3, x4)` over `F_3`, `c` the ternary cubic norm form.
pub fn j_form() -> Result<Polynomial> {
    let f = Field::prime(3)?;
    let c = norm_form(3, 3)?.remap_vars(4, &[1, 2, 3])?;
    Polynomial::from_terms(
        &f,
        4,
        [
            (vec![3, 0, 0, 0], f.from_int(1)),
            (vec![1, 2, 0, 0], f.from_int(-1)),
        ],
    )?
    .add(&c)
}

/// Sharp examples over `F_q`: `h` for every `q >= 3`, plus `g`, `j` and the
/// four-variable quadric when `q = 3`.
pub fn sharp_catalog(q: u64, budget: Budget) -> Result<Vec<ConstructionCertificate>> {
    if q < 3 {
        return Err(Error::InvalidParameters(format!(
            "the catalog needs q >= 3, got {q}"
        )));
    }
    let mut out = Vec::new();
    if q == 3 {
        let f = Field::prime(3)?;
        let g = PolySystem::parse(&f, 3, &["x1*x2 + x3^2 + 1"])?.polys()[0].clone();
        out.push(ConstructionCertificate::certify(
            "g",
            g,
            6,
            false,
            Some(BoundId::Improved2),
            budget,
        )?);
    }
    out.push(ConstructionCertificate::certify(
        "h",
        h_form(q)?,
        q * q,
        false,
        Some(BoundId::Improved4),
        budget,
    )?);
    if q == 3 {
        let f = Field::prime(3)?;
        out.push(ConstructionCertificate::certify(
            "j",
            j_form()?,
            9,
            false,
            Some(BoundId::Improved4),
            budget,
        )?);
        let h4 = PolySystem::parse(&f, 4, &["x1*x2 + x3^2 + x4^2"])?.polys()[0].clone();
        out.push(ConstructionCertificate::certify(
            "h4",
            h4,
            21,
            false,
            Some(BoundId::Improved4),
            budget,
        )?);
    }
    Ok(out)
}
