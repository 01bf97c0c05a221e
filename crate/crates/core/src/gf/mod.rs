//! Finite fields `F_{p^k}` with table-driven arithmetic.
//!
//! Elements are addressed by their canonical integer code in `[0, q)`: the
//! coordinates of an element in the polynomial basis `1, t, ..., t^{k-1}` read
//! as base-`p` digits, constant coefficient least significant. So in `F_4`
//! built on `t^2 + t + 1` the codes `0, 1, 2, 3` are `0, 1, t, t+1`.
//!
//! Multiplication, inversion and powering go through discrete log tables
//! built once per field; addition is mod-`p` for prime fields, XOR for
//! characteristic two, and a full addition table for other small extensions.

pub mod linalg;
mod norm;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub use norm::{norm_map, Embedding, NormMap};

/// Largest field order accepted by default.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

/// Canonical code of a field element. Only meaningful together with its [`Field`].
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients low-to-high (length k+1). `None` for prime fields.
    modulus: Option<Vec<u32>>,
    symbol: String,
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// A finite field handle. Cheap to clone; immutable and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.literal())
    }
}

/// Builds `F_{p^k}`. See [`Field::new`].
pub fn make_field(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
    Field::new(p, k, modulus)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1 && p <= u32::MAX as u64).then_some((p as u32, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial arithmetic over F_p, coefficients low-to-high, used only
// while building fields.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a monic `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = lead * c as u64 % p as u64;
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
    pub fn monic_from_code(mut code: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            out.push((code % p as u64) as u32);
            code /= p as u64;
        }
        out.push(1);
        out
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = (m.len() - 1) as u32;
        if deg <= 1 {
            return deg == 1;
        }
        for dd in 1..=deg / 2 {
            let count = (p as u64).pow(dd);
            for code in 0..count {
                let divisor = monic_from_code(code, dd, p);
                if rem_monic(m, &divisor, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn format_fp_poly(coeffs: &[u32], symbol: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => symbol.to_string(),
            _ => format!("{symbol}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

impl Field {
    /// Builds `F_{p^k}`.
    ///
    /// With `modulus == None` and `k > 1` the smallest monic irreducible of
    /// degree `k` is chosen, scanning lower coefficients (low-to-high base-`p`
    /// digits) in increasing integer order. A supplied modulus is given
    /// low-to-high with length `k + 1` and must be monic and irreducible.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        Self::with_cap(p, k, modulus, MAX_FIELD_ORDER)
    }

    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// Field of order `q`, with the automatically selected modulus.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k, None)
    }

    pub fn with_cap(p: u32, k: u32, modulus: Option<&[u32]>, cap: u64) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::InvalidParameters(
                "extension degree must be positive".into(),
            ));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= cap);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge((p as u64).saturating_pow(k), cap));
        };
        let modulus = match modulus {
            Some(m) => {
                let reduced: Vec<u32> = m.iter().map(|&c| c % p).collect();
                if m.len() != k as usize + 1 || reduced.last() != Some(&1) {
                    return Err(Error::DegreeMismatch {
                        expected: k,
                        got: format_fp_poly(&reduced, "t"),
                    });
                }
                if k > 1 && !fp_poly::is_irreducible(&reduced, p) {
                    return Err(Error::ReducibleModulus(format_fp_poly(&reduced, "t"), p));
                }
                (k > 1).then_some(reduced)
            }
            None if k > 1 => {
                let count = (p as u64).pow(k);
                let found = (0..count)
                    .map(|code| fp_poly::monic_from_code(code, k, p))
                    .find(|m| fp_poly::is_irreducible(m, p))
                    .expect("an irreducible polynomial of every degree exists");
                Some(found)
            }
            None => None,
        };
        Ok(Field(Arc::new(Self::build_tables(p, k, q as u32, modulus))))
    }

    fn build_tables(p: u32, k: u32, q: u32, modulus: Option<Vec<u32>>) -> Inner {
        let coords = |mut c: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            for _ in 0..k {
                v.push(c % p);
                c /= p;
            }
            fp_poly::trim(&mut v);
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            match &modulus {
                None => ((a as u64 * b as u64) % p as u64) as u32,
                Some(m) => encode(&fp_poly::rem_monic(
                    &fp_poly::mul(&coords(a), &coords(b), p),
                    m,
                    p,
                )),
            }
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            exp[i + n] = acc;
            log[acc as usize] = i as u32;
            acc = slow_mul(acc, generator);
        }
        if n == 0 {
            exp[0] = 1;
        }

        let slow_add = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return (a + b) % p;
            }
            let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
            for _ in 0..k {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let (mut a, mut out, mut place) = (a, 0u32, 1u32);
                for _ in 0..k {
                    out += ((p - a % p) % p) * place;
                    a /= p;
                    place *= p;
                }
                out
            })
            .collect();
        let inv: Vec<u32> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[(n - log[a as usize] as usize) % n.max(1)]
                }
            })
            .collect();
        let add = (k > 1 && p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = slow_add(a, b) as u16;
                }
            }
            t
        });

        Inner {
            p,
            k,
            q,
            modulus,
            symbol: "t".to_string(),
            exp,
            log,
            neg,
            inv,
            add,
        }
    }

    /// Parses `GF(q)`, `GF(p^k)`, `GF(q; m0,m1,...,mk)` or `GF(p^k; m0,...)`.
    pub fn from_literal(text: &str) -> Result<Field> {
        let bad = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg} in field literal `{text}`"),
        };
        let t = text.trim();
        let inner = t
            .strip_prefix("GF(")
            .or_else(|| t.strip_prefix("gf("))
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected GF(...)"))?;
        let (order, modulus) = match inner.split_once(';') {
            Some((o, m)) => (o.trim(), Some(m.trim())),
            None => (inner.trim(), None),
        };
        let parse_num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("bad integer"));
        let (p, k) = match order.split_once('^') {
            Some((p, k)) => {
                let p = parse_num(p)?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                (p as u32, parse_num(k)? as u32)
            }
            None => {
                let q = parse_num(order)?;
                prime_power(q).ok_or(Error::NotPrimePower(q))?
            }
        };
        let modulus = modulus
            .map(|m| {
                m.split(',')
                    .map(|c| parse_num(c).map(|c| c as u32))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Field::new(p, k, modulus.as_deref())
    }

    /// Literal understood by [`Field::from_literal`]; includes the modulus for extensions.
    pub fn literal(&self) -> String {
        match &self.0.modulus {
            None => format!("GF({})", self.0.q),
            Some(m) => {
                let m: Vec<String> = m.iter().map(u32::to_string).collect();
                format!("GF({}; {})", self.0.q, m.join(","))
            }
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn symbol(&self) -> &str {
        &self.0.symbol
    }

    pub fn same_as(&self, other: &Field) -> bool {
        self == other
    }

    pub fn check_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.literal(), other.literal()))
        }
    }

    /// All elements in canonical code order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.0.q {
            Ok(Elem(code))
        } else {
            Err(Error::CoefficientNotInField(code.to_string()))
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() > self.0.k as usize {
            return Err(Error::CoefficientNotInField(format!("{coords:?}")));
        }
        let p = self.0.p;
        Ok(Elem(coords.iter().rev().fold(0, |acc, &c| acc * p + c % p)))
    }

    /// Polynomial-basis coordinates, length `k`, constant term first.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let (p, mut c) = (self.0.p, a.0);
        (0..self.0.k)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    /// The class of `t` for extensions (code `p`); a primitive element for prime fields.
    pub fn generator(&self) -> Elem {
        if self.0.k > 1 {
            Elem(self.0.p)
        } else {
            self.primitive_element()
        }
    }

    /// The primitive element used for the log tables.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.exp[if self.0.q > 2 { 1 } else { 0 }])
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if f.k == 1 {
            let s = a.0 + b.0;
            Elem(if s >= f.p { s - f.p } else { s })
        } else if f.p == 2 {
            Elem(a.0 ^ b.0)
        } else if let Some(t) = &f.add {
            Elem(t[(a.0 * f.q + b.0) as usize] as u32)
        } else {
            let (p, mut x, mut y, mut out, mut place) = (f.p, a.0, b.0, 0u32, 1u32);
            while x > 0 || y > 0 {
                let d = x % p + y % p;
                out += (if d >= p { d - p } else { d }) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            Elem(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let f = &*self.0;
        Elem(f.exp[(f.log[a.0 as usize] + f.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Elem(self.0.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    #[inline]
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let f = &*self.0;
        let n = (f.q - 1) as u64;
        Elem(f.exp[((f.log[a.0 as usize] as u64 * (e % n)) % n) as usize])
    }

    #[inline]
    pub(crate) fn log_of(&self, a: Elem) -> u32 {
        self.0.log[a.0 as usize]
    }

    #[inline]
    pub(crate) fn exp_of(&self, l: u64) -> Elem {
        Elem(self.0.exp[(l % (self.0.q as u64 - 1)) as usize])
    }

    /// Human-readable form: integers for prime fields, polynomials in `t` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.0.k == 1 {
            a.0.to_string()
        } else {
            format_fp_poly(&self.coords(a), &self.0.symbol)
        }
    }

    /// Parses an integer (reduced mod `p`) or a polynomial in the generator
    /// symbol, such as `t^2+2t+1` or `2*t + 1`.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::CoefficientNotInField(text.to_string()));
        }
        let bad = || Error::CoefficientNotInField(text.to_string());
        let mut acc = Elem::ZERO;
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                true
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
                false
            } else if first {
                false
            } else {
                return Err(bad());
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (coef, power) = match term.find(self.0.symbol.as_str()) {
                None => (term, 0u64),
                Some(i) => {
                    let coef = term[..i].trim_end_matches('*');
                    let after = &term[i + self.0.symbol.len()..];
                    let power = match after.strip_prefix('^') {
                        Some(e) => e.parse::<u64>().map_err(|_| bad())?,
                        None if after.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (if coef.is_empty() { "1" } else { coef }, power)
                }
            };
            let c = coef.parse::<u64>().map_err(|_| bad())?;
            if power > 0 && self.0.k == 1 {
                return Err(bad());
            }
            let c = Elem((c % self.0.p as u64) as u32);
            let term = self.mul(c, self.pow(self.generator(), power));
            acc = if negative {
                self.sub(acc, term)
            } else {
                self.add(acc, term)
            };
        }
        Ok(acc)
    }

    /// `x^p` applied `times` times.
    pub fn frobenius(&self, a: Elem, times: u32) -> Elem {
        (0..times).fold(a, |x, _| self.pow(x, self.0.p as u64))
    }

    pub fn handle(&self, a: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            elem: a,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Field::from_literal(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element bundled with its field; arithmetic checks that both operands agree.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    elem: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, code: u32) -> Result<Self> {
        Ok(Self {
            field: field.clone(),
            elem: field.elem(code)?,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn code(&self) -> u32 {
        self.elem.0
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.elem)
    }

    pub fn arith(&self, op: ArithOp, other: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&other.field)?;
        let (f, a, b) = (&self.field, self.elem, other.elem);
        let elem = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b)?,
        };
        Ok(self.field.handle(elem))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.handle(self.field.pow(self.elem, e))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.handle(self.field.inv(self.elem)?))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(self.elem), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.elem))
    }
}

/// Free-function form of [`FieldElement::arith`].
pub fn arithmetic(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.arith(op, b)
}

/// Free-function form of [`Field::elements`].
pub fn enumerate_elements(field: &Field) -> Vec<Elem> {
    field.elements().collect()
}
