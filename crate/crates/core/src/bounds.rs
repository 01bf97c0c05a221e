//! Lower bounds and congruences for `N(f, F_q^n)`, computed exactly.
//!
//! Fractional bounds are kept as rationals. A bound is certified against an
//! integer count through [`Bound::min_count`]: `ceil(B)` for `N >= B`, and
//! `floor(B) + 1` for the strict `N > B`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational; serializes as `{"num": "...", "den": "..."}` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

fn big_pow(q: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    /// `N >= q^{n-d}` for nonempty zero sets.
    Warning,
    /// `N > q^{n-d}` for non-affine zero sets.
    Hb1,
    /// `N >= 2 q^{n-d}`, `q >= 4`.
    Hb2,
    /// `N >= q^{n+1-d} / (n+2-d)`, homogeneous.
    Hb3,
    /// `N >= 2^{n-d} + 2`, `q = 2`.
    Improved1,
    /// `N >= 2 q^{n-d}`, `q >= 3`.
    Improved2,
    /// `N > (q^{n+1-d} - 1)/(q - 1) * q/(n+2-d)`, homogeneous.
    Improved3,
    /// `N >= 2 q^{n-d} + (q-2) q`, `q >= 3`, homogeneous.
    Improved4,
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::Warning,
        BoundId::Hb1,
        BoundId::Hb2,
        BoundId::Hb3,
        BoundId::Improved1,
        BoundId::Improved2,
        BoundId::Improved3,
        BoundId::Improved4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Warning => "warning",
            BoundId::Hb1 => "hb1",
            BoundId::Hb2 => "hb2",
            BoundId::Hb3 => "hb3",
            BoundId::Improved1 => "improved1",
            BoundId::Improved2 => "improved2",
            BoundId::Improved3 => "improved3",
            BoundId::Improved4 => "improved4",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            BoundId::Warning => "q^(n-d)",
            BoundId::Hb1 => "q^(n-d)",
            BoundId::Hb2 => "2q^(n-d)",
            BoundId::Hb3 => "q^(n+1-d)/(n+2-d)",
            BoundId::Improved1 => "2^(n-d)+2",
            BoundId::Improved2 => "2q^(n-d)",
            BoundId::Improved3 => "(q^(n+1-d)-1)/(q-1) * q/(n+2-d)",
            BoundId::Improved4 => "2q^(n-d)+(q-2)q",
        }
    }

    /// Needs the zero set to be non-affine (and nonempty).
    pub fn needs_non_affine(self) -> bool {
        self != BoundId::Warning
    }

    pub fn needs_homogeneous(self) -> bool {
        matches!(self, BoundId::Hb3 | BoundId::Improved3 | BoundId::Improved4)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub id: BoundId,
    pub formula: &'static str,
    pub value: Rational,
    pub strict: bool,
    /// Smallest integer count satisfying the bound.
    #[serde(serialize_with = "decimal")]
    pub min_count: BigInt,
    /// Parameter-level hypotheses (q range, homogeneity, n > d, d >= 2) hold.
    pub applicable: bool,
    pub reason: Option<String>,
}

impl Bound {
    fn new(id: BoundId, value: Rational, strict: bool, gate: Option<String>) -> Self {
        let min_count = if strict {
            value.floor() + 1
        } else {
            value.ceil()
        };
        Self {
            id,
            formula: id.formula(),
            value,
            strict,
            min_count,
            applicable: gate.is_none(),
            reason: gate,
        }
    }

    pub fn is_satisfied_by(&self, count: u64) -> bool {
        BigInt::from(count) >= self.min_count
    }

    /// `count - min_count`; zero means the bound is attained.
    pub fn margin(&self, count: u64) -> BigInt {
        BigInt::from(count) - &self.min_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub r: Option<usize>,
    pub homogeneous: bool,
    pub n_gt_d: bool,
    pub bounds: Vec<Bound>,
}

impl BoundReport {
    pub fn get(&self, id: BoundId) -> &Bound {
        self.bounds
            .iter()
            .find(|b| b.id == id)
            .expect("every bound is reported")
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }
}

/// Every bound at `(q, n, d)`, applicable or not.
pub fn bound_values(q: u64, n: u32, d: u32, homogeneous: bool) -> Result<BoundReport> {
    if q < 2 {
        return Err(Error::InvalidParameters(format!(
            "q = {q} is not a field size"
        )));
    }
    let n_gt_d = n > d;
    // exponents may be "negative" when n <= d; clamp so values stay defined
    let e = n.saturating_sub(d);
    let qe = big_pow(q, e);
    let qi = BigInt::from(q);

    let gate = |conds: &[(bool, &str)]| -> Option<String> {
        let mut failed: Vec<&str> = Vec::new();
        if !n_gt_d {
            failed.push("n > d");
        }
        failed.extend(conds.iter().filter(|(ok, _)| !ok).map(|(_, s)| *s));
        (!failed.is_empty()).then(|| format!("requires {}", failed.join(", ")))
    };
    let d2 = (d >= 2, "d >= 2");
    let hom = (homogeneous, "homogeneous system");

    let warning = Rational::integer(qe.clone());
    let hb3 = Rational(BigRational::new(big_pow(q, e + 1), BigInt::from(e + 2)));
    let improved1 = Rational::integer(big_pow(2, e) + 2);
    let improved3 = Rational(BigRational::new(
        (big_pow(q, e + 1) - 1) * &qi,
        BigInt::from(q - 1) * BigInt::from(e + 2),
    ));
    let improved4 = Rational::integer(&qe * 2 + (&qi - 2) * &qi);

    let bounds = vec![
        Bound::new(BoundId::Warning, warning.clone(), false, gate(&[])),
        Bound::new(BoundId::Hb1, warning, true, gate(&[d2])),
        Bound::new(
            BoundId::Hb2,
            Rational::integer(&qe * 2),
            false,
            gate(&[d2, (q >= 4, "q >= 4")]),
        ),
        Bound::new(BoundId::Hb3, hb3, false, gate(&[d2, hom])),
        Bound::new(
            BoundId::Improved1,
            improved1,
            false,
            gate(&[d2, (q == 2, "q = 2")]),
        ),
        Bound::new(
            BoundId::Improved2,
            Rational::integer(&qe * 2),
            false,
            gate(&[d2, (q >= 3, "q >= 3")]),
        ),
        Bound::new(BoundId::Improved3, improved3, true, gate(&[d2, hom])),
        Bound::new(
            BoundId::Improved4,
            improved4,
            false,
            gate(&[d2, (q >= 3, "q >= 3"), hom]),
        ),
    ];
    Ok(BoundReport {
        q,
        n,
        d,
        r: None,
        homogeneous,
        n_gt_d,
        bounds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceCheck {
    pub id: &'static str,
    pub modulus: u64,
    pub residue: u64,
    pub expected: u64,
    pub status: Status,
}

/// Divisibility by `p` and `q`, and `N = 1 mod (q-1)` for homogeneous systems
/// of positive-degree forms; asserted only when `n > d`.
pub fn congruence_checks(
    count: u64,
    q: u64,
    p: u64,
    n: u32,
    d: u32,
    homogeneous: bool,
) -> Vec<CongruenceCheck> {
    let make = |id, modulus: u64, expected: u64, applicable: bool| {
        let residue = count % modulus;
        CongruenceCheck {
            id,
            modulus,
            residue,
            expected: expected % modulus,
            status: if !applicable {
                Status::NotApplicable
            } else if residue == expected % modulus {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    };
    vec![
        make("mod_p", p, 0, n > d),
        make("mod_q", q, 0, n > d),
        make("mod_q_minus_1", (q - 1).max(1), 1, n > d && homogeneous),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31 {
    pub q: u64,
    pub v: u32,
    /// `floor(q v / (v+1))^v`
    #[serde(serialize_with = "decimal")]
    pub lhs: BigInt,
    /// `q^v / (v+1)`
    pub rhs: Rational,
    /// `lhs > rhs`, decided exactly.
    pub holds: bool,
    /// `q >= 2v + 1`, the range the inequality is claimed for.
    pub in_range: bool,
    /// `(v, q)` is one of the listed exceptions `(2, 5)`, `(2, 7)`.
    pub listed_exception: bool,
    /// A listed exception at which the inequality nevertheless holds.
    pub exception_discrepancy: bool,
}

/// Evaluates `floor(qv/(v+1))^v > q^v/(v+1)` exactly.
pub fn lemma31_evaluate(q: u64, v: u32) -> Result<Lemma31> {
    if v < 2 || q < 2 {
        return Err(Error::InvalidParameters(format!(
            "need v >= 2 and q >= 2, got v = {v}, q = {q}"
        )));
    }
    let base = BigInt::from(q * v as u64).div_floor(&BigInt::from(v as u64 + 1));
    let lhs = num_traits::pow(base, v as usize);
    let rhs = Rational(BigRational::new(big_pow(q, v), BigInt::from(v + 1)));
    let holds = BigRational::from_integer(lhs.clone()) > rhs.0;
    let listed_exception = v == 2 && (q == 5 || q == 7);
    Ok(Lemma31 {
        q,
        v,
        lhs,
        rhs,
        holds,
        in_range: q > 2 * v as u64,
        listed_exception,
        exception_discrepancy: listed_exception && holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Larger {
    Bound3,
    Bound4,
    Equal,
}

impl fmt::Display for Larger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Larger::Bound3 => "(3) larger",
            Larger::Bound4 => "(4) larger",
            Larger::Equal => "equal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub v: u32,
    /// `(2 + s) v + 1 + s - (1/q + ... + 1/q^{n-d-1})`, `s = (q^2 - 2q)/q^{n-d}`; absent when `n - d = 1`.
    pub threshold: Option<Rational>,
    /// Sign of `q - threshold`.
    pub q_vs_threshold: Option<i8>,
    /// Verdict from the threshold trichotomy (or the closed form when `n - d = 1`).
    pub verdict: Larger,
    pub bound3: Rational,
    pub bound4: Rational,
    /// Verdict from comparing the two bound values directly.
    pub direct: Larger,
    pub agree: bool,
    /// `q >= 3v + 2`
    pub q_ge_3v_plus_2: bool,
    /// `q <= 2v`
    pub q_le_2v: bool,
    /// `q >= 3v + 2` implies (3) larger and `q <= 2v` implies (4) larger, here.
    pub implications_hold: bool,
}

/// The threshold `T` with `q > T` iff bound (3) beats bound (4), for `n - d >= 2`.
pub fn comparison_threshold(q: u64, n: u32, d: u32) -> Rational {
    let e = n - d;
    let v = BigRational::from_integer(BigInt::from(n + 1 - d));
    let qb = BigInt::from(q);
    let s = BigRational::new(&qb * &qb - &qb * 2, big_pow(q, e));
    let tail: BigRational = (1..e)
        .map(|i| BigRational::new(BigInt::one(), big_pow(q, i)))
        .fold(BigRational::zero(), |a, b| a + b);
    let two = BigRational::from_integer(BigInt::from(2));
    Rational((two + &s) * v + BigRational::one() + s - tail)
}

pub fn compare_bounds_3_4(q: u64, n: u32, d: u32) -> Result<ComparisonReport> {
    if q < 3 || d < 1 || n <= d {
        return Err(Error::InvalidParameters(format!(
            "comparison needs q >= 3, d >= 1, n > d; got q = {q}, n = {n}, d = {d}"
        )));
    }
    let report = bound_values(q, n, d, true)?;
    let bound3 = report.get(BoundId::Improved3).value.clone();
    let bound4 = report.get(BoundId::Improved4).value.clone();
    let direct = match bound3.cmp(&bound4) {
        Ordering::Greater => Larger::Bound3,
        Ordering::Less => Larger::Bound4,
        Ordering::Equal => Larger::Equal,
    };
    let v = n + 1 - d;
    let (threshold, q_vs, verdict) = if n - d >= 2 {
        let t = comparison_threshold(q, n, d);
        let ord = BigRational::from_integer(BigInt::from(q)).cmp(&t.0);
        let verdict = match ord {
            Ordering::Greater => Larger::Bound3,
            Ordering::Less => Larger::Bound4,
            Ordering::Equal => Larger::Equal,
        };
        let sign = match ord {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        };
        (Some(t), Some(sign), verdict)
    } else {
        // q^2 > (q^2 + q)/3 for every q >= 3
        (None, None, Larger::Bound4)
    };
    let q_ge = q >= 3 * v as u64 + 2;
    let q_le = q <= 2 * v as u64;
    let implications_hold = threshold.is_none()
        || ((!q_ge || verdict == Larger::Bound3) && (!q_le || verdict == Larger::Bound4));
    Ok(ComparisonReport {
        q,
        n,
        d,
        v,
        threshold,
        q_vs_threshold: q_vs,
        verdict,
        bound3,
        bound4,
        direct,
        agree: verdict == direct,
        q_ge_3v_plus_2: q_ge,
        q_le_2v: q_le,
        implications_hold,
    })
}

/// Renders a signed big integer margin compactly for text output.
fn decimal<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn signed(x: &BigInt) -> String {
    if x.is_negative() {
        x.to_string()
    } else {
        format!("+{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_goldens() {
        let r = bound_values(3, 3, 2, true).unwrap();
        assert_eq!(r.get(BoundId::Improved2).value, Rational::integer(6));
        assert_eq!(r.get(BoundId::Improved4).value, Rational::integer(9));
        assert!(r.get(BoundId::Improved4).applicable);
        assert!(!r.get(BoundId::Improved1).applicable);

        let r = bound_values(5, 3, 2, true).unwrap();
        assert_eq!(r.get(BoundId::Improved3).value, Rational::integer(10));
        assert_eq!(r.get(BoundId::Improved3).min_count, BigInt::from(11));
        let r = bound_values(7, 3, 2, true).unwrap();
        assert_eq!(r.get(BoundId::Improved3).value, Rational::new(56, 3));
        assert_eq!(r.get(BoundId::Improved3).min_count, BigInt::from(19));

        let r = bound_values(2, 5, 2, false).unwrap();
        assert_eq!(r.get(BoundId::Improved1).value, Rational::integer(10));
        assert!(r.get(BoundId::Improved1).applicable);
        assert!(!r.get(BoundId::Improved3).applicable);
    }

    #[test]
    fn hb3_is_ceiling_not_strict() {
        // q^(n+1-d)/(n+2-d) = 27/4 at q = 3, n - d = 2
        let r = bound_values(3, 4, 2, true).unwrap();
        let b = r.get(BoundId::Hb3);
        assert_eq!(b.value, Rational::new(27, 4));
        assert_eq!(b.min_count, BigInt::from(7));
        assert!(!b.strict);
    }

    #[test]
    fn n_not_above_d_is_flagged() {
        let r = bound_values(3, 2, 2, true).unwrap();
        assert!(!r.n_gt_d);
        assert!(r.bounds.iter().all(|b| !b.applicable));
        assert!(bound_values(1, 3, 2, true).is_err());
    }

    #[test]
    fn congruences() {
        let c = congruence_checks(6, 3, 3, 3, 2, false);
        assert_eq!(c[0].status, Status::Pass);
        assert_eq!(c[1].status, Status::Pass);
        assert_eq!(c[2].status, Status::NotApplicable);
        assert_eq!(c[2].residue, 0);
        let c = congruence_checks(9, 3, 3, 3, 2, true);
        assert!(c.iter().all(|x| x.status == Status::Pass));
        let c = congruence_checks(0, 4, 2, 3, 2, false);
        assert_eq!(c[0].status, Status::Pass);
        assert_eq!(c[1].status, Status::Pass);
        let c = congruence_checks(5, 3, 3, 3, 2, true);
        assert_eq!(c[1].status, Status::Fail);
        let c = congruence_checks(5, 3, 3, 2, 2, true);
        assert!(c.iter().all(|x| x.status == Status::NotApplicable));
    }

    #[test]
    fn lemma31_examples() {
        let l = lemma31_evaluate(7, 2).unwrap();
        assert_eq!(l.lhs, BigInt::from(16));
        assert_eq!(l.rhs, Rational::new(49, 3));
        assert!(!l.holds && l.listed_exception && !l.exception_discrepancy);
        let l = lemma31_evaluate(8, 2).unwrap();
        assert_eq!(
            (l.lhs.clone(), l.rhs.clone(), l.holds),
            (BigInt::from(25), Rational::new(64, 3), true)
        );
        let l = lemma31_evaluate(7, 3).unwrap();
        assert_eq!(
            (l.lhs.clone(), l.rhs.clone(), l.holds),
            (BigInt::from(125), Rational::new(343, 4), true)
        );
        let l = lemma31_evaluate(5, 2).unwrap();
        assert_eq!(l.lhs, BigInt::from(9));
        assert!(l.holds && l.listed_exception && l.exception_discrepancy);
        assert!(lemma31_evaluate(5, 1).is_err());
    }

    #[test]
    fn comparison_examples() {
        let c = compare_bounds_3_4(3, 4, 2).unwrap();
        assert_eq!(c.threshold, Some(Rational::integer(8)));
        assert_eq!(c.verdict, Larger::Bound4);
        assert_eq!(c.bound4, Rational::integer(21));
        assert_eq!(c.bound3, Rational::new(39, 4));
        assert!(c.agree);

        let c = compare_bounds_3_4(11, 4, 2).unwrap();
        assert!(c.q_ge_3v_plus_2);
        assert_eq!(c.verdict, Larger::Bound3);
        assert_eq!(c.bound3, Rational::new(1463, 4));
        assert_eq!(c.bound4, Rational::integer(341));
        assert!(c.agree && c.implications_hold);

        for q in [3, 4, 5, 7, 9] {
            let c = compare_bounds_3_4(q, 3, 2).unwrap();
            assert_eq!(c.threshold, None);
            assert_eq!(c.bound4, Rational::integer(q as i64 * q as i64));
            assert_eq!(c.bound3, Rational::new(q * q + q, 3));
            assert_eq!(c.verdict, Larger::Bound4);
            assert!(c.agree);
        }
        assert!(compare_bounds_3_4(2, 5, 2).is_err());
        assert!(compare_bounds_3_4(3, 2, 2).is_err());
    }

    #[test]
    fn rational_json_shape() {
        let j = serde_json::to_value(Rational::new(112, 6)).unwrap();
        assert_eq!(j, serde_json::json!({"num": "56", "den": "3"}));
    }
}
