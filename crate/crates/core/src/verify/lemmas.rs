use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::Status;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::PolySystem;
use crate::zeroset::subspaces::{
    all_affine_subspaces, all_subspaces, count_subspaces, random_subspace,
};
use crate::zeroset::{
    checked_pow, coset_counts_from_zeros, enumerate_zeros, point_code, point_from_code,
    AffineSpace, Budget, CosetCounts, Point,
};

/// Largest ambient space handled by the bitmask checkers.
const MAX_POINTS: u128 = 128;
/// Above this many directions, [`verify_thm21`] samples instead.
const DIRECTION_LIMIT: u128 = 4096;

/// An affine subspace as a bitmask over point codes.
#[derive(Clone, Copy, Debug)]
struct Flat {
    dim: usize,
    mask: u128,
}

fn flats(field: &Field, n: usize) -> Result<Vec<Flat>> {
    let total = checked_pow(field.order(), n);
    if total > MAX_POINTS {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: MAX_POINTS,
        });
    }
    Ok(all_affine_subspaces(field, n)
        .into_iter()
        .map(|a| Flat {
            dim: a.dim(),
            mask: a
                .points()
                .iter()
                .fold(0u128, |m, p| m | 1 << point_code(field, p)),
        })
        .collect())
}

fn mask_points(field: &Field, n: usize, mask: u128) -> Vec<Point> {
    (0..128u128)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| point_from_code(field, n, i))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaPart {
    /// `q = 2`: no plane meets `S` in exactly 3 points implies `S` is everything.
    Planes,
    /// `q >= 3`: lines meeting `S` twice lie in `S` implies `S` is everything.
    Lines,
    /// `q >= 4`: such lines meet `S` in at least `q - 1` points implies the
    /// complement lies in a hyperplane.
    NearlyFullLines,
    /// Such lines meet `S` in at least `m + 1` points implies
    /// `|S| >= (m^{t+1} - 1)/(m - 1)`.
    Size { m: u32 },
}

impl LemmaPart {
    /// Parts are numbered 1 to 4; part 4 defaults to `m = max(2, q - 1)`.
    pub fn from_number(part: u32, q: u64, m: Option<u32>) -> Result<Self> {
        match part {
            1 => Ok(LemmaPart::Planes),
            2 => Ok(LemmaPart::Lines),
            3 => Ok(LemmaPart::NearlyFullLines),
            4 => {
                let m = m.unwrap_or((q.saturating_sub(1)).max(2) as u32);
                if m < 2 {
                    return Err(Error::InvalidParameters("part 4 needs m >= 2".into()));
                }
                Ok(LemmaPart::Size { m })
            }
            other => Err(Error::InvalidParameters(format!(
                "no part {other}; parts are 1 to 4"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma23Verdict {
    pub q: u64,
    pub t: usize,
    pub part: LemmaPart,
    pub subsets_checked: u64,
    /// Subsets spanning the space and meeting the part's line hypothesis.
    pub qualifying: u64,
    pub status: Status,
    pub counterexample: Option<Vec<Point>>,
    pub note: Option<String>,
}

/// Checks one part of the line-structure lemma over every subset of `F_q^t`
/// containing `t + 1` points in general position.
pub fn verify_lemma23(q: u64, t: usize, part: LemmaPart, budget: Budget) -> Result<Lemma23Verdict> {
    let field = Field::of_order(q)?;
    if t == 0 {
        return Err(Error::InvalidParameters("need t >= 1".into()));
    }
    let applicable = match part {
        LemmaPart::Planes => q == 2,
        LemmaPart::Lines => q >= 3,
        LemmaPart::NearlyFullLines => q >= 4,
        LemmaPart::Size { .. } => true,
    };
    let mut verdict = Lemma23Verdict {
        q,
        t,
        part,
        subsets_checked: 0,
        qualifying: 0,
        status: Status::NotApplicable,
        counterexample: None,
        note: None,
    };
    if !applicable {
        verdict.note = Some(format!("the part's hypothesis on q excludes q = {q}"));
        return Ok(verdict);
    }
    let npts = checked_pow(field.order(), t);
    let subsets = 1u128
        .checked_shl(npts as u32)
        .filter(|_| npts < 128)
        .unwrap_or(u128::MAX);
    budget.check(subsets)?;
    let all = flats(&field, t)?;
    let full = if npts == 128 {
        u128::MAX
    } else {
        (1u128 << npts) - 1
    };
    let lines: Vec<u128> = all.iter().filter(|f| f.dim == 1).map(|f| f.mask).collect();
    let planes: Vec<u128> = all.iter().filter(|f| f.dim == 2).map(|f| f.mask).collect();
    let hyper: Vec<u128> = all
        .iter()
        .filter(|f| f.dim + 1 == t)
        .map(|f| f.mask)
        .collect();

    for s in 0..subsets {
        verdict.subsets_checked += 1;
        // spans F_q^t iff no hyperplane contains it
        if !hyper.iter().all(|&h| s & !h != 0) {
            continue;
        }
        let meets = |l: u128| (s & l).count_ones();
        let (hyp, concl) = match part {
            LemmaPart::Planes => (planes.iter().all(|&p| meets(p) != 3), s == full),
            LemmaPart::Lines => (
                lines.iter().all(|&l| meets(l) < 2 || l & !s == 0),
                s == full,
            ),
            LemmaPart::NearlyFullLines => (
                lines
                    .iter()
                    .all(|&l| meets(l) < 2 || meets(l) as u64 + 1 >= q),
                s == full || hyper.iter().any(|&h| (full & !s) & !h == 0),
            ),
            LemmaPart::Size { m } => {
                let need = (0..=t as u32).map(|i| (m as u128).pow(i)).sum::<u128>();
                (
                    lines.iter().all(|&l| meets(l) < 2 || meets(l) > m),
                    s.count_ones() as u128 >= need,
                )
            }
        };
        if !hyp {
            continue;
        }
        verdict.qualifying += 1;
        if !concl {
            verdict.status = Status::Fail;
            verdict.counterexample = Some(mask_points(&field, t, s));
            return Ok(verdict);
        }
    }
    verdict.status = Status::Pass;
    if verdict.qualifying == 0 {
        verdict.note = Some("no subset meets the hypothesis; holds vacuously".into());
    }
    Ok(verdict)
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm21Verdict {
    pub m: usize,
    pub d: u32,
    pub directions_checked: usize,
    /// Every `m`-dimensional direction was checked.
    pub exhaustive: bool,
    pub status: Status,
    pub counterexample: Option<CosetCounts>,
}

/// Parallel `m`-dimensional affine spaces carry zero counts congruent mod `q`
/// when `m >= d`; checks every direction, or a seeded sample of `sample`
/// directions when there are too many.
pub fn verify_thm21(
    system: &PolySystem,
    m: usize,
    budget: Budget,
    sample: usize,
    seed: u64,
) -> Result<Thm21Verdict> {
    let f = system.field();
    let n = system.nvars();
    let d = system.total_degree();
    if m < d as usize || m > n {
        return Err(Error::InvalidParameters(format!(
            "need d <= m <= n, got d = {d}, m = {m}, n = {n}"
        )));
    }
    let zeros = enumerate_zeros(system, &AffineSpace::full(f, n), budget)?;
    let exhaustive = count_subspaces(f.order(), n, m) <= DIRECTION_LIMIT;
    let dirs = if exhaustive {
        all_subspaces(f, n, m)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..sample)
            .map(|_| random_subspace(f, n, m, &mut rng))
            .collect()
    };
    let q = f.order() as u64;
    let mut out = Thm21Verdict {
        m,
        d,
        directions_checked: 0,
        exhaustive,
        status: Status::Pass,
        counterexample: None,
    };
    for basis in &dirs {
        out.directions_checked += 1;
        let cc = coset_counts_from_zeros(f, n, d, zeros.points(), basis)?;
        if !cc.congruent_mod(q) {
            out.status = Status::Fail;
            out.counterexample = Some(cc);
            break;
        }
    }
    Ok(out)
}

/// Outcome of an exhaustive scan over the affine subspaces of a tiny space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinExtensionVerdict {
    pub configurations: u64,
    pub status: Status,
    pub counterexample: Option<String>,
}

fn zero_mask(system: &PolySystem, budget: Budget) -> Result<u128> {
    let f = system.field();
    let zeros = enumerate_zeros(system, &AffineSpace::full(f, system.nvars()), budget)?;
    Ok(zeros
        .points()
        .iter()
        .fold(0u128, |m, p| m | 1 << point_code(f, p)))
}

/// For every affine space `L0`, every maximal `L ⊇ L0` with the same zero
/// count, and the `(dim L + 1)`-dimensional `L' ⊃ L` of minimal count:
/// `N(L') > N(L)` and
/// `N >= N(L) + (q^{n-k} - 1)/(q - 1) * (N(L') - N(L))`, `k = dim L`.
pub fn verify_min_extension(system: &PolySystem, budget: Budget) -> Result<MinExtensionVerdict> {
    let f = system.field();
    let n = system.nvars();
    let q = f.order() as u128;
    let all = flats(f, n)?;
    let z = zero_mask(system, budget)?;
    let total = z.count_ones() as u128;
    let count = |m: u128| (m & z).count_ones() as u128;
    let mut out = MinExtensionVerdict {
        configurations: 0,
        status: Status::Pass,
        counterexample: None,
    };
    for l0 in &all {
        let c0 = count(l0.mask);
        let same: Vec<&Flat> = all
            .iter()
            .filter(|l| l.mask & l0.mask == l0.mask && count(l.mask) == c0)
            .collect();
        let k = same
            .iter()
            .map(|l| l.dim)
            .max()
            .expect("L0 itself qualifies");
        if k == n {
            continue;
        }
        for l in same.iter().filter(|l| l.dim == k) {
            let c1 = all
                .iter()
                .filter(|x| x.dim == k + 1 && x.mask & l.mask == l.mask)
                .map(|x| count(x.mask))
                .min()
                .expect("a flat of dimension k < n has extensions");
            out.configurations += 1;
            let rhs = c0 as i128 + ((q.pow((n - k) as u32) - 1) / (q - 1) * c1) as i128
                - ((q.pow((n - k) as u32) - 1) / (q - 1) * c0) as i128;
            if c1 <= c0 || (total as i128) < rhs {
                out.status = Status::Fail;
                out.counterexample = Some(format!(
                    "L0 = {}, L = {} (N = {c0}), min N(L') = {c1}, N = {total}",
                    fmt_points(&mask_points(f, n, l0.mask)),
                    fmt_points(&mask_points(f, n, l.mask))
                ));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

fn fmt_points(points: &[Point]) -> String {
    let items: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "({})",
                p.iter()
                    .map(|e| e.0.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("{{{}}}", items.join(" "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseDimsVerdict {
    /// Affine spaces with `2 <= N(L) <= q - 1`.
    pub configurations: u64,
    pub status: Status,
    pub counterexample: Option<String>,
    /// For homogeneous systems: an affine space missing the origin with the
    /// full dimension `d`, which the `d - 1` limit does not cover.
    pub off_origin_at_d: Option<String>,
}

/// Every affine space `L` with `2 <= N(L) <= q - 1` has `dim L <= d`; for
/// homogeneous systems, `dim L <= d - 1` when `L` passes through the origin.
pub fn verify_dense_affine_dims(system: &PolySystem, budget: Budget) -> Result<DenseDimsVerdict> {
    let f = system.field();
    let n = system.nvars();
    let q = f.order();
    let d = system.total_degree() as usize;
    let homogeneous = system.is_homogeneous();
    let z = zero_mask(system, budget)?;
    let mut out = DenseDimsVerdict {
        configurations: 0,
        status: Status::Pass,
        counterexample: None,
        off_origin_at_d: None,
    };
    for l in flats(f, n)? {
        let c = (l.mask & z).count_ones();
        if c < 2 || c >= q {
            continue;
        }
        out.configurations += 1;
        let through_origin = l.mask & 1 == 1;
        let limit = if homogeneous && through_origin {
            d.saturating_sub(1)
        } else {
            d
        };
        let describe = || {
            format!(
                "dimension {} flat {} with zeros {}",
                l.dim,
                fmt_points(&mask_points(f, n, l.mask)),
                fmt_points(&mask_points(f, n, l.mask & z))
            )
        };
        if l.dim > limit {
            out.status = Status::Fail;
            out.counterexample = Some(format!("{} exceeds {limit}", describe()));
            return Ok(out);
        }
        if homogeneous && !through_origin && l.dim + 1 > d && out.off_origin_at_d.is_none() {
            out.off_origin_at_d = Some(describe());
        }
    }
    Ok(out)
}
