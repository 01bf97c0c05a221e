//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines always print; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use chevalley::bounds::{
    bound_values, compare_bounds_3_4, lemma31_evaluate, BoundId, Larger, Rational, Status,
};
use chevalley::constructions::{prop41_form, prop42_form, sharp_catalog};
use chevalley::error::Error;
use chevalley::gf::Field;
use chevalley::poly::PolySystem;
use chevalley::verify::{run_campaign, run_preset, verify_lemma23, CampaignConfig, LemmaPart};
use chevalley::zeroset::{count_zeros, is_affine_space, AffineSpace, Budget};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const LIMIT_PUBLISHED_VALUES: Duration = Duration::from_secs(1);
const LIMIT_RECURSIONS: Duration = Duration::from_secs(1);
const LIMIT_COMPARISON: Duration = Duration::from_secs(5);
const LIMIT_CAMPAIGNS: Duration = Duration::from_secs(120);
const LIMIT_MICRO_ORACLES: Duration = Duration::from_secs(60);

type Outcome = std::result::Result<String, String>;
type Criterion = Box<dyn FnOnce() -> Outcome>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("{detail}; took {elapsed:.2?}, limit {limit:?}")
    })?;
    Ok(format!("{detail} in {elapsed:.2?}"))
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi)
        .filter(|&q| {
            let p = (2..=q).find(|p| q % p == 0).unwrap();
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            r == 1
        })
        .collect()
}

/// Common zeros of integer-coefficient polynomials over a prime field, by direct evaluation.
fn naive_count(p: u64, n: u32, f: impl Fn(&[u64]) -> u64) -> u64 {
    let mut x = vec![0u64; n as usize];
    let mut count = 0;
    for code in 0..p.pow(n) {
        let mut c = code;
        for xi in x.iter_mut().rev() {
            *xi = c % p;
            c /= p;
        }
        if f(&x).is_multiple_of(p) {
            count += 1;
        }
    }
    count
}

fn published_values() -> Outcome {
    // (name, zero count, bound matched with equality), as published
    let expected: [(&str, u64, BoundId); 6] = [
        ("prop41(d=2)", 4, BoundId::Improved1),
        ("prop42(d=2)", 6, BoundId::Improved1),
        ("g", 6, BoundId::Improved2),
        ("h", 9, BoundId::Improved4),
        ("j", 9, BoundId::Improved4),
        ("h4", 21, BoundId::Improved4),
    ];
    let report = run_preset("paper-regression", Budget::DEFAULT).map_err(|e| e.to_string())?;
    ensure(report.certificates.len() == expected.len(), || {
        "wrong number of certificates".into()
    })?;
    for (c, (name, n_zeros, bound)) in report.certificates.iter().zip(expected) {
        ensure(c.name == name, || {
            format!("expected {name}, got {}", c.name)
        })?;
        ensure(c.measured_count == n_zeros, || {
            format!("{name}: N = {}, expected {n_zeros}", c.measured_count)
        })?;
        ensure(!c.measured_affine, || format!("{name}: zero set is affine"))?;
        let homogeneous = c.homogeneous;
        let b = bound_values(c.q, c.n as u32, c.d, homogeneous).map_err(|e| e.to_string())?;
        let b = b.get(bound);
        ensure(
            b.applicable && b.value == Rational::integer(n_zeros as i64),
            || format!("{name}: {bound} = {}, N = {n_zeros}", b.value),
        )?;
        ensure(c.verified, || format!("{name}: certificate not verified"))?;
    }
    let oracle = [
        naive_count(2, 3, |x| x[0] * x[1] + x[2] * x[2]),
        naive_count(2, 4, |x| {
            x[0] * x[0] + x[0] * x[1] + x[1] * x[1] + x[2] * x[3]
        }),
        naive_count(3, 3, |x| x[0] * x[1] + x[2] * x[2] + 1),
        naive_count(3, 3, |x| x[0] * x[1] + 2 * x[2] * x[2]),
        naive_count(3, 4, |x| x[0] * x[1] + x[2] * x[2] + x[3] * x[3]),
    ];
    ensure(oracle == [4, 6, 6, 9, 21], || {
        format!("direct evaluation gives {oracle:?}")
    })?;
    Ok("6 sharp, non-affine examples reproduced".into())
}

fn recursions() -> Outcome {
    let budget = Budget(1 << 12);
    for d in 2..=10u32 {
        for (name, form, expected) in [("prop41", prop41_form(d), 4), ("prop42", prop42_form(d), 6)]
        {
            let form = form.map_err(|e| format!("{name}({d}): {e}"))?;
            ensure(form.degree() == Some(d) && form.is_homogeneous(), || {
                format!("{name}({d}) is not a form of degree {d}")
            })?;
            let n = form.nvars();
            let f = form.field().clone();
            let count = count_zeros(&PolySystem::single(form), &AffineSpace::full(&f, n), budget)
                .map_err(|e| format!("{name}({d}): {e}"))?;
            ensure(count == expected, || {
                format!("{name}({d}): N = {count}, expected {expected}")
            })?;
        }
    }
    Ok("d = 2..10, 4 and 6 zeros".into())
}

fn bound_goldens() -> Outcome {
    let b = |q, n, d| bound_values(q, n, d, true).map_err(|e| e.to_string());
    let at52 = b(5, 3, 2)?;
    let at72 = b(7, 3, 2)?;
    ensure(
        at52.get(BoundId::Improved3).value == Rational::integer(10),
        || "(5,2) is not 10".into(),
    )?;
    ensure(
        at72.get(BoundId::Improved3).value == Rational::new(56, 3),
        || "(7,2) is not 56/3".into(),
    )?;
    let mut cases = 0;
    for q in prime_powers(2, 64) {
        for d in 2..=6u32 {
            for e in 1..=8u32 {
                let r = b(q, d + e, d)?;
                let (new, old) = (&r.get(BoundId::Improved3).value, &r.get(BoundId::Hb3).value);
                ensure(new > old, || format!("q={q} d={d} n-d={e}: {new} <= {old}"))?;
                // (q^(e+1) - 1)/(q - 1) * q/(e + 2) against q^(e+1)/(e + 2), both exact
                let q_e1 = big(q).pow(e + 1);
                let lhs = BigRational::new((&q_e1 - 1u32) * big(q), big(q - 1) * big(e as u64 + 2));
                let rhs = BigRational::new(q_e1, big(e as u64 + 2));
                ensure(new.0 == lhs && old.0 == rhs, || {
                    format!("q={q} d={d} n-d={e}: values differ from direct")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "goldens 10 and 56/3; strict improvement on {cases} cases"
    ))
}

fn lemma31() -> Outcome {
    let mut failing = Vec::new();
    let mut cases = 0;
    for v in 2..=20u32 {
        for q in (2 * v as u64 + 1)..=200 {
            let l = lemma31_evaluate(q, v).map_err(|e| e.to_string())?;
            let m = big(q * v as u64) / big(v as u64 + 1);
            let direct = m.pow(v) * big(v as u64 + 1) > big(q).pow(v);
            ensure(l.holds == direct, || {
                format!("(v,q)=({v},{q}): evaluator {} vs direct {direct}", l.holds)
            })?;
            ensure(l.in_range, || format!("({v},{q}) reported out of range"))?;
            if !direct {
                failing.push((v, q));
            }
            cases += 1;
        }
    }
    ensure(failing == [(2, 7)], || {
        format!("inequality fails at {failing:?}")
    })?;
    let at25 = lemma31_evaluate(5, 2).map_err(|e| e.to_string())?;
    ensure(
        at25.holds && at25.listed_exception && at25.exception_discrepancy,
        || "(2,5) discrepancy not reported".into(),
    )?;
    let at27 = lemma31_evaluate(7, 2).map_err(|e| e.to_string())?;
    ensure(
        !at27.holds && at27.listed_exception && !at27.exception_discrepancy,
        || "(2,7) misreported".into(),
    )?;
    Ok(format!(
        "{cases} exact verdicts; fails only at (2,7); (2,5) holds though listed"
    ))
}

fn comparison() -> Outcome {
    let mut cases = 0;
    for q in prime_powers(3, 64) {
        for d in 2..=5u32 {
            for e in 2..=8u32 {
                let n = d + e;
                let c = compare_bounds_3_4(q, n, d).map_err(|err| err.to_string())?;
                let v = e + 1;
                let qq = big(q);
                let b3 = BigRational::new((qq.pow(v) - 1u32) * &qq, big(q - 1) * big(v as u64 + 1));
                let b4 = BigRational::from_integer(big(2) * qq.pow(e) + big(q - 2) * &qq);
                let direct = match b3.cmp(&b4) {
                    std::cmp::Ordering::Greater => Larger::Bound3,
                    std::cmp::Ordering::Less => Larger::Bound4,
                    std::cmp::Ordering::Equal => Larger::Equal,
                };
                ensure(c.verdict == direct, || {
                    format!("q={q} n={n} d={d}: verdict {} vs {direct}", c.verdict)
                })?;
                ensure(c.bound3.0 == b3 && c.bound4.0 == b4, || {
                    format!("q={q} n={n} d={d}: bound values")
                })?;
                // T = (2 + (q^2-2q)/q^e) v + 1 + (q^2-2q)/q^e - sum_{i=1}^{e-1} q^-i
                let s = BigRational::new(big(q * q - 2 * q), qq.pow(e));
                let tail: BigRational = (1..e)
                    .map(|i| BigRational::new(BigInt::one(), qq.pow(i)))
                    .fold(BigRational::zero(), |a, b| a + b);
                let t = (BigRational::from_integer(big(2)) + &s)
                    * BigRational::from_integer(big(v as u64))
                    + BigRational::one()
                    + &s
                    - tail;
                ensure(c.threshold.as_ref().map(|x| &x.0) == Some(&t), || {
                    format!("q={q} n={n} d={d}: threshold")
                })?;
                let qr = BigRational::from_integer(qq.clone());
                let trichotomy = if qr > t {
                    Larger::Bound3
                } else if qr < t {
                    Larger::Bound4
                } else {
                    Larger::Equal
                };
                ensure(trichotomy == direct, || {
                    format!("q={q} n={n} d={d}: trichotomy {trichotomy} vs {direct}")
                })?;
                if q >= 3 * v as u64 + 2 {
                    ensure(direct == Larger::Bound3, || {
                        format!("q={q} v={v}: q >= 3v+2 but (3) not larger")
                    })?;
                }
                if q <= 2 * v as u64 {
                    ensure(direct == Larger::Bound4, || {
                        format!("q={q} v={v}: q <= 2v but (4) not larger")
                    })?;
                }
                ensure(c.agree && c.implications_hold, || {
                    format!("q={q} n={n} d={d}: report flags")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} grid points agree"))
}

const SUITE_CHECKS: [&str; 15] = [
    "chevalley",
    "warning_mod_p",
    "ax_mod_q",
    "warning_bound",
    "projective_mod_q_minus_1",
    "parallel_congruence",
    "sparse_coset_bound",
    "general_position",
    "hb1",
    "hb2",
    "hb3",
    "improved1",
    "improved2",
    "improved3",
    "improved4",
];

fn campaign_config(field: &str, seed: u64) -> CampaignConfig {
    CampaignConfig {
        field: field.into(),
        n_min: 2,
        n_max: 6,
        r_min: 1,
        r_max: 2,
        d_min: 1,
        d_max: 4,
        total_degree_max: Some(4),
        instances: 1000,
        seed,
        ..CampaignConfig::default()
    }
}

fn theorem_suites() -> Outcome {
    let mut passes: BTreeMap<String, u64> = BTreeMap::new();
    let mut total = 0;
    for field in ["GF(2)", "GF(3)", "GF(4)", "GF(5)"] {
        let r = run_campaign(&campaign_config(field, 2024)).map_err(|e| e.to_string())?;
        ensure(!r.aborted && r.instances_run == 1000, || {
            format!(
                "{field}: aborted after {} instances on {:?}",
                r.instances_run, r.failed_checks
            )
        })?;
        for (id, t) in &r.tallies {
            ensure(t.fail == 0, || {
                format!("{field}: {id} failed {} times", t.fail)
            })?;
            *passes.entry(id.clone()).or_default() += t.pass;
        }
        total += r.instances_run;
    }
    let idle: Vec<&str> = SUITE_CHECKS
        .iter()
        .copied()
        .filter(|id| passes.get(*id).copied().unwrap_or(0) == 0)
        .collect();
    ensure(idle.is_empty(), || format!("never exercised: {idle:?}"))?;
    Ok(format!(
        "{total} systems, 0 violations across {} checks",
        passes.len()
    ))
}

/// All affine subspaces of F_p^2 as point sets, built from integer arithmetic mod p.
fn affine_subsets_of_plane(p: u64) -> BTreeSet<BTreeSet<(u64, u64)>> {
    let pts: Vec<(u64, u64)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    out.insert(pts.iter().copied().collect());
    for &a in &pts {
        out.insert(BTreeSet::from([a]));
        for &b in &pts {
            if a != b {
                let dir = ((b.0 + p - a.0) % p, (b.1 + p - a.1) % p);
                out.insert(
                    (0..p)
                        .map(|t| ((a.0 + t * dir.0) % p, (a.1 + t * dir.1) % p))
                        .collect(),
                );
            }
        }
    }
    out
}

fn micro_oracles() -> Outcome {
    let mut polys = 0;
    for p in [2u64, 3] {
        let f = Field::prime(p as u32).map_err(|e| e.to_string())?;
        let affine = affine_subsets_of_plane(p);
        // coefficients of 1, x1, x2, x1^2, x1*x2, x2^2
        for code in 0..p.pow(6) {
            let c: Vec<u64> = (0..6).map(|i| code / p.pow(i) % p).collect();
            let zeros: Vec<(u64, u64)> = (0..p)
                .flat_map(|a| (0..p).map(move |b| (a, b)))
                .filter(|&(a, b)| {
                    (c[0] + c[1] * a + c[2] * b + c[3] * a * a + c[4] * a * b + c[5] * b * b)
                        .is_multiple_of(p)
                })
                .collect();
            let points: Vec<Vec<_>> = zeros
                .iter()
                .map(|&(a, b)| vec![f.from_int(a as i64), f.from_int(b as i64)])
                .collect();
            let set: BTreeSet<(u64, u64)> = zeros.iter().copied().collect();
            match is_affine_space(&f, &points) {
                Err(Error::EmptySet) => {
                    ensure(zeros.is_empty(), || "EmptySet on a nonempty set".into())?
                }
                Err(e) => return Err(e.to_string()),
                Ok(v) => {
                    ensure(v.is_affine == affine.contains(&set), || {
                        format!("p={p} coefficients {c:?}: {}", v.is_affine)
                    })?;
                    if let Some(w) = &v.witness {
                        ensure(w.confirms(&f, &points), || {
                            format!("p={p} coefficients {c:?}: bad witness")
                        })?;
                    }
                }
            }
            polys += 1;
        }
    }
    let mut runs = Vec::new();
    let mut passed_parts = BTreeSet::new();
    for (q, t) in [(2u64, 1usize), (2, 2), (2, 3), (3, 2)] {
        for part in [1u32, 2, 4] {
            let v = verify_lemma23(
                q,
                t,
                LemmaPart::from_number(part, q, None).map_err(|e| e.to_string())?,
                Budget::DEFAULT,
            )
            .map_err(|e| e.to_string())?;
            let applicable = match part {
                1 => q == 2,
                2 => q >= 3,
                _ => true,
            };
            let expected = if applicable {
                Status::Pass
            } else {
                Status::NotApplicable
            };
            ensure(v.status == expected, || {
                format!(
                    "q={q} t={t} part {part}: {:?} {:?}",
                    v.status, v.counterexample
                )
            })?;
            ensure(
                !applicable || v.subsets_checked == 1u64 << q.pow(t as u32),
                || format!("q={q} t={t}: not exhaustive"),
            )?;
            if applicable {
                passed_parts.insert(part);
                runs.push(format!("{part}@{q}^{t}"));
            }
        }
    }
    ensure(passed_parts.len() == 3, || "some part never applied".into())?;
    Ok(format!(
        "{polys} quadrics agree with subspace search; line structure {}",
        runs.join(" ")
    ))
}

fn determinism() -> Outcome {
    let run = || -> std::result::Result<(String, String, String), String> {
        let cfg = CampaignConfig {
            instances: 200,
            ..campaign_config("GF(4)", 99)
        };
        let c = run_campaign(&cfg).map_err(|e| e.to_string())?;
        let cat = sharp_catalog(3, Budget::DEFAULT).map_err(|e| e.to_string())?;
        let f = Field::prime(3).unwrap();
        let h = PolySystem::parse(&f, 4, &["x1*x2 + x3^2 + x4^2"]).map_err(|e| e.to_string())?;
        let opts = chevalley::verify::AnalyzeOptions {
            seed: 5,
            ..Default::default()
        };
        let a = chevalley::verify::analyze(&h, &opts).map_err(|e| e.to_string())?;
        let json = |r: serde_json::Result<String>| r.map_err(|e| e.to_string());
        Ok((
            json(serde_json::to_string(&c))?,
            json(serde_json::to_string(&cat))?,
            json(serde_json::to_string(&a))?,
        ))
    };
    let first = run()?;
    let second = run()?;
    ensure(first == second, || "reports differ between runs".into())?;
    Ok(format!(
        "{} bytes of JSON identical across two runs",
        first.0.len() + first.1.len() + first.2.len()
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        (
            "published-value regression",
            Box::new(|| timed(LIMIT_PUBLISHED_VALUES, published_values)),
        ),
        (
            "recursive constructions",
            Box::new(|| timed(LIMIT_RECURSIONS, recursions)),
        ),
        ("bound arithmetic", Box::new(bound_goldens)),
        ("auxiliary inequality", Box::new(lemma31)),
        (
            "comparison calculus",
            Box::new(|| timed(LIMIT_COMPARISON, comparison)),
        ),
        (
            "theorem suites",
            Box::new(|| timed(LIMIT_CAMPAIGNS, theorem_suites)),
        ),
        (
            "micro-oracles",
            Box::new(|| timed(LIMIT_MICRO_ORACLES, micro_oracles)),
        ),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
