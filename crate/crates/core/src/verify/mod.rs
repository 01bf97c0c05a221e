//! Per-instance analysis against every applicable theorem, seeded campaigns
//! over random or exhaustive instance streams, and exhaustive lemma checkers.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    bound_values, congruence_checks, BoundId, BoundReport, CongruenceCheck, Rational, Status,
};
use crate::constructions::{self, ConstructionCertificate};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::{PolySystem, Polynomial};
use crate::zeroset::subspaces::{all_subspaces, count_subspaces, random_subspace};
use crate::zeroset::{
    coset_counts_from_zeros, enumerate_zeros, is_affine_space, max_general_position, AffineSpace,
    AffineWitness, Budget, CosetCounts, Point,
};

mod lemmas;

pub use lemmas::{
    verify_dense_affine_dims, verify_lemma23, verify_min_extension, verify_thm21, DenseDimsVerdict,
    Lemma23Verdict, LemmaPart, MinExtensionVerdict, Thm21Verdict,
};

/// One verdict of an [`AnalysisReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// Count minus bound for lower bounds.
    pub margin: Option<Rational>,
    pub detail: String,
}

impl Check {
    fn new(
        id: impl Into<String>,
        status: Status,
        margin: Option<Rational>,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            status,
            margin,
            detail: detail.into(),
        }
    }

    fn gate(
        id: &str,
        applicable: bool,
        holds: impl FnOnce() -> bool,
        margin: Option<Rational>,
        detail: String,
    ) -> Self {
        let status = if !applicable {
            Status::NotApplicable
        } else if holds() {
            Status::Pass
        } else {
            Status::Fail
        };
        Self::new(id, status, if applicable { margin } else { None }, detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub field: Field,
    pub n: usize,
    pub polynomials: Vec<String>,
    pub degrees: Vec<u32>,
    pub d: u32,
    pub homogeneous: bool,
    pub count: u64,
    pub is_affine: Option<bool>,
    pub affine_dim: Option<usize>,
    pub witness: Option<AffineWitness>,
    pub general_position_size: usize,
    pub bounds: BoundReport,
    pub congruences: Vec<CongruenceCheck>,
    pub checks: Vec<Check>,
    pub failures: Vec<String>,
}

impl AnalysisReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyzeOptions {
    pub budget: Budget,
    /// Directions sampled per subspace dimension for the coset checks.
    pub directions_per_dim: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            budget: Budget::DEFAULT,
            directions_per_dim: 4,
            seed: 0,
        }
    }
}

/// Up to `k` directions of dimension `m`: all of them when there are at most
/// `k`, otherwise a seeded sample.
pub fn sample_directions(
    field: &Field,
    n: usize,
    m: usize,
    k: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<Point>> {
    if count_subspaces(field.order(), n, m) <= k as u128 {
        return all_subspaces(field, n, m);
    }
    (0..k).map(|_| random_subspace(field, n, m, rng)).collect()
}

fn int(x: impl Into<BigInt>) -> Rational {
    Rational::integer(x)
}

/// Counts zeros, decides affineness and checks every theorem whose hypotheses hold.
pub fn analyze(system: &PolySystem, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let f = system.field();
    let n = system.nvars();
    let q = f.order() as u64;
    let p = f.characteristic() as u64;
    let d = system.total_degree();
    let homogeneous = system.is_homogeneous();
    let positive_forms = system.is_positive_degree_homogeneous();
    let zeros = enumerate_zeros(system, &AffineSpace::full(f, n), opts.budget)?;
    let count = zeros.count();
    let verdict = if zeros.is_empty() {
        None
    } else {
        Some(is_affine_space(f, zeros.points())?)
    };
    let non_affine = verdict.as_ref().is_some_and(|v| !v.is_affine);
    let nonempty = count > 0;
    let n_gt_d = n as u64 > d as u64;
    let gp = max_general_position(f, zeros.points(), n).len();
    let bounds = bound_values(q, n as u32, d, homogeneous)?.with_r(system.len());
    let congruences = congruence_checks(count, q, p, n as u32, d, positive_forms);
    let nn = int(count);

    let mut checks = Vec::new();
    checks.push(Check::gate(
        "chevalley",
        n_gt_d && nonempty,
        || count >= 2,
        Some(int(count as i64 - 2)),
        "N >= 2 when nonempty and n > d".into(),
    ));
    for (id, c) in ["warning_mod_p", "ax_mod_q", "projective_mod_q_minus_1"]
        .iter()
        .zip(&congruences)
    {
        checks.push(Check::new(
            *id,
            c.status,
            None,
            format!(
                "N = {} mod {}, expected {}",
                c.residue, c.modulus, c.expected
            ),
        ));
    }
    for b in &bounds.bounds {
        let applicable = b.applicable && nonempty && (!b.id.needs_non_affine() || non_affine);
        let id = if b.id == BoundId::Warning {
            "warning_bound".to_string()
        } else {
            b.id.to_string()
        };
        let rel = if b.strict { ">" } else { ">=" };
        checks.push(Check::gate(
            &id,
            applicable,
            || b.is_satisfied_by(count),
            Some(Rational(&nn.0 - &b.value.0)),
            format!("N {rel} {} = {}", b.formula, b.value),
        ));
    }
    let gp_need = n as i64 + 2 - d as i64;
    checks.push(Check::gate(
        "general_position",
        n_gt_d && nonempty && non_affine,
        || gp as i64 >= gp_need,
        Some(int(gp as i64 - gp_need)),
        format!("{gp} zeros in general position, need n + 2 - d = {gp_need}"),
    ));
    checks.extend(coset_checks(system, zeros.points(), opts)?);

    let failures = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.id.clone())
        .collect();
    Ok(AnalysisReport {
        field: f.clone(),
        n,
        polynomials: system.texts(),
        degrees: system.degrees(),
        d,
        homogeneous,
        count,
        is_affine: verdict.as_ref().map(|v| v.is_affine),
        affine_dim: verdict.as_ref().and_then(|v| v.dim),
        witness: verdict.and_then(|v| v.witness),
        general_position_size: gp,
        bounds,
        congruences,
        checks,
        failures,
    })
}

/// Congruence of parallel coset counts, the lower bound forced by a sparse
/// coset of dimension `d`, and the dimension limit for sparse affine spaces,
/// on sampled directions of every dimension.
fn coset_checks(system: &PolySystem, zeros: &[Point], opts: &AnalyzeOptions) -> Result<Vec<Check>> {
    let f = system.field();
    let n = system.nvars();
    let q = f.order() as u64;
    let d = system.total_degree() as usize;
    let homogeneous = system.is_homogeneous();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut congruence = (0usize, None::<String>);
    let mut sparse = (0usize, None::<String>);
    let mut dims = (0usize, None::<String>);
    for m in 1..n {
        for basis in sample_directions(f, n, m, opts.directions_per_dim, &mut rng) {
            let cc: CosetCounts = coset_counts_from_zeros(f, n, d as u32, zeros, &basis)?;
            if m >= d {
                congruence.0 += 1;
                if !cc.congruent_mod(q) && congruence.1.is_none() {
                    congruence.1 = Some(format!("direction {basis:?}: counts {:?}", cc.counts));
                }
            }
            if m == d {
                if let Some(v) = cc.counts.iter().copied().filter(|&c| 1 <= c && c < q).max() {
                    sparse.0 += 1;
                    let min = *cc.counts.iter().min().unwrap();
                    let total = cc.total() as u128;
                    let need = v as u128 * (q as u128).pow((n - d) as u32);
                    if (min < v || total < need) && sparse.1.is_none() {
                        sparse.1 = Some(format!("direction {basis:?}: counts {:?}", cc.counts));
                    }
                }
            }
            let sparse_coset = |c: &u64| 2 <= *c && *c < q;
            if cc.counts.iter().any(sparse_coset) {
                dims.0 += 1;
                // the tighter limit holds only for the coset through the origin
                let origin_limit = if homogeneous { d.saturating_sub(1) } else { d };
                let bad = m > d || (sparse_coset(&cc.counts[0]) && m > origin_limit);
                if bad && dims.1.is_none() {
                    dims.1 = Some(format!("dimension {m}: counts {:?}", cc.counts));
                }
            }
        }
    }
    let mk = |id: &str, (seen, bad): (usize, Option<String>), what: &str| match bad {
        Some(msg) => Check::new(id, Status::Fail, None, msg),
        None if seen == 0 => Check::new(id, Status::NotApplicable, None, format!("no {what}")),
        None => Check::new(id, Status::Pass, None, format!("{seen} {what}")),
    };
    Ok(vec![
        mk(
            "parallel_congruence",
            congruence,
            "directions of dimension >= d",
        ),
        mk(
            "sparse_coset_bound",
            sparse,
            "dimension-d directions with a coset count in [1, q-1]",
        ),
        mk(
            "sparse_affine_dimension",
            dims,
            "directions with a coset count in [2, q-1]",
        ),
    ])
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
}

impl Tally {
    fn record(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::NotApplicable => self.not_applicable += 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Homogeneity {
    Mixed,
    Homogeneous,
    Inhomogeneous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignMode {
    /// Seeded random systems.
    Random,
    /// Every nonzero form of degree `d_max` in `n_max` variables.
    ExhaustiveForms,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub field: String,
    pub mode: CampaignMode,
    pub n_min: usize,
    pub n_max: usize,
    /// Number of polynomials per system.
    pub r_min: usize,
    pub r_max: usize,
    /// Degree range of each polynomial.
    pub d_min: u32,
    pub d_max: u32,
    /// Cap on the system degree.
    pub total_degree_max: Option<u32>,
    /// Only draw systems with `n > d`.
    pub require_n_gt_d: bool,
    pub homogeneity: Homogeneity,
    /// Probability that a monomial is included.
    pub density: f64,
    pub instances: u64,
    pub seed: u64,
    pub budget: u128,
    pub directions_per_dim: usize,
    pub repro_dir: Option<PathBuf>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            field: "GF(3)".into(),
            mode: CampaignMode::Random,
            n_min: 3,
            n_max: 5,
            r_min: 1,
            r_max: 1,
            d_min: 2,
            d_max: 2,
            total_degree_max: None,
            require_n_gt_d: true,
            homogeneity: Homogeneity::Mixed,
            density: 0.5,
            instances: 100,
            seed: 0,
            budget: Budget::DEFAULT.0,
            directions_per_dim: 3,
            repro_dir: None,
        }
    }
}

/// A serialized instance, sufficient to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub index: u64,
    pub seed: u64,
    pub field: String,
    pub n: usize,
    pub polynomials: Vec<String>,
}

impl Instance {
    pub fn system(&self) -> Result<PolySystem> {
        let f = Field::from_literal(&self.field)?;
        PolySystem::parse(&f, self.n, &self.polynomials)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub instances_run: u64,
    pub tallies: BTreeMap<String, Tally>,
    /// Per check, histogram of `N - bound` over passing instances.
    pub margins: BTreeMap<String, BTreeMap<String, u64>>,
    /// Histogram of zero counts.
    pub counts: BTreeMap<u64, u64>,
    pub affine: u64,
    pub non_affine: u64,
    pub empty: u64,
    pub aborted: bool,
    pub failure: Option<Instance>,
    pub failed_checks: Vec<String>,
    pub repro_file: Option<PathBuf>,
}

impl CampaignReport {
    pub fn total_failures(&self) -> u64 {
        self.tallies.values().map(|t| t.fail).sum()
    }
}

/// Exponent vectors of total degree exactly `d` in `n` variables, lex descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

fn random_poly(
    field: &Field,
    n: usize,
    d: u32,
    homogeneous: bool,
    density: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Polynomial> {
    let q = field.order();
    let mut terms = Vec::new();
    let lo = if homogeneous { d } else { 0 };
    let mut top = Vec::new();
    for k in lo..=d {
        for m in monomials_of_degree(n, k) {
            if k == d {
                top.push(m.clone());
            }
            terms.push((m, 0));
        }
    }
    let mut chosen: Vec<(Vec<u32>, Elem)> = Vec::new();
    let mut has_top = false;
    for (m, _) in terms {
        if rng.random_bool(density) {
            has_top |= m.iter().sum::<u32>() == d;
            chosen.push((m, Elem(rng.random_range(1..q))));
        }
    }
    if !has_top {
        let m = top[rng.random_range(0..top.len())].clone();
        chosen.push((m, Elem(rng.random_range(1..q))));
    }
    Polynomial::from_terms(field, n, chosen)
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_instance(cfg: &CampaignConfig, field: &Field, index: u64) -> Result<PolySystem> {
    let mut rng = instance_rng(cfg.seed, index);
    for _ in 0..10_000 {
        let n = rng.random_range(cfg.n_min..=cfg.n_max);
        let r = rng.random_range(cfg.r_min..=cfg.r_max);
        let degs: Vec<u32> = (0..r)
            .map(|_| rng.random_range(cfg.d_min..=cfg.d_max))
            .collect();
        let total: u32 = degs.iter().sum();
        if (cfg.require_n_gt_d && total as usize >= n)
            || cfg.total_degree_max.is_some_and(|t| total > t)
        {
            continue;
        }
        let homogeneous = match cfg.homogeneity {
            Homogeneity::Homogeneous => true,
            Homogeneity::Inhomogeneous => false,
            Homogeneity::Mixed => rng.random_bool(0.5),
        };
        let polys = degs
            .iter()
            .map(|&d| random_poly(field, n, d, homogeneous, cfg.density, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        return PolySystem::new(field, n, polys);
    }
    Err(Error::InvalidParameters(
        "no admissible (n, degrees) combination in the configured ranges".into(),
    ))
}

fn form_instance(field: &Field, n: usize, monos: &[Vec<u32>], index: u64) -> Result<PolySystem> {
    let q = field.order() as u64;
    let mut code = index + 1;
    let mut terms = Vec::new();
    for m in monos.iter().rev() {
        let c = (code % q) as u32;
        code /= q;
        if c != 0 {
            terms.push((m.clone(), Elem(c)));
        }
    }
    Ok(PolySystem::single(Polynomial::from_terms(field, n, terms)?))
}

fn validate(cfg: &CampaignConfig) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidParameters(m.into()));
    if cfg.n_min == 0 || cfg.n_min > cfg.n_max {
        return bad("need 1 <= n_min <= n_max");
    }
    if cfg.r_min == 0 || cfg.r_min > cfg.r_max {
        return bad("need 1 <= r_min <= r_max");
    }
    if cfg.d_min > cfg.d_max {
        return bad("need d_min <= d_max");
    }
    if !(0.0..=1.0).contains(&cfg.density) {
        return bad("density must lie in [0, 1]");
    }
    Ok(())
}

/// Runs a campaign. Instances are analyzed in parallel but each draws from
/// its own RNG stream, so the report depends only on the configuration.
/// The first failing instance stops aggregation and is written to a repro file.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    validate(cfg)?;
    let field = Field::from_literal(&cfg.field)?;
    let monos = monomials_of_degree(cfg.n_max, cfg.d_max);
    let total = match cfg.mode {
        CampaignMode::Random => cfg.instances,
        CampaignMode::ExhaustiveForms => {
            let m = monos.len() as u32;
            let all = (field.order() as u128).checked_pow(m).unwrap_or(u128::MAX) - 1;
            Budget(cfg.budget).check(all)?;
            all as u64
        }
    };
    let opts_for = |i: u64| AnalyzeOptions {
        budget: Budget(cfg.budget),
        directions_per_dim: cfg.directions_per_dim,
        seed: cfg.seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15),
    };
    let outcomes: Vec<(PolySystem, AnalysisReport)> = (0..total)
        .into_par_iter()
        .map(|i| {
            let sys = match cfg.mode {
                CampaignMode::Random => random_instance(cfg, &field, i)?,
                CampaignMode::ExhaustiveForms => form_instance(&field, cfg.n_max, &monos, i)?,
            };
            let rep = analyze(&sys, &opts_for(i))?;
            Ok((sys, rep))
        })
        .collect::<Result<_>>()?;

    let mut report = CampaignReport {
        config: cfg.clone(),
        instances_run: 0,
        tallies: BTreeMap::new(),
        margins: BTreeMap::new(),
        counts: BTreeMap::new(),
        affine: 0,
        non_affine: 0,
        empty: 0,
        aborted: false,
        failure: None,
        failed_checks: Vec::new(),
        repro_file: None,
    };
    for (i, (sys, rep)) in outcomes.into_iter().enumerate() {
        report.instances_run += 1;
        *report.counts.entry(rep.count).or_default() += 1;
        match rep.is_affine {
            None => report.empty += 1,
            Some(true) => report.affine += 1,
            Some(false) => report.non_affine += 1,
        }
        for c in &rep.checks {
            report
                .tallies
                .entry(c.id.clone())
                .or_default()
                .record(c.status);
            if let (Status::Pass, Some(m)) = (c.status, &c.margin) {
                *report
                    .margins
                    .entry(c.id.clone())
                    .or_default()
                    .entry(m.to_string())
                    .or_default() += 1;
            }
        }
        if !rep.passed() {
            let inst = Instance {
                index: i as u64,
                seed: cfg.seed,
                field: cfg.field.clone(),
                n: sys.nvars(),
                polynomials: sys.texts(),
            };
            let dir = cfg.repro_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            report.repro_file = Some(write_repro(&inst, &rep, &dir)?);
            report.failed_checks = rep.failures.clone();
            report.failure = Some(inst);
            report.aborted = true;
            break;
        }
    }
    Ok(report)
}

#[derive(Serialize)]
struct Repro<'a> {
    instance: &'a Instance,
    analysis: &'a AnalysisReport,
}

/// Writes `repro-<seed>-<index>.json` into `dir`.
pub fn write_repro(inst: &Instance, analysis: &AnalysisReport, dir: &Path) -> Result<PathBuf> {
    let path = dir.join(format!("repro-{}-{}.json", inst.seed, inst.index));
    let err = |e: &dyn std::fmt::Display| Error::ReproFileWrite {
        path: path.display().to_string(),
        msg: e.to_string(),
    };
    let body = serde_json::to_string_pretty(&Repro {
        instance: inst,
        analysis,
    })
    .map_err(|e| err(&e))?;
    std::fs::create_dir_all(dir).map_err(|e| err(&e))?;
    std::fs::write(&path, body).map_err(|e| err(&e))?;
    Ok(path)
}

/// Reads the instance back out of a repro file.
pub fn read_repro(path: &Path) -> Result<Instance> {
    #[derive(Deserialize)]
    struct Wrapper {
        instance: Instance,
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str::<Wrapper>(&text)
        .map(|w| w.instance)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, Serialize)]
pub struct PresetReport {
    pub name: String,
    pub certificates: Vec<ConstructionCertificate>,
    pub passed: bool,
}

pub const PRESETS: [&str; 1] = ["paper-regression"];

/// The published sharpness examples: the two `F_2` recursions at `d = 2`
/// followed by the `F_3` catalog.
pub fn run_preset(name: &str, budget: Budget) -> Result<PresetReport> {
    match name {
        "paper-regression" => {
            let mut certificates = vec![
                constructions::prop41_certificate(2, budget)?,
                constructions::prop42_certificate(2, budget)?,
            ];
            certificates.extend(constructions::sharp_catalog(3, budget)?);
            let passed = certificates.iter().all(|c| c.verified);
            Ok(PresetReport {
                name: name.into(),
                certificates,
                passed,
            })
        }
        other => Err(Error::InvalidParameters(format!(
            "unknown preset `{other}` (available: {})",
            PRESETS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(q: u64, n: usize, texts: &[&str]) -> PolySystem {
        PolySystem::parse(&Field::of_order(q).unwrap(), n, texts).unwrap()
    }

    fn margin(r: &AnalysisReport, id: &str) -> Option<Rational> {
        r.check(id).unwrap().margin.clone()
    }

    #[test]
    fn analyze_h_over_f3() {
        let r = analyze(&sys(3, 3, &["x1*x2 - x3^2"]), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.count, 9);
        assert_eq!(r.is_affine, Some(false));
        assert!(r.passed());
        assert_eq!(r.check("improved2").unwrap().status, Status::Pass);
        assert_eq!(margin(&r, "improved2"), Some(Rational::integer(3)));
        assert_eq!(margin(&r, "improved4"), Some(Rational::integer(0)));
        assert_eq!(r.check("parallel_congruence").unwrap().status, Status::Pass);
    }

    #[test]
    fn analyze_g_over_f3() {
        let r = analyze(
            &sys(3, 3, &["x1*x2 + x3^2 + 1"]),
            &AnalyzeOptions::default(),
        )
        .unwrap();
        assert_eq!(r.count, 6);
        assert!(r.passed());
        assert_eq!(margin(&r, "improved2"), Some(Rational::integer(0)));
        for id in ["improved3", "improved4", "hb3", "projective_mod_q_minus_1"] {
            assert_eq!(r.check(id).unwrap().status, Status::NotApplicable, "{id}");
        }
    }

    #[test]
    fn analyze_gates_hypotheses() {
        let r = analyze(&sys(3, 2, &["x1^2 + x2^2"]), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.count, 1);
        assert!(r
            .checks
            .iter()
            .filter(|c| c.id != "sparse_affine_dimension"
                && c.id != "parallel_congruence"
                && c.id != "sparse_coset_bound")
            .all(|c| c.status == Status::NotApplicable));
        let r = analyze(&sys(3, 3, &["1"]), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.count, 0);
        assert_eq!(r.check("chevalley").unwrap().status, Status::NotApplicable);
        assert_eq!(
            r.check("warning_bound").unwrap().status,
            Status::NotApplicable
        );
        assert!(r.passed());
    }

    #[test]
    fn analyze_f2_prop41_base() {
        let r = analyze(&sys(2, 3, &["x1*x2 - x3^2"]), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.is_affine, Some(false));
        assert_eq!(margin(&r, "improved1"), Some(Rational::integer(0)));
        assert!(r.passed());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(6, 4).len(), 126);
        assert_eq!(
            monomials_of_degree(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
    }

    #[test]
    fn random_instances_respect_config() {
        let cfg = CampaignConfig {
            field: "GF(4)".into(),
            n_min: 3,
            n_max: 6,
            r_min: 1,
            r_max: 2,
            d_min: 1,
            d_max: 3,
            total_degree_max: Some(4),
            homogeneity: Homogeneity::Homogeneous,
            ..Default::default()
        };
        let f = Field::from_literal(&cfg.field).unwrap();
        for i in 0..50 {
            let s = random_instance(&cfg, &f, i).unwrap();
            assert!(s.nvars() > s.total_degree() as usize);
            assert!(s.total_degree() <= 4);
            assert!(s.is_homogeneous());
            for (p, &d) in s.polys().iter().zip(&s.degrees()) {
                assert!((1..=3).contains(&d));
                assert!(p.is_form());
            }
        }
    }

    #[test]
    fn exhaustive_forms_campaign() {
        let cfg = CampaignConfig {
            field: "GF(2)".into(),
            mode: CampaignMode::ExhaustiveForms,
            n_min: 3,
            n_max: 3,
            d_min: 2,
            d_max: 2,
            ..Default::default()
        };
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.instances_run, 63);
        assert_eq!(r.total_failures(), 0);
        assert!(!r.aborted);
    }

    #[test]
    fn campaign_is_deterministic() {
        let cfg = CampaignConfig {
            instances: 40,
            seed: 7,
            ..Default::default()
        };
        let a = serde_json::to_string(&run_campaign(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_campaign(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
        let other =
            serde_json::to_string(&run_campaign(&CampaignConfig { seed: 8, ..cfg }).unwrap())
                .unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn repro_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let s = sys(3, 3, &["x1*x2 - x3^2"]);
        let rep = analyze(&s, &AnalyzeOptions::default()).unwrap();
        let inst = Instance {
            index: 5,
            seed: 9,
            field: "GF(3)".into(),
            n: 3,
            polynomials: s.texts(),
        };
        let path = write_repro(&inst, &rep, dir.path()).unwrap();
        assert!(path.ends_with("repro-9-5.json"));
        let back = read_repro(&path).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.system().unwrap(), s);
        let blocked = dir.path().join("file");
        std::fs::write(&blocked, "").unwrap();
        assert!(matches!(
            write_repro(&inst, &rep, &blocked),
            Err(Error::ReproFileWrite { .. })
        ));
    }

    #[test]
    fn regression_preset() {
        let r = run_preset("paper-regression", Budget::DEFAULT).unwrap();
        let counts: Vec<u64> = r.certificates.iter().map(|c| c.measured_count).collect();
        assert_eq!(counts, vec![4, 6, 6, 9, 9, 21]);
        assert!(r.passed);
        assert!(run_preset("nope", Budget::DEFAULT).is_err());
    }
}
