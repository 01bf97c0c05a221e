//! Command-line front end. Exit codes: 0 success, 1 usage or input error,
//! 2 a theorem check or self-verification failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{
    bound_values, compare_bounds_3_4, lemma31_evaluate, BoundReport, ComparisonReport, Lemma31,
    Status,
};
use crate::constructions::{self, ConstructionCertificate};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::PolySystem;
use crate::verify::{
    self, AnalysisReport, AnalyzeOptions, CampaignConfig, CampaignMode, CampaignReport, Homogeneity,
};
use crate::zeroset::{enumerate_zeros, AffineSpace, Budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "chevalley",
    version,
    about = "Zero counts and lower bounds for polynomial systems over finite fields"
)]
pub struct Cli {
    /// Output format [default: text]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Maximum number of points evaluated per enumeration [default: 100000000]
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Seed for sampled directions and random campaigns [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Flat TOML file whose keys mirror the long flags; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct SystemArgs {
    /// Field literal: GF(q), GF(p^k) or GF(q; m0,m1,...,mk)
    #[arg(long)]
    pub field: Option<String>,
    /// Number of variables x1..xn
    #[arg(long)]
    pub n: Option<usize>,
    /// Polynomials of the system, e.g. "x1*x2 - x3^2"
    pub polys: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count zeros, decide affineness and check every applicable theorem
    Analyze {
        #[command(flatten)]
        system: SystemArgs,
        /// Directions sampled per dimension for the coset checks
        #[arg(long)]
        directions: Option<usize>,
    },
    /// Count (and optionally list) the common zeros
    Count {
        #[command(flatten)]
        system: SystemArgs,
        /// Print the zeros
        #[arg(long)]
        list: bool,
    },
    /// Build and certify a construction: norm, prop41, prop42 or catalog
    Construct {
        name: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        d: Option<u32>,
    },
    /// All lower bounds at (q, n, d)
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        homogeneous: bool,
    },
    /// Which of the two homogeneous bounds is larger at (q, n, d)
    Compare {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Campaigns, presets and exhaustive lemma checks
    Verify(Box<VerifyArgs>),
    /// Evaluate floor(qv/(v+1))^v > q^v/(v+1) exactly
    Lemma31 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        v: u32,
    },
}

#[derive(Debug, Args, Default)]
pub struct VerifyArgs {
    /// Named preset (paper-regression)
    #[arg(long)]
    pub preset: Option<String>,
    /// Run a random campaign with this many instances
    #[arg(long)]
    pub random: Option<u64>,
    /// Run over every nonzero form of degree --d in --n variables
    #[arg(long)]
    pub exhaustive_forms: bool,
    /// Re-analyze the instance stored in a repro file
    #[arg(long)]
    pub replay: Option<PathBuf>,
    /// Exhaustive lemma check: 2.3 (line structure), 2.2 (minimal extensions), 2.5 (sparse affine spaces)
    #[arg(long)]
    pub lemma: Option<String>,
    /// Coset congruence check for one system: 2.1
    #[arg(long)]
    pub thm: Option<String>,
    /// Lemma part (1-4)
    #[arg(long)]
    pub part: Option<u32>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Line multiplicity parameter for part 4; subspace dimension for --thm
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Degree of each polynomial
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub d_min: Option<u32>,
    #[arg(long)]
    pub d_max: Option<u32>,
    /// Number of polynomials per system
    #[arg(long)]
    pub r_min: Option<usize>,
    #[arg(long)]
    pub r_max: Option<usize>,
    #[arg(long)]
    pub total_degree_max: Option<u32>,
    #[arg(long, value_enum)]
    pub homogeneity: Option<HomogeneityArg>,
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long)]
    pub directions: Option<usize>,
    #[arg(long)]
    pub repro_dir: Option<PathBuf>,
    /// Polynomials for --thm and the per-system lemma checks
    pub polys: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomogeneityArg {
    Mixed,
    Homogeneous,
    Inhomogeneous,
}

impl From<HomogeneityArg> for Homogeneity {
    fn from(h: HomogeneityArg) -> Self {
        match h {
            HomogeneityArg::Mixed => Homogeneity::Mixed,
            HomogeneityArg::Homogeneous => Homogeneity::Homogeneous,
            HomogeneityArg::Inhomogeneous => Homogeneity::Inhomogeneous,
        }
    }
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub format: Option<Format>,
    pub budget: Option<u128>,
    pub seed: Option<u64>,
    pub field: Option<String>,
    pub n: Option<usize>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub d: Option<u32>,
    pub d_min: Option<u32>,
    pub d_max: Option<u32>,
    pub r_min: Option<usize>,
    pub r_max: Option<usize>,
    pub total_degree_max: Option<u32>,
    pub homogeneity: Option<HomogeneityArg>,
    pub density: Option<f64>,
    pub directions: Option<usize>,
    pub random: Option<u64>,
    pub exhaustive_forms: Option<bool>,
    pub preset: Option<String>,
    pub repro_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

struct Ctx {
    format: Format,
    budget: Budget,
    seed: u64,
    file: FileConfig,
}

/// What a command produced: rendered output and whether every check held.
struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, text: String, ok: bool) -> Result<Self> {
        let json = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
        Ok(Self { text, json, ok })
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli) {
        Ok((o, format)) => {
            let body = match format {
                Format::Text => o.text,
                Format::Json => o.json,
            };
            let _ = writeln!(out, "{}", body.trim_end());
            if o.ok {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<(Outcome, Format)> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let ctx = Ctx {
        format: cli.format.or(file.format).unwrap_or(Format::Text),
        budget: Budget(cli.budget.or(file.budget).unwrap_or(Budget::DEFAULT.0)),
        seed: cli.seed.or(file.seed).unwrap_or(0),
        file,
    };
    let outcome = match cli.command {
        Command::Analyze { system, directions } => cmd_analyze(&ctx, &system, directions)?,
        Command::Count { system, list } => cmd_count(&ctx, &system, list)?,
        Command::Construct { name, q, d } => cmd_construct(&ctx, &name, q, d)?,
        Command::Bounds {
            q,
            n,
            d,
            homogeneous,
        } => cmd_bounds(q, n, d, homogeneous)?,
        Command::Compare { q, n, d } => cmd_compare(q, n, d)?,
        Command::Verify(args) => cmd_verify(&ctx, &args)?,
        Command::Lemma31 { q, v } => cmd_lemma31(q, v)?,
    };
    Ok((outcome, ctx.format))
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn load_system(
    ctx: &Ctx,
    field: Option<&str>,
    n: Option<usize>,
    polys: &[String],
) -> Result<PolySystem> {
    let field = field
        .or(ctx.file.field.as_deref())
        .ok_or_else(|| usage("--field is required"))?;
    let n = n.or(ctx.file.n).ok_or_else(|| usage("--n is required"))?;
    let f = Field::from_literal(field)?;
    if polys.is_empty() {
        return Err(usage("give at least one polynomial"));
    }
    PolySystem::parse(&f, n, polys)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::NotApplicable => "n/a",
    }
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "field {}, n = {}, d = {}{}",
        r.field,
        r.n,
        r.d,
        if r.homogeneous { ", homogeneous" } else { "" }
    );
    for (i, p) in r.polynomials.iter().enumerate() {
        let _ = writeln!(s, "  f{} = {p}", i + 1);
    }
    let _ = writeln!(s, "N = {}", r.count);
    let affine = match r.is_affine {
        None => "empty".to_string(),
        Some(true) => format!("yes, dimension {}", r.affine_dim.unwrap_or(0)),
        Some(false) => "no".to_string(),
    };
    let _ = writeln!(s, "affine: {affine}");
    if let Some(w) = &r.witness {
        let _ = writeln!(
            s,
            "witness: {}",
            serde_json::to_string(w).unwrap_or_default()
        );
    }
    let _ = writeln!(s, "general position: {}", r.general_position_size);
    let _ = writeln!(s, "checks:");
    for c in &r.checks {
        let margin = c
            .margin
            .as_ref()
            .map(|m| format!("margin {m}"))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "  {:<26} {:<4} {:<14} {}",
            c.id,
            status_word(c.status),
            margin,
            c.detail
        );
    }
    if !r.failures.is_empty() {
        let _ = writeln!(s, "FAILED: {}", r.failures.join(", "));
    }
    s
}

fn cmd_analyze(ctx: &Ctx, a: &SystemArgs, directions: Option<usize>) -> Result<Outcome> {
    let system = load_system(ctx, a.field.as_deref(), a.n, &a.polys)?;
    let opts = AnalyzeOptions {
        budget: ctx.budget,
        directions_per_dim: directions.or(ctx.file.directions).unwrap_or(4),
        seed: ctx.seed,
    };
    let r = verify::analyze(&system, &opts)?;
    Outcome::new(&r, render_analysis(&r), r.passed())
}

#[derive(Serialize)]
struct CountReport {
    field: Field,
    n: usize,
    polynomials: Vec<String>,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    zeros: Option<Vec<Vec<String>>>,
}

fn cmd_count(ctx: &Ctx, a: &SystemArgs, list: bool) -> Result<Outcome> {
    let system = load_system(ctx, a.field.as_deref(), a.n, &a.polys)?;
    let f = system.field().clone();
    let zs = enumerate_zeros(&system, &AffineSpace::full(&f, system.nvars()), ctx.budget)?;
    let zeros = list.then(|| {
        zs.points()
            .iter()
            .map(|p| p.iter().map(|&x| f.format(x)).collect())
            .collect::<Vec<Vec<String>>>()
    });
    let mut text = format!("N = {}\n", zs.count());
    if let Some(z) = &zeros {
        for p in z {
            let _ = writeln!(text, "  ({})", p.join(", "));
        }
    }
    let r = CountReport {
        field: f.clone(),
        n: system.nvars(),
        polynomials: system.texts(),
        count: zs.count(),
        zeros,
    };
    Outcome::new(&r, text, true)
}

fn render_certificate(c: &ConstructionCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} over {} (n = {}, d = {})", c.name, c.field, c.n, c.d);
    for p in &c.polynomials {
        let _ = writeln!(s, "  {p}");
    }
    let _ = writeln!(
        s,
        "  zeros: {} (claimed {})",
        c.measured_count, c.claimed_count
    );
    let _ = writeln!(
        s,
        "  affine: {}",
        if c.measured_affine { "yes" } else { "no" }
    );
    if let (Some(b), Some(v)) = (c.matched_bound, &c.bound_value) {
        let sharp = if c.sharp == Some(true) {
            "sharp"
        } else {
            "not sharp"
        };
        let _ = writeln!(s, "  bound {b} = {v}: {sharp}");
    }
    let _ = writeln!(s, "  verified: {}", if c.verified { "yes" } else { "NO" });
    s
}

fn cmd_construct(ctx: &Ctx, name: &str, q: Option<u64>, d: Option<u32>) -> Result<Outcome> {
    let need_d = || d.ok_or_else(|| usage(format!("construct {name} needs --d")));
    let certs = match name {
        "norm" => vec![constructions::norm_certificate(
            q.ok_or_else(|| usage("construct norm needs --q"))?,
            need_d()?,
            ctx.budget,
        )?],
        "prop41" => vec![constructions::prop41_certificate(need_d()?, ctx.budget)?],
        "prop42" => vec![constructions::prop42_certificate(need_d()?, ctx.budget)?],
        "catalog" => constructions::sharp_catalog(q.unwrap_or(3), ctx.budget)?,
        other => return Err(Error::UnknownConstruction(other.to_string())),
    };
    let ok = certs.iter().all(|c| c.verified);
    let text = certs
        .iter()
        .map(render_certificate)
        .collect::<Vec<_>>()
        .join("\n");
    if certs.len() == 1 {
        Outcome::new(&certs[0], text, ok)
    } else {
        Outcome::new(&certs, text, ok)
    }
}

fn render_bounds(r: &BoundReport) -> String {
    let mut s = format!(
        "q = {}, n = {}, d = {}{}\n",
        r.q,
        r.n,
        r.d,
        if r.homogeneous { ", homogeneous" } else { "" }
    );
    if !r.n_gt_d {
        s.push_str("n <= d: bounds not guaranteed\n");
    }
    for b in &r.bounds {
        let _ = writeln!(
            s,
            "  {:<10} {:<36} {:>12}  {:<3} min N = {:<8} {}",
            b.id.to_string(),
            b.formula,
            b.value.to_string(),
            if b.strict { ">" } else { ">=" },
            b.min_count,
            b.reason.as_deref().unwrap_or("applicable")
        );
    }
    s
}

fn cmd_bounds(q: u64, n: u32, d: u32, homogeneous: bool) -> Result<Outcome> {
    let r = bound_values(q, n, d, homogeneous)?;
    Outcome::new(&r, render_bounds(&r), true)
}

fn render_comparison(c: &ComparisonReport) -> String {
    let mut s = format!("q = {}, n = {}, d = {}, v = {}\n", c.q, c.n, c.d, c.v);
    match &c.threshold {
        Some(t) => {
            let _ = writeln!(s, "T = {t} (~{:.4})", t.to_f64());
        }
        None => s.push_str("n - d = 1: compared directly\n"),
    }
    let _ = writeln!(s, "(3) = {}  (4) = {}", c.bound3, c.bound4);
    let _ = writeln!(s, "verdict: {}", c.verdict);
    let _ = writeln!(
        s,
        "direct comparison: {} ({})",
        c.direct,
        if c.agree { "agrees" } else { "DISAGREES" }
    );
    let _ = writeln!(s, "q >= 3v+2: {}, q <= 2v: {}", c.q_ge_3v_plus_2, c.q_le_2v);
    s
}

fn cmd_compare(q: u64, n: u32, d: u32) -> Result<Outcome> {
    let c = compare_bounds_3_4(q, n, d)?;
    let ok = c.agree && c.implications_hold;
    Outcome::new(&c, render_comparison(&c), ok)
}

fn render_lemma31(l: &Lemma31) -> String {
    let mut s = format!(
        "v = {}, q = {}: lhs = {}, rhs = {}, holds: {}\n",
        l.v,
        l.q,
        l.lhs,
        l.rhs,
        if l.holds { "yes" } else { "no" }
    );
    if !l.in_range {
        s.push_str("q < 2v + 1: outside the claimed range\n");
    }
    if l.listed_exception {
        s.push_str("listed exception\n");
    }
    if l.exception_discrepancy {
        s.push_str("note: listed as an exception, but the inequality holds\n");
    }
    s
}

fn cmd_lemma31(q: u64, v: u32) -> Result<Outcome> {
    let l = lemma31_evaluate(q, v)?;
    Outcome::new(&l, render_lemma31(&l), true)
}

fn render_campaign(r: &CampaignReport) -> String {
    let mut s = format!(
        "{} instances over {} (seed {}): {} non-affine, {} affine, {} empty\n",
        r.instances_run, r.config.field, r.config.seed, r.non_affine, r.affine, r.empty
    );
    let _ = writeln!(
        s,
        "  {:<26} {:>8} {:>6} {:>8}",
        "check", "pass", "fail", "n/a"
    );
    for (id, t) in &r.tallies {
        let _ = writeln!(
            s,
            "  {:<26} {:>8} {:>6} {:>8}",
            id, t.pass, t.fail, t.not_applicable
        );
    }
    for (id, h) in &r.margins {
        if id.starts_with("improved") || id.starts_with("hb") {
            let mut entries: Vec<(&String, &u64)> = h.iter().collect();
            entries.sort_by(|a, b| margin_value(a.0).total_cmp(&margin_value(b.0)));
            let top: Vec<String> = entries
                .iter()
                .take(6)
                .map(|(m, c)| format!("{m}:{c}"))
                .collect();
            let _ = writeln!(s, "  margins {id}: {}", top.join(" "));
        }
    }
    if let Some(inst) = &r.failure {
        let _ = writeln!(
            s,
            "ABORTED at instance {}: {}",
            inst.index,
            r.failed_checks.join(", ")
        );
        if let Some(p) = &r.repro_file {
            let _ = writeln!(s, "repro written to {}", p.display());
        }
    }
    s
}

fn margin_value(m: &str) -> f64 {
    match m.split_once('/') {
        Some((a, b)) => a.parse::<f64>().unwrap_or(f64::NAN) / b.parse::<f64>().unwrap_or(f64::NAN),
        None => m.parse().unwrap_or(f64::NAN),
    }
}

fn campaign_config(
    ctx: &Ctx,
    a: &VerifyArgs,
    mode: CampaignMode,
    instances: u64,
) -> Result<CampaignConfig> {
    let file = &ctx.file;
    let base = CampaignConfig::default();
    let n = a.n.or(file.n);
    let d = a.d.or(file.d);
    let cfg = CampaignConfig {
        field: a.field.clone().or(file.field.clone()).unwrap_or(base.field),
        mode,
        n_min: a.n_min.or(file.n_min).or(n).unwrap_or(base.n_min),
        n_max: a.n_max.or(file.n_max).or(n).unwrap_or(base.n_max),
        r_min: a.r_min.or(file.r_min).unwrap_or(base.r_min),
        r_max: a.r_max.or(file.r_max).unwrap_or(base.r_max),
        d_min: a.d_min.or(file.d_min).or(d).unwrap_or(base.d_min),
        d_max: a.d_max.or(file.d_max).or(d).unwrap_or(base.d_max),
        total_degree_max: a.total_degree_max.or(file.total_degree_max),
        require_n_gt_d: true,
        homogeneity: a
            .homogeneity
            .or(file.homogeneity)
            .map(Into::into)
            .unwrap_or(base.homogeneity),
        density: a.density.or(file.density).unwrap_or(base.density),
        instances,
        seed: ctx.seed,
        budget: ctx.budget.0,
        directions_per_dim: a
            .directions
            .or(file.directions)
            .unwrap_or(base.directions_per_dim),
        repro_dir: a.repro_dir.clone().or(file.repro_dir.clone()),
    };
    if mode == CampaignMode::ExhaustiveForms && (cfg.n_min != cfg.n_max || cfg.d_min != cfg.d_max) {
        return Err(usage("--exhaustive-forms takes a single --n and --d"));
    }
    Ok(cfg)
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<Outcome> {
    let file = &ctx.file;
    if let Some(name) = a.preset.as_deref().or(file.preset.as_deref()) {
        let r = verify::run_preset(name, ctx.budget)?;
        let mut text = r
            .certificates
            .iter()
            .map(render_certificate)
            .collect::<Vec<_>>()
            .join("\n");
        let _ = writeln!(
            text,
            "\npreset {}: {}",
            r.name,
            if r.passed { "all reproduced" } else { "FAILED" }
        );
        return Outcome::new(&r, text, r.passed);
    }
    if let Some(path) = &a.replay {
        let inst = verify::read_repro(path)?;
        let opts = AnalyzeOptions {
            budget: ctx.budget,
            directions_per_dim: a.directions.or(file.directions).unwrap_or(4),
            seed: ctx.seed,
        };
        let r = verify::analyze(&inst.system()?, &opts)?;
        return Outcome::new(&r, render_analysis(&r), r.passed());
    }
    if let Some(lemma) = &a.lemma {
        return match lemma.as_str() {
            "2.3" => {
                let q = a.q.ok_or_else(|| usage("--lemma 2.3 needs --q"))?;
                let t = a.t.ok_or_else(|| usage("--lemma 2.3 needs --t"))?;
                let part = verify::LemmaPart::from_number(
                    a.part.ok_or_else(|| usage("--lemma 2.3 needs --part"))?,
                    q,
                    a.m,
                )?;
                let v = verify::verify_lemma23(q, t, part, ctx.budget)?;
                let mut text = format!(
                    "q = {q}, t = {t}, {:?}: {} ({} subsets, {} qualifying)\n",
                    v.part,
                    status_word(v.status),
                    v.subsets_checked,
                    v.qualifying
                );
                if v.status == Status::Pass {
                    text.push_str("verified exhaustively\n");
                }
                if let Some(note) = &v.note {
                    let _ = writeln!(text, "{note}");
                }
                if let Some(c) = &v.counterexample {
                    let _ = writeln!(text, "counterexample: {c:?}");
                }
                Outcome::new(&v, text, v.status != Status::Fail)
            }
            "2.2" => {
                let s = load_system(ctx, a.field.as_deref(), a.n, &a.polys)?;
                let v = verify::verify_min_extension(&s, ctx.budget)?;
                let text = format!(
                    "{} ({} configurations)\n",
                    status_word(v.status),
                    v.configurations
                ) + &v
                    .counterexample
                    .clone()
                    .map(|c| format!("counterexample: {c}\n"))
                    .unwrap_or_default();
                Outcome::new(&v, text, v.status != Status::Fail)
            }
            "2.5" => {
                let s = load_system(ctx, a.field.as_deref(), a.n, &a.polys)?;
                let v = verify::verify_dense_affine_dims(&s, ctx.budget)?;
                let mut text = format!(
                    "{} ({} affine spaces with 2..q-1 zeros)\n",
                    status_word(v.status),
                    v.configurations
                );
                if let Some(c) = &v.counterexample {
                    let _ = writeln!(text, "counterexample: {c}");
                }
                if let Some(o) = &v.off_origin_at_d {
                    let _ = writeln!(text, "off the origin at dimension d: {o}");
                }
                Outcome::new(&v, text, v.status != Status::Fail)
            }
            other => Err(usage(format!("unknown lemma `{other}` (2.2, 2.3, 2.5)"))),
        };
    }
    if let Some(thm) = &a.thm {
        if thm != "2.1" {
            return Err(usage(format!("unknown theorem `{thm}` (2.1)")));
        }
        let s = load_system(ctx, a.field.as_deref(), a.n, &a.polys)?;
        let m = a.m.ok_or_else(|| usage("--thm 2.1 needs --m"))? as usize;
        let v = verify::verify_thm21(&s, m, ctx.budget, a.directions.unwrap_or(64), ctx.seed)?;
        let text = format!(
            "m = {}: {} ({} directions{})\n",
            v.m,
            status_word(v.status),
            v.directions_checked,
            if v.exhaustive { ", all" } else { ", sampled" }
        );
        return Outcome::new(&v, text, v.status != Status::Fail);
    }
    let exhaustive = a.exhaustive_forms || file.exhaustive_forms.unwrap_or(false);
    let random = a.random.or(file.random);
    let cfg = match (exhaustive, random) {
        (true, _) => campaign_config(ctx, a, CampaignMode::ExhaustiveForms, 0)?,
        (false, Some(k)) => campaign_config(ctx, a, CampaignMode::Random, k)?,
        (false, None) => {
            return Err(usage(
                "verify needs one of --preset, --random, --exhaustive-forms, --lemma, --thm or --replay",
            ))
        }
    };
    let r = verify::run_campaign(&cfg)?;
    let ok = !r.aborted;
    Outcome::new(&r, render_campaign(&r), ok)
}
