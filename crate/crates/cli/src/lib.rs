//! Command-line pipelines: cusp curvature tables, thick-thin sampling,
//! nerve construction and homology reports, all written as CSV or JSON.

// `!(x > 0.0)` is deliberate: NaN has to fail these checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use viscomplex_core::cover::{
    check_dc_ledger, default_dim_cap, greedy_net_with, nerve, HyperbolicBallOracle, IntersectionOracle, NerveComplex,
    QuotientBallOracle,
};
use viscomplex_core::homology::{bounds_report, homology};
use viscomplex_core::ledger::{LedgerSeed, DEFAULT_MARGULIS_EPS_2D, DEFAULT_MARGULIS_INDEX_2D};
use viscomplex_core::thick_thin::{hyperbolic_grid, EpsAssignment, EpsRule};
use viscomplex_core::{
    ConstantsLedger, CuspModel, GroupPresentation, MoebiusIsometry, SimplicialComplex, TangentPlaneSpec, UhpPoint,
    VolumeIntegrand, WarpFunction,
};

#[derive(Debug, Parser)]
#[command(name = "viscomplex", version, about = "Thick-thin, nerve and homology pipelines on explicit hyperbolic models")]
pub struct Cli {
    /// Seed for every randomized sample
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Directory receiving the output artifacts
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sectional curvature profile of the flattened cusp and its band table
    Curvature(CurvatureArgs),
    /// Growth of the visibility integral
    Visibility(VisibilityArgs),
    /// Volume of the cusp end beyond a height
    Volume(VolumeArgs),
    /// Sample d_Γ over a window, label thin/thick points and emit a cover
    ThickThin(ThickThinArgs),
    /// Nerve of a cover of hyperbolic balls with its (D, C) report
    Nerve(NerveArgs),
    /// Integral homology of a complex, optionally against the ledger bounds
    Homology(HomologyArgs),
    /// Dump the constants ledger
    Ledger(LedgerArgs),
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    /// Number of radial sample heights
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Random plane tilts Y per height
    #[arg(long, default_value_t = 5)]
    pub planes: usize,
}

#[derive(Debug, Args)]
pub struct VisibilityArgs {
    /// Upper limits T of the integral
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
    pub t: Vec<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Integrand {
    /// h^{n-1}, the warped-product volume form
    Warped,
    /// h, taken literally
    Linear,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub torus_volume: f64,
    #[arg(long, default_value_t = 3.0)]
    pub t0: f64,
    #[arg(long, value_enum, default_value_t = Integrand::Warped)]
    pub integrand: Integrand,
}

#[derive(Debug, Args)]
pub struct LedgerOpts {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_MARGULIS_EPS_2D)]
    pub margulis_eps: f64,
    #[arg(long, default_value_t = DEFAULT_MARGULIS_INDEX_2D)]
    pub margulis_index: u64,
}

#[derive(Debug, Args)]
pub struct ThickThinArgs {
    /// JSON list of [a, b, c, d] generator matrices
    #[arg(long)]
    pub group: PathBuf,
    /// Thin level; defaults to the ledger's ε = ε(n)/4
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub word_cap: usize,
    /// Hyperbolic grid pitch
    #[arg(long, default_value_t = 0.05)]
    pub grid: f64,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [-0.5, 0.5])]
    pub x_range: Vec<f64>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [0.5, 4.0])]
    pub y_range: Vec<f64>,
    /// Radius of the emitted cover balls; defaults to twice the pitch
    #[arg(long)]
    pub cover_radius: Option<f64>,
    #[command(flatten)]
    pub ledger: LedgerOpts,
}

#[derive(Debug, Args)]
pub struct NerveArgs {
    /// Cover JSON: a list of {center, radius} or an object with `sets`
    #[arg(long)]
    pub input: PathBuf,
    /// Largest simplex dimension; defaults to n + 2
    #[arg(long)]
    pub dim_cap: Option<usize>,
    /// Ledger JSON for the (D, C) report; rebuilt from defaults if absent
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    /// Volume used in C · vol; defaults to the cover's `area`
    #[arg(long)]
    pub vol: Option<f64>,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    /// Complex JSON {"simplices": [...]}
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub primes: Vec<u64>,
    #[arg(long)]
    pub report_bounds: bool,
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    #[arg(long)]
    pub vol: Option<f64>,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct LedgerArgs {
    #[command(flatten)]
    pub ledger: LedgerOpts,
}

/// What a successful run found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// A `--strict` bound check failed.
    BoundFailure,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::BoundFailure => 2,
        }
    }
}

/// Writes `contents` to `dir/name` through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(&path).with_context(|| format!("writing {}", path.display()))?;
    log::info!("wrote {}", path.display());
    Ok(path)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {what} from {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed {what} in {}", path.display()))
}

fn load_ledger(path: Option<&Path>) -> Result<ConstantsLedger> {
    let seed = match path {
        Some(p) => read_json::<LedgerSeed>(p, "ledger")?,
        None => LedgerSeed {
            n: 2,
            margulis_eps: DEFAULT_MARGULIS_EPS_2D,
            margulis_index: DEFAULT_MARGULIS_INDEX_2D,
            kappa: None,
            lambda: None,
        },
    };
    Ok(seed.build()?)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let out = cli.out_dir.as_path();
    match &cli.command {
        Command::Curvature(a) => curvature(a, cli.seed, out),
        Command::Visibility(a) => visibility(a, out),
        Command::Volume(a) => volume(a, out),
        Command::ThickThin(a) => thick_thin(a, cli.seed, out),
        Command::Nerve(a) => nerve_cmd(a, out),
        Command::Homology(a) => homology_cmd(a, out),
        Command::Ledger(a) => {
            let l = ConstantsLedger::build(a.ledger.n, a.ledger.margulis_eps, a.ledger.margulis_index)?;
            write_atomic(out, "ledger.json", &to_json(&l.dump())?)?;
            println!("eps = {}, delta = {}, r = {}, kappa = {}, lambda = {}", l.eps(), l.delta(), l.r(), l.kappa(), l.lambda());
            Ok(Outcome::Ok)
        }
    }
}

fn curvature(a: &CurvatureArgs, seed: u64, out: &Path) -> Result<Outcome> {
    if !(a.t_max > 0.0) || a.samples == 0 || a.planes == 0 {
        bail!("--t-max must be positive and --samples, --planes nonzero");
    }
    let model = CuspModel::new(2, 1.0, WarpFunction::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut csv = String::from("t,Y,K,K_lower,K_upper\n");
    // (label, min K, max K, every sample inside its band)
    let mut bands = [
        ("t<=1", f64::INFINITY, f64::NEG_INFINITY, true),
        ("1<t<3", f64::INFINITY, f64::NEG_INFINITY, true),
        ("t>=3", f64::INFINITY, f64::NEG_INFINITY, true),
    ];
    for i in 1..=a.samples {
        let t = a.t_max * i as f64 / a.samples as f64;
        let (lo, hi, band) = if t <= 1.0 {
            (-1.0, -1.0, 0)
        } else if t < 3.0 {
            (-11.0, -0.04, 1)
        } else {
            (-6.0 / (t * t), -4.0 / (t * t), 2)
        };
        for _ in 0..a.planes {
            let y: f64 = rng.gen_range(-1.0..=1.0);
            let k = model.sectional_curvature(&TangentPlaneSpec::new(t, y)?);
            let b = &mut bands[band];
            b.1 = b.1.min(k);
            b.2 = b.2.max(k);
            let tol = if band == 1 { 0.0 } else { 1e-10 };
            b.3 &= k >= lo - tol && k <= hi + tol;
            writeln!(csv, "{t},{y},{k},{lo},{hi}")?;
        }
    }
    let mut table = String::from("band,K_min,K_max,pass\n");
    for (label, kmin, kmax, ok) in &bands {
        if kmin.is_finite() {
            writeln!(table, "{label},{kmin},{kmax},{ok}")?;
        }
    }
    write_atomic(out, "curvature.csv", &csv)?;
    write_atomic(out, "curvature_ranges.csv", &table)?;
    print!("{table}");
    Ok(Outcome::Ok)
}

fn visibility(a: &VisibilityArgs, out: &Path) -> Result<Outcome> {
    let model = CuspModel::new(2, 1.0, WarpFunction::default())?;
    let mut csv = String::from("T,integral,lower_bound,pass\n");
    for &t in &a.t {
        let v = model.visibility_integral(t)?;
        let lb = 0.04 * t.ln();
        writeln!(csv, "{t},{v},{lb},{}", v >= lb - 1e-6)?;
    }
    write_atomic(out, "visibility.csv", &csv)?;
    print!("{csv}");
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct VolumeReport {
    n: usize,
    torus_volume: f64,
    t0: f64,
    integrand: &'static str,
    analytic: f64,
    quadrature: f64,
    abs_diff: f64,
}

fn volume(a: &VolumeArgs, out: &Path) -> Result<Outcome> {
    let (integrand, name) = match a.integrand {
        Integrand::Warped => (VolumeIntegrand::WarpedProduct, "warped"),
        Integrand::Linear => (VolumeIntegrand::Linear, "linear"),
    };
    let model = CuspModel::new(a.n, a.torus_volume, WarpFunction::default())?.with_integrand(integrand);
    let analytic = model.cusp_volume(a.t0)?;
    let quadrature = model.cusp_volume_quadrature(a.t0)?;
    let r = VolumeReport {
        n: a.n,
        torus_volume: a.torus_volume,
        t0: a.t0,
        integrand: name,
        analytic,
        quadrature,
        abs_diff: (analytic - quadrature).abs(),
    };
    write_atomic(out, "volume.json", &to_json(&r)?)?;
    println!("cusp volume {analytic} (quadrature {quadrature})");
    Ok(Outcome::Ok)
}

/// One set of a cover file.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallSpec {
    pub center: UhpPoint,
    pub radius: f64,
}

/// Cover file written by `thick-thin` and read by `nerve`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    #[serde(default)]
    pub sets: Vec<BallSpec>,
    /// Group whose quotient the balls live in; empty for the plane itself.
    #[serde(default)]
    pub group: Vec<MoebiusIsometry>,
    #[serde(default = "default_word_cap")]
    pub word_cap: usize,
    /// Area of the covered region, used as the volume in the (D, C) report.
    #[serde(default)]
    pub area: Option<f64>,
    #[serde(default = "default_n")]
    pub n: usize,
}

fn default_word_cap() -> usize {
    3
}

fn default_n() -> usize {
    2
}

fn ball_spec(v: &serde_json::Value) -> Result<BallSpec> {
    let Some(obj) = v.as_object() else { bail!("expected an object with `center` and `radius`") };
    if let Some(k) = obj.keys().find(|k| *k != "center" && *k != "radius") {
        bail!("unknown field `{k}`");
    }
    let center = obj.get("center").context("missing field `center`")?;
    let center: UhpPoint = serde_json::from_value(center.clone()).context("field `center`")?;
    let radius = obj.get("radius").context("missing field `radius`")?;
    let radius = radius.as_f64().with_context(|| format!("field `radius`: expected a number, got {radius}"))?;
    if !(radius > 0.0) || !radius.is_finite() {
        bail!("field `radius`: {radius} is not positive");
    }
    Ok(BallSpec { center, radius })
}

fn read_cover(path: &Path) -> Result<CoverFile> {
    let mut value: serde_json::Value = read_json(path, "cover")?;
    let malformed = || format!("malformed cover in {}", path.display());
    // sets are parsed one by one so the error names the offending entry
    let sets = match &mut value {
        serde_json::Value::Array(list) => std::mem::take(list),
        serde_json::Value::Object(map) => match map.remove("sets") {
            Some(serde_json::Value::Array(list)) => list,
            Some(_) => bail!("{}: `sets` must be a list", malformed()),
            None => bail!("{}: missing field `sets`", malformed()),
        },
        _ => bail!("{}: expected a list of sets or an object with `sets`", malformed()),
    };
    let sets: Vec<BallSpec> = sets
        .iter()
        .enumerate()
        .map(|(i, v)| ball_spec(v).with_context(|| format!("{}: sets[{i}]", malformed())))
        .collect::<Result<_>>()?;
    if value.is_array() {
        return Ok(CoverFile { sets, group: Vec::new(), word_cap: default_word_cap(), area: None, n: default_n() });
    }
    let mut cover: CoverFile = serde_json::from_value(value).with_context(malformed)?;
    cover.sets = sets;
    Ok(cover)
}

fn thick_thin(a: &ThickThinArgs, seed: u64, out: &Path) -> Result<Outcome> {
    let ledger = ConstantsLedger::build(a.ledger.n, a.ledger.margulis_eps, a.ledger.margulis_index)?;
    let generators: Vec<MoebiusIsometry> = read_json(&a.group, "group presentation")?;
    let group = GroupPresentation::new(generators.clone(), a.word_cap)?;
    let eps = a.eps.unwrap_or(ledger.eps());
    let levels = EpsAssignment::new(eps, ledger.margulis_eps(), EpsRule::Constant)?;
    let (x0, x1, y0, y1) = (a.x_range[0], a.x_range[1], a.y_range[0], a.y_range[1]);
    let rows = hyperbolic_grid((x0, x1), (y0, y1), a.grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut csv = String::from("x,y,d_gamma,label,kind\n");
    let mut thick = Vec::new();
    for row in &rows {
        for p in row {
            // jitter by up to a quarter pitch so the seed drives the sample
            let dx = rng.gen_range(-0.25..0.25) * a.grid * p.y();
            let q = UhpPoint::new((p.x() + dx).clamp(x0, x1), p.y())?;
            let d = group.d_gamma(&q);
            let kind = group.thin_kind(&levels, &q);
            let (label, kind) = match kind {
                Some(k) => ("thin", serde_json::to_value(k)?.as_str().unwrap_or_default().to_string()),
                None => ("thick", String::new()),
            };
            writeln!(csv, "{},{},{d},{label},{kind}", q.x(), q.y())?;
            if kind.is_empty() {
                thick.push(q);
            }
        }
    }
    let radius = a.cover_radius.unwrap_or(2.0 * a.grid);
    let net = greedy_net_with(&thick, radius / 2.0, |p, q| group.quotient_distance(p, q))?;
    let cell = a.grid * a.grid;
    let cover = CoverFile {
        sets: net.centers.iter().map(|c| BallSpec { center: *c, radius }).collect(),
        group: generators,
        word_cap: a.word_cap,
        area: Some(thick.len() as f64 * cell),
        n: 2,
    };
    write_atomic(out, "samples.csv", &csv)?;
    write_atomic(out, "ledger.json", &to_json(&ledger.dump())?)?;
    write_atomic(out, "cover.json", &to_json(&cover)?)?;
    println!("{} samples, {} thick, {} cover sets", rows.iter().map(Vec::len).sum::<usize>(), thick.len(), net.len());
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct NerveReport<'a> {
    intersection_test: &'static str,
    dim_cap: usize,
    vol: f64,
    dc: &'a viscomplex_core::cover::DcReport,
}

fn nerve_cmd(a: &NerveArgs, out: &Path) -> Result<Outcome> {
    let cover = read_cover(&a.input)?;
    let balls: Vec<(UhpPoint, f64)> = cover.sets.iter().map(|s| (s.center, s.radius)).collect();
    let dim_cap = a.dim_cap.unwrap_or(default_dim_cap(cover.n));
    let complex: NerveComplex = if cover.group.is_empty() {
        build(&HyperbolicBallOracle::new(balls.clone()), dim_cap)?
    } else {
        let g = GroupPresentation::new(cover.group.clone(), cover.word_cap).context("cover group")?;
        build(&QuotientBallOracle::new(balls.clone(), g.ball()), dim_cap)?
    };
    let ledger = load_ledger(a.ledger.as_deref())?;
    let vol = match (a.vol, cover.area) {
        (Some(v), _) | (None, Some(v)) => v,
        // union of the balls is at most the sum of their areas
        (None, None) => balls.iter().map(|(_, r)| 2.0 * std::f64::consts::PI * (r.cosh() - 1.0)).sum(),
    };
    let dc = check_dc_ledger(&complex.complex, &ledger, vol);
    let report = NerveReport { intersection_test: "exact", dim_cap, vol, dc: &dc };
    write_atomic(out, "complex.json", &to_json(&complex.complex)?)?;
    write_atomic(out, "dc_report.json", &to_json(&report)?)?;
    println!(
        "nerve: {} vertices, counts {:?}, max degree {}, (D, C) {}",
        complex.vertex_count,
        complex.complex.counts(),
        complex.max_degree(),
        if dc.pass { "pass" } else { "fail" }
    );
    Ok(if a.strict && !dc.pass { Outcome::BoundFailure } else { Outcome::Ok })
}

fn build<O: IntersectionOracle>(o: &O, dim_cap: usize) -> Result<NerveComplex> {
    Ok(nerve(o, dim_cap)?)
}

#[derive(Serialize)]
struct HomologyOutput<'a> {
    summary: &'a viscomplex_core::HomologySummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<viscomplex_core::homology::BoundsReport>,
}

fn homology_cmd(a: &HomologyArgs, out: &Path) -> Result<Outcome> {
    let complex: SimplicialComplex = read_json(&a.input, "complex")?;
    let summary = homology(&complex, &a.primes)?;
    let bounds = if a.report_bounds || a.ledger.is_some() || a.vol.is_some() {
        let ledger = load_ledger(a.ledger.as_deref())?;
        let vol = a.vol.context("--vol is required for the bounds report")?;
        Some(bounds_report(&summary, &ledger, vol)?)
    } else {
        None
    };
    let fail = bounds.as_ref().is_some_and(|b| !b.pass);
    write_atomic(out, "homology.json", &to_json(&HomologyOutput { summary: &summary, bounds })?)?;
    for d in &summary.degrees {
        let torsion: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
        println!("H_{}: betti_Q = {}, mod p = {:?}, torsion = [{}]", d.k, d.betti_q, d.betti_mod_p, torsion.join(", "));
    }
    Ok(if a.strict && fail { Outcome::BoundFailure } else { Outcome::Ok })
}
