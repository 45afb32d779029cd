//! Command-line definitions and dispatch.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use holomon_core::cft::{
    central_charge, numeric_tau, random_inputs, sigma_pvi_residual, sphere4_block, torus1_block, BlockSeries,
    Field, Mpc, TauInput, Weighting,
};
use holomon_core::classical::{trace_function, verify_mutation_covariance};
use holomon_core::laurent::LaurentPolyRepr;
use holomon_core::topology::{CurvePath, Reference, SurfaceFile, SurfaceKind, Triangulation};
use holomon_core::Error as CoreError;
use num_rational::BigRational;
use serde_json::json;

use crate::plot::emit_plot;
use crate::report::{Check, Format, Report};
use crate::suite::{self, PantsOptions, TauOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_UNKNOWN_COMMAND: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_COMPUTE: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse(s) => CliError::Parse(s),
            other => CliError::Compute(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "holomon", version, about = "Trace functions, quantum Teichmueller operators and conformal blocks")]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Write an SVG plot of the series or residuals.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    /// Append wall times to text reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Decimal digits for floating-point modes.
    #[arg(long, global = true, env = "HOLOMON_PRECISION")]
    pub digits: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Surface file utilities.
    Surface {
        #[command(subcommand)]
        action: SurfaceCmd,
    },
    /// Trace functions of named curves.
    Trace(TraceArgs),
    /// Flip an edge and check every curve's trace.
    Flip(FlipArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Conformal block series.
    Block {
        #[command(subcommand)]
        kind: BlockCmd,
    },
    /// Tau function series and its Painleve VI residual.
    Tau(TauArgs),
    /// Every suite on both reference surfaces.
    Report,
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// Load and check a surface file (or `c11` / `c04`).
    Validate {
        #[arg(long)]
        surface: String,
    },
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long, default_value = "c11")]
    pub surface: String,
    /// Only this curve; all named curves otherwise.
    #[arg(long)]
    pub curve: Option<String>,
}

#[derive(Debug, Args)]
pub struct FlipArgs {
    #[arg(long, default_value = "c11")]
    pub surface: String,
    #[arg(long)]
    pub edge: usize,
    /// Save the flipped surface file here.
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhat {
    ClassicalRelations,
    QuantumRelations,
    Mutation,
    PantsRep,
    Bpz,
    Dictionary,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub what: VerifyWhat,
    #[arg(long, default_value = "c11")]
    pub surface: String,
    /// `re,im` or `re`.
    #[arg(long)]
    pub b2: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub draws: usize,
    #[arg(long, default_value_t = 24)]
    pub window: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Truncation order of block series.
    #[arg(long, default_value_t = 8)]
    pub order: u32,
}

#[derive(Debug, Subcommand)]
pub enum BlockCmd {
    /// Sphere four-point block, externals at 0, z, 1, infinity.
    Sphere4 {
        /// `D1,D2,D3,D4` as integers, decimals or `p/q`.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
        #[arg(long)]
        internal: String,
        #[command(flatten)]
        charge: ChargeArgs,
        #[arg(long, default_value_t = 8)]
        order: u32,
        /// Point for the partial-sum plot.
        #[arg(long, default_value = "0.1")]
        z: f64,
    },
    /// Torus one-point block.
    Torus1 {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        internal: String,
        #[command(flatten)]
        charge: ChargeArgs,
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, default_value = "0.1")]
        z: f64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ChargeArgs {
    /// Central charge.
    #[arg(long)]
    pub c: Option<String>,
    /// `b^2`, giving `c = 13 + 6 (b^2 + b^-2)`.
    #[arg(long)]
    pub b2: Option<String>,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// Internal momentum `sigma` of the shift sum.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    /// `theta_0, theta_t, theta_1, theta_inf`.
    #[arg(long, value_delimiter = ',')]
    pub theta: Option<Vec<f64>>,
    #[arg(long, default_value_t = 6)]
    pub order: u32,
    #[arg(long, default_value_t = 3)]
    pub shifts: u32,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn from_report(r: &Report, cfg: &RunConfig) -> Self {
        Self {
            text: r.render(cfg.format.into(), cfg.timings),
            code: if r.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
        }
    }
}

/// Exact rational from `p/q`, an integer or a plain decimal.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Parse(format!("`{s}` is not a rational number"));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == 0.into() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: num_bigint::BigInt = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let den = num_bigint::BigInt::from(10).pow(frac.len() as u32 + 1);
    let r = BigRational::new(digits, den);
    Ok(if neg { -r } else { r })
}

fn parse_pair(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Parse(format!("`{s}` is not `re,im`"));
    let mut it = s.split(',').map(|x| x.trim().parse::<f64>());
    let re = it.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match it.next() {
        Some(v) => v.map_err(|_| bad())?,
        None => 0.0,
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((re, im))
}

fn parse_kind(s: &str) -> Result<SurfaceKind, CliError> {
    SurfaceKind::parse(s).map_err(|_| CliError::Parse(format!("surface must be c11 or c04, got `{s}`")))
}

/// A triangulation with named curves, from `c11`, `c04` or a file path.
pub fn load_surface(s: &str) -> Result<(Triangulation, BTreeMap<String, CurvePath>), CliError> {
    if let Ok(kind) = SurfaceKind::parse(s) {
        let r = Reference::get(kind);
        return Ok((r.triangulation, r.curves));
    }
    let text = std::fs::read_to_string(s).map_err(|e| CliError::Io(format!("{s}: {e}")))?;
    let data = SurfaceFile::from_json(&text)?.load()?;
    let tri = data
        .triangulation
        .ok_or_else(|| CliError::Parse(format!("{s}: no triangles")))?;
    Ok((tri, data.curves))
}

fn write_plot(cfg: &RunConfig, title: &str, pts: &[(f64, f64)], log_y: bool) -> Result<(), CliError> {
    if let Some(p) = &cfg.plot {
        emit_plot(p, title, pts, log_y).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Surface { action: SurfaceCmd::Validate { surface } } => validate(cfg, surface),
        Command::Trace(a) => traces(cfg, a),
        Command::Flip(a) => flip(cfg, a),
        Command::Verify(a) => verify(cfg, a),
        Command::Block { kind } => block(cfg, kind),
        Command::Tau(a) => tau(cfg, a),
        Command::Report => Ok(Outcome::from_report(&full_report(cfg.seed, cfg.digits), cfg)),
    }
}

fn validate(cfg: &RunConfig, surface: &str) -> Result<Outcome, CliError> {
    let (tri, curves) = load_surface(surface)?;
    let mut rep = Report::new(format!("surface {surface}"));
    let s = tri.surface();
    let n = tri.exchange_matrix();
    rep.extend([
        Check::new(
            "gluing",
            "surface-data",
            tri.num_edges() == s.edge_count() && tri.num_triangles() == s.triangle_count(),
            format!("genus {} punctures {}: {} edges, {} triangles", s.genus, s.punctures, tri.num_edges(), tri.num_triangles()),
        ),
        Check::new("exchange matrix", "surface-data", n.is_antisymmetric() && n.entries_in_range(), ""),
        Check::new("fat graph", "surface-data", tri.dual_fat_graph().is_trivalent(), "trivalent"),
    ]);
    for (name, c) in &curves {
        rep.extend([match trace_function(&tri, c) {
            Ok(p) => Check::new(
                format!("curve {name}"),
                "surface-data",
                p.all_coefficients_positive(),
                format!("{} steps, {} trace terms", c.len(), p.len()),
            ),
            Err(e) => Check::error(format!("curve {name}"), "surface-data", e),
        }]);
    }
    Ok(Outcome::from_report(&rep, cfg))
}

fn traces(cfg: &RunConfig, a: &TraceArgs) -> Result<Outcome, CliError> {
    let (tri, curves) = load_surface(&a.surface)?;
    let names: Vec<&String> = match &a.curve {
        Some(c) => vec![curves
            .get_key_value(c)
            .ok_or_else(|| CliError::Parse(format!("no curve named `{c}`")))?
            .0],
        None => curves.keys().collect(),
    };
    let mut polys = BTreeMap::new();
    for name in names {
        polys.insert(name.clone(), trace_function(&tri, &curves[name])?);
    }
    let text = match cfg.format {
        FormatArg::Text => polys.iter().fold(String::new(), |mut s, (k, p)| {
            let _ = writeln!(s, "{k} = {p}");
            s
        }),
        FormatArg::Json => {
            let m: BTreeMap<&String, LaurentPolyRepr> = polys.iter().map(|(k, p)| (k, p.into())).collect();
            serde_json::to_string_pretty(&m).expect("serializes") + "\n"
        }
        FormatArg::Csv => {
            let mut s = String::from("curve,exponent,numerator,denominator\n");
            for (k, p) in &polys {
                for (e, n, d) in LaurentPolyRepr::from(p).terms {
                    let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "{k},{},{n},{d}", e.join(" "));
                }
            }
            s
        }
    };
    Ok(Outcome { text, code: EXIT_OK })
}

fn flip(cfg: &RunConfig, a: &FlipArgs) -> Result<Outcome, CliError> {
    let (tri, curves) = load_surface(&a.surface)?;
    let (new, data) = tri.flip_with_data(a.edge)?;
    let mut moved = BTreeMap::new();
    let mut rep = Report::new(format!("flip {} at edge {}", a.surface, a.edge));
    for (name, c) in &curves {
        moved.insert(name.clone(), c.transport(&tri, &new, &data)?);
        rep.extend([match verify_mutation_covariance(&tri, a.edge, c) {
            Ok(m) => Check::new(
                format!("curve {name}"),
                "flip-covariance",
                m.equal,
                format!("cleared (1 + X_e)^{}", m.cleared_power),
            ),
            Err(e) => Check::error(format!("curve {name}"), "flip-covariance", e),
        }]);
    }
    let n = new.exchange_matrix();
    rep.note(format!("exchange matrix after flip: {:?}", n.n));
    if let Some(path) = &a.save {
        let file = SurfaceFile::from_parts(&new, &moved, None);
        std::fs::write(path, file.to_json() + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome::from_report(&rep, cfg))
}

fn verify(cfg: &RunConfig, a: &VerifyArgs) -> Result<Outcome, CliError> {
    let kind = parse_kind(&a.surface)?;
    let b2 = a.b2.as_deref().map(parse_pair).transpose()?;
    let po = PantsOptions {
        seed: cfg.seed,
        draws: a.draws,
        digits: cfg.digits.unwrap_or(30),
        b2,
        window: a.window,
        tol: a.tol,
    };
    let mut rep = Report::new(format!("verify {:?} {} seed {}", a.what, kind.name(), cfg.seed).to_lowercase());
    let order = a.order;
    type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;
    let mut jobs: Vec<Job> = Vec::new();
    let mut csv = None;
    use VerifyWhat::*;
    let want = |w: VerifyWhat| a.what == w || a.what == All;
    if want(ClassicalRelations) {
        jobs.push(Box::new(move || suite::classical(kind)));
    }
    if want(QuantumRelations) {
        jobs.push(Box::new(move || suite::quantum(kind)));
    }
    if want(Mutation) {
        jobs.push(Box::new(move || suite::mutation(kind)));
    }
    if want(Bpz) {
        jobs.push(Box::new(suite::virasoro));
        jobs.push(Box::new(move || suite::bpz(order)));
        jobs.push(Box::new(move || suite::vacuum(order)));
    }
    if want(Dictionary) {
        jobs.push(Box::new(suite::dictionary));
        rep.note(suite::BRAIDING_NOTE);
    }
    rep.extend(suite::run_jobs(jobs));
    if want(PantsRep) {
        let (checks, first) = suite::pants(kind, &po);
        rep.extend(checks);
        if let Some(r) = first {
            let pts: Vec<(f64, f64)> = r.rows.iter().filter(|x| x.relation == 3).map(|x| (x.site as f64, x.residual)).collect();
            write_plot(cfg, "relative residual per site", &pts, true)?;
            csv = Some(r.to_csv());
        }
    }
    let mut out = Outcome::from_report(&rep, cfg);
    if a.what == PantsRep && cfg.format == FormatArg::Csv {
        if let Some(c) = csv {
            out.text = c;
        }
    }
    Ok(out)
}

fn charge(c: &ChargeArgs) -> Result<BigRational, CliError> {
    match (&c.c, &c.b2) {
        (Some(c), _) => parse_rational(c),
        (None, Some(b2)) => central_charge(&parse_rational(b2)?).ok_or_else(|| CliError::Parse("b^2 = 0".into())),
        (None, None) => Err(CliError::Parse("need --c or --b2".into())),
    }
}

fn render_series(cfg: &RunConfig, b: &BlockSeries<BigRational>, c: &BigRational, z: f64) -> Result<Outcome, CliError> {
    let to_f = |x: &BigRational| x.magnitude() * if x < &BigRational::from_integer(0.into()) { -1.0 } else { 1.0 };
    let mut partial = 0.0;
    let pts: Vec<(f64, f64)> = b
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, ck)| {
            partial += to_f(ck) * z.powi(k as i32);
            (k as f64, partial)
        })
        .collect();
    write_plot(cfg, &format!("partial sums at z = {z}"), &pts, false)?;
    let text = match cfg.format {
        FormatArg::Text => {
            let mut s = format!(
                "# {} block, mode exact, c = {c}, internal = {}, externals = [{}]\nexponent {}\n",
                b.channel,
                b.internal,
                b.externals.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                b.leading_exponent
            );
            for (k, ck) in b.coefficients.iter().enumerate() {
                let _ = writeln!(s, "{k} {}/{}", ck.numer(), ck.denom());
            }
            s
        }
        FormatArg::Json => {
            let coeffs: Vec<_> = b
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, x)| json!({"k": k, "num": x.numer().to_string(), "den": x.denom().to_string()}))
                .collect();
            let v = json!({
                "channel": b.channel,
                "mode": "exact",
                "c": c.to_string(),
                "internal": b.internal.to_string(),
                "externals": b.externals.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "leading_exponent": b.leading_exponent.to_string(),
                "coefficients": coeffs,
            });
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
        FormatArg::Csv => {
            let mut s = String::from("k,numerator,denominator\n");
            for (k, ck) in b.coefficients.iter().enumerate() {
                let _ = writeln!(s, "{k},{},{}", ck.numer(), ck.denom());
            }
            s
        }
    };
    Ok(Outcome { text, code: EXIT_OK })
}

fn block(cfg: &RunConfig, kind: &BlockCmd) -> Result<Outcome, CliError> {
    match kind {
        BlockCmd::Sphere4 { weights, internal, charge: ch, order, z } => {
            let w: Vec<BigRational> = weights.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
            if w.len() != 4 {
                return Err(CliError::Parse("need four weights".into()));
            }
            let c = charge(ch)?;
            let db = parse_rational(internal)?;
            let b = sphere4_block([&w[0], &w[1], &w[2], &w[3]], &db, &c, *order)?;
            render_series(cfg, &b, &c, *z)
        }
        BlockCmd::Torus1 { weight, internal, charge: ch, order, z } => {
            let c = charge(ch)?;
            let b = torus1_block(&parse_rational(weight)?, &parse_rational(internal)?, &c, *order)?;
            render_series(cfg, &b, &c, *z)
        }
    }
}

fn fmt_mpc(x: &Mpc) -> (String, String) {
    (format!("{:.16e}", x.re()), format!("{:.16e}", x.im()))
}

fn tau(cfg: &RunConfig, a: &TauArgs) -> Result<Outcome, CliError> {
    let digits = cfg.digits.unwrap_or(50);
    let draw = random_inputs(cfg.seed, 1)[0];
    let theta = match &a.theta {
        Some(v) if v.len() == 4 => [v[0], v[1], v[2], v[3]],
        Some(_) => return Err(CliError::Parse("need four theta values".into())),
        None => [0.23, 0.31, 0.17, 0.37],
    };
    let input = TauInput {
        sigma: a.lambda.unwrap_or(draw.sigma),
        kappa: a.kappa.unwrap_or(draw.kappa),
        theta,
    };
    let t = numeric_tau(input.sigma, input.kappa, input.theta, a.order, a.shifts, digits, Weighting::Geometric)?;
    let res = sigma_pvi_residual(&t)?;
    let by_order = res.by_order();
    let max = res.max_abs();
    let passed = max <= a.tol && t.excluded.is_empty();
    let pts: Vec<(f64, f64)> = by_order.iter().enumerate().map(|(k, r)| (k as f64, *r)).collect();
    write_plot(cfg, "Painleve VI residual by order", &pts, true)?;
    let terms: Vec<_> = t
        .series
        .terms()
        .iter()
        .filter(|(k, _)| k.1 <= a.order as i64)
        .map(|(k, v)| (k, fmt_mpc(v)))
        .collect();
    let status = if passed { "PASS" } else { "FAIL" };
    let text = match cfg.format {
        FormatArg::Text => {
            let mut s = format!(
                "# tau sum, sigma = {}, kappa = {}, theta = {:?}, order {}, shifts {}, digits {}\n",
                input.sigma, input.kappa, input.theta, a.order, a.shifts, digits
            );
            let _ = writeln!(s, "# monomial w^n t^m stands for (e^(i kappa) r)^n t^(sigma^2 - theta_0^2 - theta_t^2 + 2 sigma n + m)");
            let _ = writeln!(s, "# n m re im");
            for ((n, m), (re, im)) in &terms {
                let _ = writeln!(s, "{n} {m} {re} {im}");
            }
            for (n, why) in &t.excluded {
                let _ = writeln!(s, "warning: shift {n} excluded, {why}");
            }
            let _ = writeln!(s, "{status}  painleve residual  [tau-sum]  max={max:.3e} tol={:.0e}", a.tol);
            s
        }
        FormatArg::Json => {
            let v = json!({
                "sigma": input.sigma,
                "kappa": input.kappa,
                "theta": input.theta,
                "order": a.order,
                "shifts": a.shifts,
                "digits": digits,
                "series": terms.iter().map(|((n, m), (re, im))| json!({"n": n, "m": m, "re": re, "im": im})).collect::<Vec<_>>(),
                "excluded": t.excluded.iter().map(|(n, w)| json!({"shift": n, "reason": w})).collect::<Vec<_>>(),
                "residual_by_order": by_order.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>(),
                "residual_max": format!("{max:.3e}"),
                "status": status,
            });
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
        FormatArg::Csv => {
            let mut s = String::from("n,m,re,im\n");
            for ((n, m), (re, im)) in &terms {
                let _ = writeln!(s, "{n},{m},{re},{im}");
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

/// All suites on both reference surfaces, one numeric tau draw and the
/// exact tau oracle.
pub fn full_report(seed: u64, digits: Option<u32>) -> Report {
    let mut rep = Report::new(format!("holomon report seed {seed}"));
    type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;
    let mut jobs: Vec<Job> = Vec::new();
    for kind in [SurfaceKind::C11, SurfaceKind::C04] {
        jobs.push(Box::new(move || suite::classical(kind)));
        jobs.push(Box::new(move || suite::quantum(kind)));
        jobs.push(Box::new(move || suite::mutation(kind)));
        jobs.push(Box::new(move || {
            let po = PantsOptions {
                seed,
                digits: digits.unwrap_or(30),
                ..PantsOptions::default()
            };
            suite::pants(kind, &po).0
        }));
    }
    jobs.push(Box::new(suite::virasoro));
    jobs.push(Box::new(|| suite::bpz(8)));
    jobs.push(Box::new(|| suite::vacuum(8)));
    jobs.push(Box::new(|| suite::tau_exact(4)));
    jobs.push(Box::new(move || {
        let o = TauOptions {
            digits: digits.unwrap_or(50),
            ..TauOptions::default()
        };
        suite::tau_checks(&random_inputs(seed, 1)[0], &o, "tau draw 0")
    }));
    jobs.push(Box::new(suite::dictionary));
    rep.extend(suite::run_jobs(jobs));
    rep.note(suite::BRAIDING_NOTE);
    rep.note("quantum relations are checked on the stored reference triangulations");
    rep
}

/// Writes `text` to the configured output or returns it for stdout.
pub fn deliver(cfg: &RunConfig, text: &str) -> Result<Option<String>, CliError> {
    match &cfg.output {
        Some(p) => {
            write_file(p, text)?;
            Ok(None)
        }
        None => Ok(Some(text.to_string())),
    }
}

fn write_file(p: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(parse_rational("3/4").unwrap(), r(3, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), r(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("0.3,0.1").unwrap(), (0.3, 0.1));
        assert_eq!(parse_pair("0.3").unwrap(), (0.3, 0.0));
        assert!(parse_pair("a,b").is_err());
        assert!(parse_pair("1,2,3").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        RunConfig::command().debug_assert();
    }
}
