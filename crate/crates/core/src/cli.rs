//! The `bwangle` command line.
//!
//! Every run echoes its effective configuration: a `# config: {...}` first
//! line for table and CSV output, a `config` member for JSON output.
//!
//! Exit codes: 0 success, 2 angle undefined (`angle` only), 3 invalid space or
//! arguments, 4 numerical failure.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::axioms::{check_axioms, counterexamples_csv, reproduce_counterexamples};
use crate::catalog::{default_params, sweep_members};
use crate::classify::{class_report, conjecture_sweep, upsilon, UpsilonConfig};
use crate::corners::{curvature_report, find_corners, sphere_csv, DEFAULT_RESOLUTION};
use crate::csb::{csb_sup, CsbConfig};
use crate::fmt::sig12;
use crate::geometry::{pair_geometry, rho_angle, rho_product};
use crate::repro::run_all;
use crate::space::{sample_unit_sphere, SpaceDescriptor};
use crate::{Error, Vector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNDEFINED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "bwangle", version, about = "Generalized rho-angles on balanced-weighted spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// rho-angle of two vectors
    Angle(AngleArgs),
    /// rho-product of two vectors
    Product(PairArgs),
    /// Supremum of |Delta/4|(Sigma/4)^rho over unit pairs
    Csb(CsbArgs),
    /// Exponent interval (nu, mu)
    Upsilon(UpsilonArgs),
    /// Class memberships at a list of exponents
    Classify(ClassifyArgs),
    /// Convex and concave corners of the unit sphere
    Corners(ResolutionArgs),
    /// Flat segments, corners, strict convexity and curvature
    Curvature(ResolutionArgs),
    /// Sampled checks of the axioms An1-An11
    Axioms(AxiomArgs),
    /// Upsilon and has-angle table over a family
    Sweep(SweepArgs),
    /// Unit sphere polyline as CSV
    SphereExport(ResolutionArgs),
    /// Recompute every published value and print a pass/fail table
    Repro(ReproArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Serialize)]
struct Common {
    /// Space descriptor: inline JSON or a path to a JSON file
    #[arg(long)]
    space: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    output: Option<String>,
}

/// Comma-separated reals; `inf` and `-inf` are accepted.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
struct Reals(Vec<f64>);

impl std::ops::Deref for Reals {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

fn parse_reals(s: &str) -> Result<Reals, String> {
    s.split(',')
        .map(|t| match t.trim() {
            "inf" | "+inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            t => t.parse::<f64>().map_err(|e| format!("{t:?}: {e}")),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Reals)
}

#[derive(Args, Debug, Serialize)]
struct PairArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    /// Comma-separated coordinates
    #[arg(long, value_parser = parse_reals, allow_hyphen_values = true)]
    x: Reals,
    #[arg(long, value_parser = parse_reals, allow_hyphen_values = true)]
    y: Reals,
    #[arg(long, allow_hyphen_values = true)]
    rho: f64,
}

#[derive(Args, Debug, Serialize)]
struct AngleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pair: PairArgs,
    /// Print angles in degrees
    #[arg(long)]
    degrees: bool,
}

#[derive(Args, Debug, Serialize)]
struct SearchArgs {
    /// Planar grid directions
    #[arg(long, default_value_t = 1024)]
    resolution: usize,
    /// Pattern-search iterations per start
    #[arg(long, default_value_t = 40)]
    refine: usize,
    #[arg(long, default_value_t = 16)]
    starts: usize,
    /// holds iff sup <= 1 + tol
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    #[arg(long, default_value_t = crate::DEFAULT_SEED)]
    seed: u64,
    /// Random pairs scanned in dimension >= 3
    #[arg(long, default_value_t = 1_000_000)]
    random_pairs: usize,
}

impl SearchArgs {
    fn config(&self) -> CsbConfig {
        CsbConfig {
            resolution: self.resolution,
            refine_steps: self.refine,
            starts: self.starts,
            tol: self.tol,
            seed: self.seed,
            random_pairs: self.random_pairs,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct CsbArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    rho: f64,
    #[command(flatten)]
    #[serde(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug, Serialize)]
struct UpsilonArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1e-3)]
    bracket_tol: f64,
    /// Validity at +-rho_cap is reported as +-inf
    #[arg(long, default_value_t = 64.0)]
    rho_cap: f64,
    #[command(flatten)]
    #[serde(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    /// Comma-separated exponents
    #[arg(long, value_parser = parse_reals, default_value = "-1,0,1", allow_hyphen_values = true)]
    rho_list: Reals,
    #[command(flatten)]
    #[serde(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug, Serialize)]
struct ResolutionArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: usize,
}

#[derive(Args, Debug, Serialize)]
struct AxiomArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    rho: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = crate::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    out: OutputArgs,
    /// hoelder, hexagon or product (two Euclidean lines)
    #[arg(long, default_value = "hoelder")]
    family: String,
    /// Comma-separated family parameters; defaults to the standard list
    #[arg(long, value_parser = parse_reals)]
    params: Option<Reals>,
    #[arg(long, value_parser = parse_reals, default_value = "-3,-2,-1.5,-1,-0.5,0,0.5,1,1.5,2,3", allow_hyphen_values = true)]
    rho_grid: Reals,
    #[arg(long, default_value_t = 1e-3)]
    bracket_tol: f64,
    #[arg(long, default_value_t = 64.0)]
    rho_cap: f64,
    #[command(flatten)]
    #[serde(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug, Serialize)]
struct ReproArgs {
    #[command(flatten)]
    #[serde(flatten)]
    out: OutputArgs,
}

/// Failure of a run, already mapped to its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateSigma | Error::NonFinite(_) => EXIT_NUMERIC,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load_space(src: &str) -> Result<SpaceDescriptor, Failure> {
    let text = if src.trim_start().starts_with('{') || src.trim_start().starts_with('"') {
        src.to_string()
    } else {
        std::fs::read_to_string(src)
            .map_err(|e| Failure { code: EXIT_INVALID, message: format!("cannot read space file {src}: {e}") })?
    };
    Ok(SpaceDescriptor::from_json(&text)?)
}

/// Rendered result: key/value rows for tables, a CSV body, and JSON.
struct Rendered {
    rows: Vec<(String, String)>,
    csv: Option<String>,
    json: Value,
    code: i32,
}

fn rendered(rows: Vec<(String, String)>, json: Value) -> Rendered {
    Rendered { rows, csv: None, json, code: EXIT_OK }
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn vec_str(v: &[f64]) -> String {
    format!("({})", v.iter().map(|c| sig12(*c)).collect::<Vec<_>>().join(","))
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn write_output(format: Format, path: Option<&str>, config: Value, r: Rendered, out: &mut dyn Write) -> Result<i32, Failure> {
    let header = format!("# config: {}", serde_json::to_string(&config).expect("config serializes"));
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "config": config, "result": r.json })).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let csv = r.csv.unwrap_or_else(|| {
                let mut s = String::from("key,value\n");
                for (k, v) in &r.rows {
                    s.push_str(&format!("{},{}\n", crate::classify::csv_field(k), crate::classify::csv_field(v)));
                }
                s
            });
            format!("{header}\n{csv}")
        }
        Format::Table => {
            let width = r.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            let mut s = format!("{header}\n");
            for (k, v) in &r.rows {
                s.push_str(&format!("{k:<width$}  {v}\n"));
            }
            s
        }
    };
    let res = match path {
        Some(p) => std::fs::write(p, body),
        None => out.write_all(body.as_bytes()),
    };
    res.map_err(|e| Failure { code: EXIT_NUMERIC, message: format!("cannot write output: {e}") })?;
    Ok(r.code)
}

fn config_of<T: Serialize>(command: &str, args: &T, space: Option<&SpaceDescriptor>) -> Value {
    let mut v = json!({ "command": command, "args": to_json(args) });
    if let Some(s) = space {
        v["args"]["space"] = s.to_value();
    }
    v
}

fn check_dims(space: &SpaceDescriptor, x: &[f64], y: &[f64]) -> Result<(), Failure> {
    for v in [x, y] {
        if v.len() != space.dimension() {
            return Err(Error::DimensionMismatch { expected: space.dimension(), got: v.len() }.into());
        }
    }
    Ok(())
}

fn cmd_angle(a: &AngleArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let p = &a.pair;
    check_dims(space, &p.x, &p.y)?;
    let o = rho_angle(space, &p.x, &p.y, p.rho)?;
    let g = pair_geometry(space, &p.x, &p.y)?;
    let unit = if a.degrees { "deg" } else { "rad" };
    let shown = o.angle_rad.map(|r| if a.degrees { r.to_degrees() } else { r });
    let mut rows = vec![
        kv("space", space.label()),
        kv("x", vec_str(&p.x)),
        kv("y", vec_str(&p.y)),
        kv("rho", sig12(p.rho)),
        kv("s", sig12(g.s)),
        kv("d", sig12(g.d)),
        kv("sigma", sig12(g.sigma)),
        kv("delta", sig12(g.delta)),
        kv("cosine", sig12(o.cosine)),
        kv("defined", o.defined),
    ];
    rows.push(kv(&format!("angle_{unit}"), shown.map_or("undefined".into(), sig12)));
    let json = json!({
        "s": g.s, "d": g.d, "sigma": g.sigma, "delta": g.delta,
        "cosine": o.cosine, "defined": o.defined,
        "angle": shown, "unit": unit,
    });
    let mut r = rendered(rows, json);
    if !o.defined {
        r.code = EXIT_UNDEFINED;
    }
    Ok(r)
}

fn cmd_product(p: &PairArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    check_dims(space, &p.x, &p.y)?;
    let v = rho_product(space, &p.x, &p.y, p.rho)?;
    let rows = vec![kv("space", space.label()), kv("x", vec_str(&p.x)), kv("y", vec_str(&p.y)), kv("rho", sig12(p.rho)), kv("product", sig12(v))];
    Ok(rendered(rows, json!({ "product": v })))
}

fn cmd_csb(a: &CsbArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let r = csb_sup(space, a.rho, &a.search.config())?;
    let rows = vec![
        kv("space", space.label()),
        kv("rho", sig12(r.rho)),
        kv("sup_estimate", sig12(r.sup_estimate)),
        kv("holds", r.holds),
        kv("witness_x", vec_str(&r.witness.0)),
        kv("witness_y", vec_str(&r.witness.1)),
        kv("mode", format!("{:?}", r.mode).to_lowercase()),
    ];
    Ok(rendered(rows, to_json(&r)))
}

fn upsilon_config(bracket_tol: f64, rho_cap: f64, search: &SearchArgs) -> UpsilonConfig {
    UpsilonConfig { bracket_tol, rho_cap, csb: search.config() }
}

fn bracket_str(b: Option<(f64, f64)>) -> String {
    b.map_or("none".into(), |(g, b)| format!("[{}, {}]", sig12(g), sig12(b)))
}

fn cmd_upsilon(a: &UpsilonArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let u = upsilon(space, &upsilon_config(a.bracket_tol, a.rho_cap, &a.search))?;
    let rows = vec![
        kv("space", space.label()),
        kv("nu", sig12(u.nu.value())),
        kv("mu", sig12(u.mu.value())),
        kv("nu_attained", u.nu_attained),
        kv("mu_attained", u.mu_attained),
        kv("nu_bracket", bracket_str(u.nu_bracket)),
        kv("mu_bracket", bracket_str(u.mu_bracket)),
        kv("evaluations", u.evaluations),
    ];
    Ok(rendered(rows, to_json(&u)))
}

fn cmd_classify(a: &ClassifyArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let c = class_report(space, &a.rho_list, &a.search.config())?;
    let mut rows = vec![kv("space", space.label())];
    let mut csv = String::from("class,member,evidence\n");
    for m in &c.memberships {
        rows.push(kv(&m.class, format!("{}  ({})", m.member, m.evidence)));
        csv.push_str(&format!("{},{},{}\n", crate::classify::csv_field(&m.class), m.member, crate::classify::csv_field(&m.evidence)));
    }
    let mut r = rendered(rows, to_json(&c));
    r.csv = Some(csv);
    Ok(r)
}

fn cmd_corners(a: &ResolutionArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let cs = find_corners(space, a.resolution)?;
    let mut rows = vec![kv("space", space.label()), kv("corners", cs.len())];
    let mut csv = String::from("kind,y_hat_x,y_hat_y,x_bar_x,x_bar_y,m_minus,m_plus,delta_max\n");
    for (i, c) in cs.iter().enumerate() {
        rows.push(kv(
            &format!("corner_{i}"),
            format!(
                "{:?} y={} xbar={} m-={} m+={} delta_max={}",
                c.kind,
                vec_str(&c.y_hat),
                vec_str(&c.x_bar),
                sig12(c.m_minus),
                sig12(c.m_plus),
                sig12(c.delta_max)
            )
            .to_lowercase(),
        ));
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            format!("{:?}", c.kind).to_lowercase(),
            sig12(c.y_hat[0]),
            sig12(c.y_hat[1]),
            sig12(c.x_bar[0]),
            sig12(c.x_bar[1]),
            sig12(c.m_minus),
            sig12(c.m_plus),
            sig12(c.delta_max)
        ));
    }
    let mut r = rendered(rows, to_json(&cs));
    r.csv = Some(csv);
    Ok(r)
}

fn cmd_curvature(a: &ResolutionArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let c = curvature_report(space, a.resolution)?;
    let mut rows = vec![
        kv("space", space.label()),
        kv("strictly_convex", c.strictly_convex),
        kv("strictly_curved", c.strictly_curved),
        kv("flat_segments", c.flat_segments.len()),
        kv("corners", c.corners.len()),
        kv("exact_polygon", c.exact_polygon),
    ];
    for (i, f) in c.flat_segments.iter().enumerate() {
        rows.push(kv(&format!("flat_{i}"), format!("{} -> {}", vec_str(&f.start), vec_str(&f.end))));
    }
    Ok(rendered(rows, to_json(&c)))
}

fn cmd_axioms(a: &AxiomArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let rep = check_axioms(space, a.rho, a.samples, a.seed)?;
    let mut rows = vec![kv("space", space.label()), kv("rho", sig12(a.rho)), kv("undefined_pairs", rep.undefined_pairs)];
    let mut csv = String::from("axiom,status,discrepancy,witness,detail\n");
    for r in &rep.results {
        let status = format!("{:?}", r.status).to_lowercase();
        let w = r.witness.as_ref().map_or(String::new(), |w| w.iter().map(|v| vec_str(v)).collect::<Vec<_>>().join(" "));
        rows.push(kv(&r.axiom.to_string(), format!("{status:<7} {}  {}{}", sig12(r.discrepancy), r.detail, if w.is_empty() { String::new() } else { format!("  witness {w}") })));
        csv.push_str(&format!(
            "{},{status},{},{},{}\n",
            r.axiom,
            sig12(r.discrepancy),
            crate::classify::csv_field(&w),
            crate::classify::csv_field(&r.detail)
        ));
    }
    let mut r = rendered(rows, to_json(&rep));
    r.csv = Some(csv);
    Ok(r)
}

fn cmd_sweep(a: &SweepArgs) -> Result<Rendered, Failure> {
    let params = a.params.clone().map_or_else(|| default_params(&a.family).to_vec(), |p| p.0);
    let members = sweep_members(&a.family, &params)?;
    let t = conjecture_sweep(&members, &a.rho_grid, &upsilon_config(a.bracket_tol, a.rho_cap, &a.search))?;
    let mut rows = Vec::new();
    for row in &t.rows {
        let ups = row.upsilon.as_ref().map_or("n/a".into(), |u| format!("({}, {})", sig12(u.nu.value()), sig12(u.mu.value())));
        let bits: String = row.has_angle.iter().map(|h| if *h { '1' } else { '0' }).collect();
        rows.push(kv(&row.family_param, format!("{ups}  {bits}")));
    }
    for w in &t.proper_witnesses {
        rows.push(kv("proper", format!("{} valid at {} not at {}", w.member, sig12(w.inner_rho), sig12(w.outer_rho))));
    }
    let mut r = rendered(rows, to_json(&t));
    r.csv = Some(t.to_csv());
    Ok(r)
}

fn cmd_sphere(a: &ResolutionArgs, space: &SpaceDescriptor) -> Result<Rendered, Failure> {
    let csv = sphere_csv(space, a.resolution)?;
    let s = sample_unit_sphere(space, a.resolution)?;
    let rows = vec![kv("space", space.label()), kv("points", s.points.len()), kv("skipped", s.skipped.len())];
    let json = json!({
        "theta": s.angles,
        "points": s.points.iter().map(|p: &Vector| p.to_vec()).collect::<Vec<_>>(),
        "skipped": s.skipped,
    });
    let mut r = rendered(rows, json);
    r.csv = Some(csv);
    Ok(r)
}

fn cmd_repro() -> Result<Rendered, Failure> {
    let checks = run_all();
    let ce = reproduce_counterexamples()?;
    let mut rows = Vec::new();
    let mut csv = String::from("check,pass,expected,observed\n");
    for c in &checks {
        rows.push(kv(&c.id, format!("{}  {}  [{}]", if c.pass { "PASS" } else { "FAIL" }, c.observed, c.expected)));
        csv.push_str(&format!(
            "{},{},{},{}\n",
            crate::classify::csv_field(&c.id),
            c.pass,
            crate::classify::csv_field(&c.expected),
            crate::classify::csv_field(&c.observed)
        ));
    }
    for row in &ce {
        rows.push(kv(&row.quantity, format!("{}  {} vs {}", if row.pass { "PASS" } else { "FAIL" }, sig12(row.computed), sig12(row.closed_form))));
    }
    csv.push('\n');
    csv.push_str(&counterexamples_csv(&ce));
    let all = checks.iter().all(|c| c.pass) && ce.iter().all(|r| r.pass);
    rows.push(kv("overall", if all { "PASS" } else { "FAIL" }));
    let mut r = rendered(rows, json!({ "checks": checks, "counterexamples": ce, "pass": all }));
    r.csv = Some(csv);
    if !all {
        r.code = EXIT_NUMERIC;
    }
    Ok(r)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    macro_rules! with_space {
        ($name:expr, $args:expr, $common:expr, $f:expr) => {{
            let space = load_space(&$common.space)?;
            let config = config_of($name, $args, Some(&space));
            let r = $f($args, &space)?;
            write_output($common.format, $common.output.as_deref(), config, r, out)
        }};
    }
    match &cli.command {
        Command::Angle(a) => with_space!("angle", a, a.pair.common, cmd_angle),
        Command::Product(a) => with_space!("product", a, a.common, cmd_product),
        Command::Csb(a) => with_space!("csb", a, a.common, cmd_csb),
        Command::Upsilon(a) => with_space!("upsilon", a, a.common, cmd_upsilon),
        Command::Classify(a) => with_space!("classify", a, a.common, cmd_classify),
        Command::Corners(a) => with_space!("corners", a, a.common, cmd_corners),
        Command::Curvature(a) => with_space!("curvature", a, a.common, cmd_curvature),
        Command::Axioms(a) => with_space!("axioms", a, a.common, cmd_axioms),
        Command::SphereExport(a) => with_space!("sphere-export", a, a.common, cmd_sphere),
        Command::Sweep(a) => {
            let config = config_of("sweep", a, None);
            let r = cmd_sweep(a)?;
            write_output(a.out.format, a.out.output.as_deref(), config, r, out)
        }
        Command::Repro(a) => {
            let config = config_of("repro", a, None);
            let r = cmd_repro()?;
            write_output(a.out.format, a.out.output.as_deref(), config, r, out)
        }
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let threads = std::env::var("BWANGLE_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|n| *n > 0);
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let mut buf = Vec::new();
                let r = pool.install(|| dispatch(cli, &mut buf));
                out.write_all(&buf).map(|_| ()).map_err(|e| Failure { code: EXIT_NUMERIC, message: e.to_string() }).and(r)
            }
            Err(e) => Err(Failure { code: EXIT_NUMERIC, message: format!("cannot start thread pool: {e}") }),
        },
        None => dispatch(cli, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs with the process's stdout and stderr.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let argv: Vec<String> = std::iter::once("bwangle").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn taxicab_angle() {
        let (code, out) = call(&["angle", "--space", r#"{"family":"hoelder","p":1}"#, "--x", "1,0", "--y", "1,1", "--rho", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("0.722734247813"), "{out}");
        assert!(out.starts_with("# config: "));
    }

    #[test]
    fn undefined_angle_exit() {
        let (code, out) =
            call(&["angle", "--space", r#"{"family":"hexagon","r":3}"#, "--x", "1,3", "--y", "-1,3", "--rho", "-0.5"]);
        assert_eq!(code, EXIT_UNDEFINED);
        assert!(out.contains("2.52982212813"), "{out}");
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(call(&["angle", "--space", "{", "--x", "1,0", "--y", "1,1", "--rho", "0"]).0, EXIT_INVALID);
        assert_eq!(call(&["angle", "--space", r#"{"family":"hoelder","p":1}"#, "--x", "1", "--y", "1,1", "--rho", "0"]).0, EXIT_INVALID);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn json_echoes_space() {
        let (code, out) = call(&["product", "--space", r#"{"family":"hexagon","r":2}"#, "--x", "1,2", "--y", "-1,2", "--rho", "0", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["product"], 3.0);
        let back = SpaceDescriptor::from_value(&v["config"]["args"]["space"]).unwrap();
        assert_eq!(back, SpaceDescriptor::hexagon(2.0).unwrap());
    }

    #[test]
    fn deterministic_output() {
        let args = ["csb", "--space", r#"{"family":"hoelder","p":1}"#, "--rho", "1.2", "--resolution", "128"];
        assert_eq!(call(&args), call(&args));
    }
}
