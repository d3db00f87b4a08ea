//! `delsarte`: extremal constants, theorem suites, radial tables and the
//! trinomial construction from the command line.
//!
//! Output is JSON on stdout (tables can be switched to CSV). Exit codes:
//! 0 success, 1 usage or input error, 2 verification failure, 3 solver or
//! quadrature failure.

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use delsarte::density::{self, Interval, PeriodicSet};
use delsarte::extremal::{self, VERIFY_TOL};
use delsarte::radial::{self, Quadrature, RadialSpec};
use delsarte::suites::{self, FuzzConfig, Suite};
use delsarte::{lp, posdef, trinomial, Error};

const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_)
            | Error::Domain(_)
            | Error::NotAStrictTiling
            | Error::ConditionViolated(_) => 1,
            Error::Construction(_) => 2,
            Error::SolverFailure(_)
            | Error::Quadrature(_)
            | Error::SingularPoint(_)
            | Error::Internal(_) => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command printed and whether its verification passed.
struct Outcome {
    text: String,
    pass: bool,
}

#[derive(Parser)]
#[command(name = "delsarte", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// C(Omega+, Omega-), T(Omega) or D(Omega+) on a finite abelian group.
    Constant(ConstantArgs),
    /// Run a randomized theorem-verification suite.
    Verify(VerifyArgs),
    /// Tables of the radial functions.
    Radial(RadialArgs),
    #[command(subcommand)]
    Trinomial(TrinomialCmd),
    #[command(subcommand)]
    Density(DensityCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    TwoSet,
    Turan,
    Delsarte,
}

#[derive(Args)]
struct ConstantArgs {
    /// Group as JSON, e.g. '{"orders":[6],"normalization":"probability"}'.
    #[arg(long)]
    group: String,
    #[arg(long, allow_hyphen_values = true)]
    omega_plus: String,
    /// Required for `two-set`; ignored otherwise.
    #[arg(long, allow_hyphen_values = true)]
    omega_minus: Option<String>,
    #[arg(long, value_enum, default_value = "two-set")]
    kind: Kind,
}

#[derive(Args)]
struct VerifyArgs {
    /// tile, main, hom, product, auto, density or bounds.
    suite: String,
    #[arg(long, default_value_t = 50)]
    fuzz: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 40)]
    max_n: usize,
    /// Omit the per-case list.
    #[arg(long)]
    summary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RadialKind {
    Yudin,
    Hankel,
    #[value(name = "gorbachev-H", alias = "gorbachev-h")]
    GorbachevH,
    BallTransform,
}

#[derive(Args)]
struct RadialArgs {
    #[arg(value_enum)]
    kind: RadialKind,
    #[arg(long, short)]
    d: usize,
    #[arg(long)]
    start: Option<f64>,
    #[arg(long)]
    stop: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    panel_width: Option<f64>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum TrinomialCmd {
    /// Maximize 1 + a + b over the critical family.
    Optimize,
    /// The lower bound D(Q) > 2 and its comparison with W = (-2, 2).
    Example51 {
        /// Print the Phi table as CSV instead of the JSON report.
        #[arg(long)]
        csv: bool,
        /// Also write the Phi table as CSV to this file.
        #[arg(long)]
        phi_csv: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand)]
enum DensityCmd {
    /// Densest periodic integer set whose differences avoid the forbidden set.
    Search {
        /// Positive forbidden differences, e.g. '[1,3,4,5]'.
        #[arg(long, conflicts_with = "intervals")]
        forbidden: Option<String>,
        /// Forbidden intervals, e.g. '[{"lo":-2,"hi":2}]'.
        #[arg(long)]
        intervals: Option<String>,
        #[arg(long, default_value_t = density::MAX_SEARCH_PERIOD)]
        max_period: u64,
    },
    /// Asymptotic uniform upper density of a periodic or finite-group set.
    Auud {
        #[arg(long, requires = "residues", conflicts_with = "group")]
        period: Option<u64>,
        #[arg(long)]
        residues: Option<String>,
        #[arg(long, requires = "lambda")]
        group: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
}

fn envelope(seed: Option<u64>, tolerances: Value, warnings: Vec<String>, body: Value) -> Value {
    let mut out = Map::new();
    let mut warnings: Vec<Value> = warnings.into_iter().map(Value::from).collect();
    match body {
        Value::Object(map) => {
            for (k, v) in map {
                match (k.as_str(), v) {
                    ("warnings", Value::Array(w)) => warnings.extend(w),
                    (_, v) => {
                        out.insert(k, v);
                    }
                }
            }
        }
        other => {
            out.insert("result".into(), other);
        }
    }
    out.insert("artifact_version".into(), ARTIFACT_VERSION.into());
    out.insert("seed".into(), seed.map_or(Value::Null, Value::from));
    out.insert("tolerances".into(), tolerances);
    out.insert("warnings".into(), Value::Array(warnings));
    Value::Object(out)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError {
        code: 3,
        message: format!("serialization failed: {e}"),
    })
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn lp_tolerances() -> Value {
    json!({
        "lp_pivot": lp::PIVOT_TOL,
        "posdef": posdef::DEFAULT_TOL,
        "verify": VERIFY_TOL,
    })
}

fn constant(a: &ConstantArgs) -> Result<Outcome, CliError> {
    let g = input::parse_group(&a.group)?;
    let plus = input::parse_set("--omega-plus", &a.omega_plus, &g)?;
    let (result, minus) = match a.kind {
        Kind::TwoSet => {
            let text = a
                .omega_minus
                .as_deref()
                .ok_or_else(|| CliError::usage("--omega-minus is required for two-set"))?;
            let minus = input::parse_set("--omega-minus", text, &g)?;
            (extremal::two_set_constant(&g, &plus, &minus)?, minus)
        }
        Kind::Turan => (extremal::turan(&g, &plus)?, plus.clone()),
        Kind::Delsarte => (
            extremal::delsarte(&g, &plus)?,
            delsarte::group::Subset::full(&g),
        ),
    };
    let mut body = to_value(&result)?;
    body["kind"] = match a.kind {
        Kind::TwoSet => "two-set",
        Kind::Turan => "turan",
        Kind::Delsarte => "delsarte",
    }
    .into();
    body["group"] = to_value(&g)?;
    body["omega_plus"] = input::set_to_json(&plus);
    body["omega_minus"] = input::set_to_json(&minus);
    let out = envelope(None, lp_tolerances(), Vec::new(), body);
    Ok(Outcome {
        text: render(&out),
        pass: true,
    })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let suite: Suite = a.suite.parse()?;
    let cfg = FuzzConfig {
        instances: a.fuzz,
        seed: a.seed,
        max_n: a.max_n,
    };
    let mut report = suites::run_suite(suite, &cfg)?;
    if a.summary {
        report.cases.clear();
    }
    let pass = report.pass;
    let out = envelope(
        Some(a.seed),
        lp_tolerances(),
        Vec::new(),
        to_value(&report)?,
    );
    Ok(Outcome {
        text: render(&out),
        pass,
    })
}

fn radial_cmd(a: &RadialArgs) -> Result<Outcome, CliError> {
    let (start, stop, step, columns) = match a.kind {
        RadialKind::Yudin => (0.0, 30.0, 0.1, ["t", "y"]),
        RadialKind::Hankel => (0.0, 3.0, 0.05, ["s", "y_hat"]),
        RadialKind::GorbachevH => (0.0, 50.0, 0.5, ["t", "H"]),
        RadialKind::BallTransform => (0.0, 20.0, 0.1, ["x", "ball_hat"]),
    };
    let mut quad = Quadrature::default();
    if let Some(v) = a.t_max {
        quad.t_max = v;
    }
    if let Some(v) = a.panel_width {
        quad.panel_width = v;
    }
    if let Some(v) = a.order {
        quad.order = v;
    }
    if let Some(v) = a.tol {
        quad.tol = v;
    }
    let grid = radial::uniform_grid(
        a.start.unwrap_or(start),
        a.stop.unwrap_or(stop),
        a.step.unwrap_or(step),
    )?;
    let spec = RadialSpec::new(a.d, grid, quad)?;
    let (name, rows) = match a.kind {
        RadialKind::Yudin => ("yudin", radial::yudin_table(&spec)?),
        RadialKind::Hankel => ("hankel", radial::yudin_hat_table(&spec)?),
        RadialKind::GorbachevH => ("gorbachev-H", radial::gorbachev_table(&spec)?),
        RadialKind::BallTransform => ("ball-transform", radial::ball_table(&spec)?),
    };
    if a.csv {
        let mut text = format!("{},{}\n", columns[0], columns[1]);
        for [x, y] in rows {
            text.push_str(&format!("{x},{y}\n"));
        }
        return Ok(Outcome { text, pass: true });
    }
    let body = json!({
        "kind": name,
        "d": a.d,
        "columns": columns,
        "rows": rows,
    });
    let tolerances = json!({
        "quadrature_order": quad.order,
        "t_max": quad.t_max,
        "panel_width": quad.panel_width,
        "refinement": quad.tol,
    });
    Ok(Outcome {
        text: render(&envelope(None, tolerances, Vec::new(), body)),
        pass: true,
    })
}

fn trinomial_tolerances() -> Value {
    json!({
        "nonneg": trinomial::NONNEG_TOL,
        "golden_section": 1e-10,
        "verify": VERIFY_TOL,
    })
}

fn phi_csv(tri: &trinomial::Trinomial) -> String {
    let mut text = String::from("x,phi\n");
    for [x, y] in trinomial::phi_table(tri) {
        text.push_str(&format!("{x},{y}\n"));
    }
    text
}

fn trinomial_cmd(cmd: &TrinomialCmd) -> Result<Outcome, CliError> {
    match cmd {
        TrinomialCmd::Optimize => {
            let opt = trinomial::optimize_trinomial()?;
            let mut body = to_value(&opt)?;
            body["z"] = opt.z_star.into();
            Ok(Outcome {
                text: render(&envelope(None, trinomial_tolerances(), Vec::new(), body)),
                pass: opt.nonneg.pass,
            })
        }
        TrinomialCmd::Example51 { csv, phi_csv: path } => {
            let bound = trinomial::example51_lower_bound()?;
            let table = phi_csv(&bound.trinomial);
            if let Some(p) = path {
                std::fs::write(p, &table)
                    .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display())))?;
            }
            let cmp = trinomial::example51_comparison()?;
            let pass = cmp.pass && bound.checks.iter().all(|c| c.pass);
            if *csv {
                return Ok(Outcome { text: table, pass });
            }
            let body = json!({
                "lower_bound": to_value(&bound)?,
                "comparison": to_value(&cmp)?,
                "pass": pass,
            });
            Ok(Outcome {
                text: render(&envelope(None, trinomial_tolerances(), Vec::new(), body)),
                pass,
            })
        }
    }
}

fn density_cmd(cmd: &DensityCmd) -> Result<Outcome, CliError> {
    let tolerances = json!({ "exact": true });
    match cmd {
        DensityCmd::Search {
            forbidden,
            intervals,
            max_period,
        } => {
            let forbidden: Vec<u64> = match (forbidden, intervals) {
                (Some(f), _) => input::parse_json("--forbidden", f)?,
                (None, Some(iv)) => {
                    let iv: Vec<Interval> = input::parse_json("--intervals", iv)?;
                    density::integer_shadow(&iv)?
                }
                (None, None) => {
                    return Err(CliError::usage(
                        "one of --forbidden or --intervals is required",
                    ))
                }
            };
            let found = density::max_density_search(&forbidden, *max_period)?;
            let mut body = to_value(&found)?;
            body["density_value"] =
                (*found.density.numer() as f64 / *found.density.denom() as f64).into();
            body["forbidden"] = to_value(&forbidden)?;
            Ok(Outcome {
                text: render(&envelope(None, tolerances, Vec::new(), body)),
                pass: true,
            })
        }
        DensityCmd::Auud {
            period,
            residues,
            group,
            lambda,
        } => {
            let (d, setting) = match (period, residues, group, lambda) {
                (Some(p), Some(r), _, _) => {
                    let r: Vec<u64> = input::parse_json("--residues", r)?;
                    (
                        density::auud_periodic(&PeriodicSet::new(*p, r)?),
                        "periodic",
                    )
                }
                (None, None, Some(g), Some(l)) => {
                    let g = input::parse_group(g)?;
                    let l = input::parse_set("--lambda", l, &g)?;
                    (density::auud_finite(&g, &l)?, "finite")
                }
                _ => {
                    return Err(CliError::usage(
                        "give either --period with --residues or --group with --lambda",
                    ))
                }
            };
            let body = json!({
                "setting": setting,
                "density": to_value(&d)?,
                "density_value": *d.numer() as f64 / *d.denom() as f64,
            });
            Ok(Outcome {
                text: render(&envelope(None, tolerances, Vec::new(), body)),
                pass: true,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Constant(a) => constant(a),
        Command::Verify(a) => verify(a),
        Command::Radial(a) => radial_cmd(a),
        Command::Trinomial(c) => trinomial_cmd(c),
        Command::Density(c) => density_cmd(c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.pass { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
