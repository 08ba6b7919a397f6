//! `expsum`: command-line front end for the kernel-family library.
//!
//! Six verbs: `eval` (one function at one point), `verify` (named check
//! suites), `sweep` (randomized inequality search), `roots` (inflection
//! census or ratio-minimum location), `limits` (boundary limits and
//! suprema), `plotdata` (grid evaluation for plotting).
//!
//! Exit codes: 0 all checks passed / evaluation succeeded, 1 at least
//! one property violation was found (a report is still emitted),
//! 2 usage or input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use expsum_core::gammaratio::{
    conjecture_eval, find_min_f, ln_f, ln_f_deriv, ln_g, ln_q_ratio_with, lnf_d1_sup,
    lnf_d1_zero_limit, p_deriv, p_eval, p_zero_limit, stirling_theta, BinomSpec, Bound,
    ConjectureSpec, MultinomSpec, RatioSpec,
};
use expsum_core::hfamily::{
    aux_h1_h2, extremum_point, h_alpha, h_alpha_derivs, inflection_points, log_h_alpha_d1,
    log_h_alpha_d2, logconc_h, series_d, Regime,
};
use expsum_core::ineq::{
    margin_matrix, margin_sum_split, margin_tensor_1to2, margin_tensor_2to1, sweep, IneqId,
    LambdaMatrix, LambdaTensor, Margin, SweepConfig, SweepReport,
};
use expsum_core::monocheck::{CheckReport, GridSpec};
use expsum_core::specfun::{ln_gamma, polygamma, q_ln_gamma, recip_expm1, Accuracy, QParam};
use expsum_core::suites::{run_suite, SuiteParams, SUITE_NAMES};
use expsum_core::Error;

const AFTER_HELP: &str = "Environment:
  EXPSUM_GRID_LO, EXPSUM_GRID_HI   override the default grid bounds used
                                   when --lo/--hi are not given (roots,
                                   plotdata); explicit flags win.";

/// Function names `eval` accepts, sorted; kept next to the dispatch so
/// the rejection message and the implementation cannot drift apart.
const EVAL_FNS: [&str; 26] = [
    "aux_h1",
    "aux_h2",
    "conjecture",
    "digamma",
    "h_alpha",
    "h_alpha_d1",
    "h_alpha_d2",
    "ln_f",
    "ln_f_deriv",
    "ln_g",
    "ln_gamma",
    "ln_q_ratio",
    "log_h_d1",
    "log_h_d2",
    "logconc_h",
    "margin_matrix",
    "margin_sum_split",
    "margin_tensor_1to2",
    "margin_tensor_2to1",
    "p",
    "p_deriv",
    "polygamma",
    "q_ln_gamma",
    "recip_expm1",
    "series_d",
    "stirling_theta",
];

/// Function names `plotdata` accepts (single scalar abscissa).
const PLOT_FNS: [&str; 13] = [
    "aux",
    "digamma",
    "h_alpha",
    "ln_gamma",
    "log_h_d1",
    "log_h_d2",
    "logconc_h",
    "polygamma",
    "q_ln_gamma",
    "recip_expm1",
    "series_d",
    "stirling_theta",
    "trigamma",
];

#[derive(Parser)]
#[command(
    name = "expsum",
    version,
    about = "Evaluate, verify, and explore the Bernoulli-kernel function family, \
             its exponential-sum inequalities, and the gamma-ratio monotonicity data",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one registered function at one point
    Eval(EvalArgs),
    /// Run a named verification suite (or all of them)
    Verify(VerifyArgs),
    /// Randomized seeded search for inequality violations
    Sweep(SweepArgs),
    /// Inflection census for the family, or the ratio minimum with --input
    Roots(RootsArgs),
    /// Boundary limits: family tails, or ratio zero-limits and suprema
    Limits(LimitsArgs),
    /// Evaluate a function over a grid and emit plottable rows
    Plotdata(PlotArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingArg {
    Log,
    Linear,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct GridArgs {
    /// Lower grid bound (default per verb; see EXPSUM_GRID_LO)
    #[arg(long)]
    lo: Option<f64>,
    /// Upper grid bound (default per verb; see EXPSUM_GRID_HI)
    #[arg(long)]
    hi: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    points: Option<usize>,
    /// Grid spacing
    #[arg(long, value_enum, default_value_t = SpacingArg::Log)]
    spacing: SpacingArg,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    /// Registered function name
    #[arg(long = "fn", value_name = "NAME")]
    func: String,
    /// Family exponent, where the function takes one
    #[arg(long)]
    alpha: Option<f64>,
    /// Evaluation point
    #[arg(long)]
    t: Option<f64>,
    /// Derivative order (polygamma, ln_f_deriv, p_deriv, conjecture)
    /// or term count (series_d)
    #[arg(long)]
    order: Option<u32>,
    /// Base q for q-deformed functions
    #[arg(long)]
    q: Option<f64>,
    /// Entrywise factor rho (margin_matrix)
    #[arg(long)]
    rho: Option<f64>,
    /// JSON spec file: weight array/matrix/tensor or ratio/conjecture spec
    #[arg(long)]
    input: Option<PathBuf>,
    /// Term cap for q-series evaluation
    #[arg(long)]
    series_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    output: OutputFormat,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// Suite name, or "all"
    #[arg(long)]
    suite: String,
    /// Restrict alpha-parameterized checks to this alpha
    #[arg(long)]
    alpha: Option<f64>,
    /// Seed for the randomized portions of suites
    #[arg(long, default_value_t = 17)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    output: OutputFormat,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// Inequality id: sum_split, matrix, tensor_2to1, tensor_1to2
    #[arg(long)]
    ineq: String,
    /// First tensor dimension (tensors only)
    #[arg(long, default_value_t = 2)]
    l: usize,
    /// Row count (matrix/tensor)
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Column count (all inequalities)
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    alpha: f64,
    /// Entrywise factor (matrix inequality only)
    #[arg(long, default_value_t = 2.0)]
    rho: f64,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Log-uniform weight sampling range
    #[arg(long, default_value_t = 1e-2)]
    lambda_lo: f64,
    #[arg(long, default_value_t = 1e2)]
    lambda_hi: f64,
    /// Log-uniform x sampling range
    #[arg(long, default_value_t = 1e-2)]
    x_lo: f64,
    #[arg(long, default_value_t = 1e2)]
    x_hi: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RootsArgs {
    /// Family exponent (inflection-census mode)
    #[arg(long)]
    alpha: Option<f64>,
    /// Ratio spec JSON file (minimum-location mode)
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    output: OutputFormat,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct LimitsArgs {
    /// Family exponent (family mode)
    #[arg(long)]
    alpha: Option<f64>,
    /// Ratio spec JSON file (ratio mode)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    output: OutputFormat,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct PlotArgs {
    /// Registered function name
    #[arg(long = "fn", value_name = "NAME")]
    func: String,
    /// Family exponent, where the function takes one
    #[arg(long)]
    alpha: Option<f64>,
    /// Derivative order (polygamma) or term count (series_d)
    #[arg(long)]
    order: Option<u32>,
    /// Base q for q-deformed functions
    #[arg(long)]
    q: Option<f64>,
    /// Term cap for q-series evaluation
    #[arg(long)]
    series_cap: Option<usize>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,
}

fn main() -> ExitCode {
    // dying quietly on a closed pipe is the expected behavior for a tool
    // whose output is routinely piped into head/grep
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether a property violation was found (exit 1).
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Eval(args) => cmd_eval(&args).map(|()| false),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Sweep(args) => cmd_sweep(&args),
        Cmd::Roots(args) => cmd_roots(&args),
        Cmd::Limits(args) => cmd_limits(&args).map(|()| false),
        Cmd::Plotdata(args) => cmd_plotdata(&args).map(|()| false),
    }
}

/// 17 significant digits; round-trips every f64 bit-exactly.
fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn env_f64(name: &str) -> Result<Option<f64>> {
    match std::env::var(name) {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .map(Some)
            .with_context(|| format!("{name} must parse as a float, got {s:?}")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(anyhow!("{name}: {e}")),
    }
}

fn resolve_grid(args: &GridArgs, def_lo: f64, def_hi: f64, def_points: usize) -> Result<GridSpec> {
    let lo = match args.lo {
        Some(v) => v,
        None => env_f64("EXPSUM_GRID_LO")?.unwrap_or(def_lo),
    };
    let hi = match args.hi {
        Some(v) => v,
        None => env_f64("EXPSUM_GRID_HI")?.unwrap_or(def_hi),
    };
    let points = args.points.unwrap_or(def_points);
    let grid = match args.spacing {
        SpacingArg::Log => GridSpec::log(lo, hi, points)?,
        SpacingArg::Linear => GridSpec::linear(lo, hi, points)?,
    };
    Ok(grid)
}

/// Parses a JSON spec file, naming the offending field on failure.
fn read_spec<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read spec file {}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        anyhow!(
            "{}: field `{}`: {}",
            path.display(),
            e.path(),
            e.inner()
        )
    })
}

fn need(opt: Option<f64>, flag: &str, func: &str) -> Result<f64> {
    opt.ok_or_else(|| anyhow!("--fn {func} requires {flag}"))
}

fn need_input<'a>(opt: &'a Option<PathBuf>, func: &str) -> Result<&'a Path> {
    opt.as_deref()
        .ok_or_else(|| anyhow!("--fn {func} requires --input <file.json>"))
}

fn accuracy(series_cap: Option<usize>) -> Accuracy {
    match series_cap {
        Some(cap) => Accuracy {
            series_cap: cap,
            ..Accuracy::default()
        },
        None => Accuracy::default(),
    }
}

#[derive(Serialize)]
struct EvalReport {
    function: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<&'static str, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<Margin>,
}

fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let func = args.func.as_str();
    if !EVAL_FNS.contains(&func) {
        bail!(
            "unknown function {func:?}; eval accepts: {}",
            EVAL_FNS.join(", ")
        );
    }

    let mut params = BTreeMap::new();
    let mut detail = None;
    let alpha = || need(args.alpha, "--alpha", func);
    let t = || need(args.t, "--t", func);
    let order = args.order;

    let value = match func {
        "h_alpha" => h_alpha(alpha()?, t()?)?,
        "h_alpha_d1" => h_alpha_derivs(alpha()?, t()?)?.0,
        "h_alpha_d2" => h_alpha_derivs(alpha()?, t()?)?.1,
        "log_h_d1" => log_h_alpha_d1(alpha()?, t()?)?,
        "log_h_d2" => log_h_alpha_d2(alpha()?, t()?)?,
        "logconc_h" => logconc_h(t()?)?,
        "aux_h1" => aux_h1_h2(t()?)?.0,
        "aux_h2" => aux_h1_h2(t()?)?.1,
        "series_d" => series_d(t()?, order.unwrap_or(30) as usize)?,
        "stirling_theta" => stirling_theta(t()?)?,
        "recip_expm1" => recip_expm1(t()?)?,
        "ln_gamma" => ln_gamma(t()?)?,
        "digamma" => polygamma(0, t()?)?,
        "trigamma" => polygamma(1, t()?)?,
        "polygamma" => {
            let n = order.ok_or_else(|| anyhow!("--fn polygamma requires --order"))?;
            polygamma(n, t()?)?
        }
        "q_ln_gamma" => {
            let q = QParam::new(need(args.q, "--q", func)?)?;
            q_ln_gamma(q, t()?, &accuracy(args.series_cap))?
        }
        "ln_f" => {
            let spec: RatioSpec = read_spec(need_input(&args.input, func)?)?;
            ln_f(t()?, &spec)?
        }
        "ln_f_deriv" => {
            let spec: RatioSpec = read_spec(need_input(&args.input, func)?)?;
            ln_f_deriv(t()?, &spec, order.unwrap_or(1))?
        }
        "p" => {
            let spec: RatioSpec = read_spec(need_input(&args.input, func)?)?;
            p_eval(t()?, &spec)?
        }
        "p_deriv" => {
            let spec: RatioSpec = read_spec(need_input(&args.input, func)?)?;
            p_deriv(t()?, &spec, order.unwrap_or(0))?
        }
        "ln_g" => {
            let spec: BinomSpec = read_spec(need_input(&args.input, func)?)?;
            ln_g(t()?, &spec)?
        }
        "ln_q_ratio" => {
            let spec: MultinomSpec = read_spec(need_input(&args.input, func)?)?;
            ln_q_ratio_with(t()?, &spec, &accuracy(args.series_cap))?
        }
        "conjecture" => {
            let spec: ConjectureSpec = read_spec(need_input(&args.input, func)?)?;
            conjecture_eval(t()?, &spec, order.unwrap_or(0))?
        }
        "margin_sum_split" => {
            let lambdas: Vec<f64> = read_spec(need_input(&args.input, func)?)?;
            let m = margin_sum_split(t()?, &lambdas, alpha()?)?;
            detail = Some(m);
            m.margin
        }
        "margin_matrix" => {
            let lm: LambdaMatrix = read_spec(need_input(&args.input, func)?)?;
            lm.validate()?;
            let rho = need(args.rho, "--rho", func)?;
            let m = margin_matrix(t()?, &lm, alpha()?, rho)?;
            detail = Some(m);
            m.margin
        }
        "margin_tensor_2to1" | "margin_tensor_1to2" => {
            let lt: LambdaTensor = read_spec(need_input(&args.input, func)?)?;
            lt.validate()?;
            let m = if func == "margin_tensor_2to1" {
                margin_tensor_2to1(t()?, &lt, alpha()?)?
            } else {
                margin_tensor_1to2(t()?, &lt, alpha()?)?
            };
            detail = Some(m);
            m.margin
        }
        _ => unreachable!("name checked against EVAL_FNS"),
    };

    for (name, v) in [
        ("alpha", args.alpha),
        ("t", args.t),
        ("q", args.q),
        ("rho", args.rho),
    ] {
        if let Some(v) = v {
            params.insert(name, v);
        }
    }
    if let Some(k) = args.order {
        params.insert("order", f64::from(k));
    }

    match args.output {
        OutputFormat::Human => println!("{value}"),
        OutputFormat::Csv => println!("value\n{}", sig17(value)),
        OutputFormat::Json => print_json(&EvalReport {
            function: func.to_string(),
            params,
            input: args.input.as_ref().map(|p| p.display().to_string()),
            value,
            detail,
        })?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    suite: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    seed: u64,
    reports: Vec<CheckReport>,
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let params = SuiteParams {
        alpha: args.alpha,
        seed: args.seed,
    };
    let names: Vec<&str> = if args.suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };

    let mut suites = Vec::new();
    for name in names {
        let reports = run_suite(name, &params)?;
        suites.push(SuiteReport {
            suite: name,
            alpha: args.alpha,
            seed: args.seed,
            reports,
        });
    }
    let failed: usize = suites
        .iter()
        .flat_map(|s| &s.reports)
        .filter(|r| !r.passed)
        .count();

    match args.output {
        OutputFormat::Json => {
            if args.suite == "all" {
                print_json(&suites)?;
            } else {
                print_json(&suites[0])?;
            }
        }
        OutputFormat::Csv => {
            println!("suite,property_id,passed,checked_points,witnesses");
            for s in &suites {
                for r in &s.reports {
                    println!(
                        "{},{},{},{},{}",
                        s.suite,
                        r.property_id,
                        r.passed,
                        r.checked_points,
                        r.witnesses.len()
                    );
                }
            }
        }
        OutputFormat::Human => {
            for s in &suites {
                println!("suite {} (seed {})", s.suite, s.seed);
                for r in &s.reports {
                    if r.passed {
                        println!("  pass {} ({} points)", r.property_id, r.checked_points);
                    } else {
                        println!(
                            "  FAIL {} ({} points, {} witnesses)",
                            r.property_id,
                            r.checked_points,
                            r.witnesses.len()
                        );
                        for w in r.witnesses.iter().take(3) {
                            println!(
                                "    at = {}  observed = {}  allowed = {}",
                                w.abscissa, w.observed, w.threshold
                            );
                        }
                    }
                }
            }
            let total: usize = suites.iter().map(|s| s.reports.len()).sum();
            if failed == 0 {
                println!("all {total} checks passed");
            } else {
                println!("{failed} of {total} checks FAILED");
            }
        }
    }
    Ok(failed > 0)
}

#[derive(Serialize)]
struct SweepEnvelope<'a> {
    config: &'a SweepConfig,
    report: &'a SweepReport,
}

fn cmd_sweep(args: &SweepArgs) -> Result<bool> {
    let ineq_id: IneqId = args.ineq.parse()?;
    let config = SweepConfig {
        ineq_id,
        dims: (args.l, args.m, args.n),
        samples: args.samples,
        seed: args.seed,
        alpha: args.alpha,
        rho: args.rho,
        lambda_range: (args.lambda_lo, args.lambda_hi),
        x_range: (args.x_lo, args.x_hi),
    };
    let report = sweep(&config)?;
    let violated = !report.violations.is_empty();

    match args.output {
        OutputFormat::Json => print_json(&SweepEnvelope {
            config: &config,
            report: &report,
        })?,
        OutputFormat::Csv => {
            println!("sample_index,x,margin,relative_margin,lambdas");
            for v in &report.violations {
                let lambdas: Vec<String> = v.lambdas.iter().map(|&l| sig17(l)).collect();
                println!(
                    "{},{},{},{},{}",
                    v.sample_index,
                    sig17(v.x),
                    sig17(v.margin.margin),
                    sig17(v.margin.relative_margin),
                    lambdas.join(";")
                );
            }
        }
        OutputFormat::Human => {
            // show only the parameters this inequality reads
            let shape = match ineq_id {
                IneqId::SumSplit => format!("n {}", args.n),
                IneqId::Matrix => format!("dims {}x{} rho {}", args.m, args.n, config.rho),
                IneqId::Tensor2to1 | IneqId::Tensor1to2 => {
                    format!("dims {}x{}x{}", args.l, args.m, args.n)
                }
            };
            println!(
                "sweep {} {} alpha {}: {} samples, {} violations, \
                 min relative margin {}",
                config.ineq_id,
                shape,
                config.alpha,
                report.samples_run,
                report.violations.len(),
                report.min_relative_margin
            );
            for v in report.violations.iter().take(10) {
                println!(
                    "  sample {}: x = {}  margin = {}  relative = {}",
                    v.sample_index, v.x, v.margin.margin, v.margin.relative_margin
                );
            }
            if report.violations.len() > 10 {
                println!("  ... {} more", report.violations.len() - 10);
            }
        }
    }
    Ok(violated)
}

#[derive(Serialize)]
struct RootsReport {
    alpha: f64,
    regime: Regime,
    roots: Vec<f64>,
    bracket_width: f64,
    extremum: Option<f64>,
}

#[derive(Serialize)]
struct MinReport {
    input: String,
    rho: f64,
    theta: f64,
    min_t: f64,
    ln_f_at_min: f64,
}

fn cmd_roots(args: &RootsArgs) -> Result<bool> {
    match (&args.alpha, &args.input) {
        (Some(_), Some(_)) => bail!("roots takes either --alpha or --input, not both"),
        (None, None) => bail!("roots requires --alpha (family mode) or --input (ratio mode)"),
        (Some(alpha), None) => {
            let alpha = *alpha;
            let grid = resolve_grid(&args.grid, 1e-3, 1e3, 1200)?;
            let census = match inflection_points(alpha, &grid) {
                Ok(c) => c,
                // a census that contradicts the shape regime is a found
                // violation, not a usage error
                Err(Error::RegimeMismatch(msg)) => {
                    println!("FAIL: {msg}");
                    return Ok(true);
                }
                Err(e) => return Err(e.into()),
            };
            let extremum = match extremum_point(alpha, &grid) {
                Ok(x) => x,
                Err(Error::RegimeMismatch(msg)) | Err(Error::NoBracket(msg)) => {
                    println!("FAIL: {msg}");
                    return Ok(true);
                }
                Err(e) => return Err(e.into()),
            };
            let report = RootsReport {
                alpha,
                regime: census.regime,
                roots: census.roots,
                bracket_width: census.bracket_width,
                extremum,
            };
            match args.output {
                OutputFormat::Json => print_json(&report)?,
                OutputFormat::Csv => {
                    println!("kind,abscissa");
                    for r in &report.roots {
                        println!("inflection,{}", sig17(*r));
                    }
                    if let Some(x) = report.extremum {
                        println!("maximum,{}", sig17(x));
                    }
                }
                OutputFormat::Human => {
                    let regime = match report.regime {
                        Regime::Convex => "convex",
                        Regime::OneInflection => "one inflection",
                        Regime::TwoInflections => "two inflections",
                    };
                    println!("alpha {}: regime {}", report.alpha, regime);
                    for r in &report.roots {
                        println!("  inflection at t = {r}");
                    }
                    if report.roots.is_empty() {
                        println!("  no inflection points");
                    } else {
                        println!("  worst bracket width = {}", report.bracket_width);
                    }
                    match report.extremum {
                        Some(x) => println!("  maximum at t = {x}"),
                        None => println!("  no interior extremum"),
                    }
                }
            }
            Ok(false)
        }
        (None, Some(path)) => {
            let spec: RatioSpec = read_spec(path)?;
            let grid = resolve_grid(&args.grid, 1e-2, 1e2, 50)?;
            let min_t = match find_min_f(&spec, &grid) {
                Ok(t) => t,
                Err(Error::NoBracket(msg)) => {
                    println!("FAIL: {msg}");
                    return Ok(true);
                }
                Err(e) => return Err(e.into()),
            };
            let report = MinReport {
                input: path.display().to_string(),
                rho: spec.rho,
                theta: spec.theta,
                min_t,
                ln_f_at_min: ln_f(min_t, &spec)?,
            };
            match args.output {
                OutputFormat::Json => print_json(&report)?,
                OutputFormat::Csv => {
                    println!("min_t,ln_f_at_min");
                    println!("{},{}", sig17(report.min_t), sig17(report.ln_f_at_min));
                }
                OutputFormat::Human => {
                    println!(
                        "minimum of the gamma-product ratio (rho {}, theta {}):",
                        report.rho, report.theta
                    );
                    println!("  t* = {}", report.min_t);
                    println!("  ln F(t*) = {}", report.ln_f_at_min);
                }
            }
            Ok(false)
        }
    }
}

#[derive(Serialize)]
struct FamilyLimits {
    alpha: f64,
    at_zero: f64,
    /// None means the family grows without bound as t -> infinity.
    at_infinity: Option<f64>,
    probe_small_t: f64,
    probe_large_t: f64,
    aux_limits: (f64, f64),
    aux_probe: (f64, f64),
}

#[derive(Serialize)]
struct RatioLimits {
    input: String,
    rho: f64,
    theta: f64,
    d1_zero_limit: f64,
    d1_probe: f64,
    p_zero_limit: f64,
    p_probe: f64,
    d1_sup: Bound,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_t: Option<f64>,
}

fn cmd_limits(args: &LimitsArgs) -> Result<()> {
    match (&args.alpha, &args.input) {
        (Some(_), Some(_)) => bail!("limits takes either --alpha or --input, not both"),
        (None, None) => bail!("limits requires --alpha (family mode) or --input (ratio mode)"),
        (Some(alpha), None) => {
            let alpha = *alpha;
            let at_infinity = if alpha > 0.0 {
                None
            } else if alpha == 0.0 {
                Some(1.0)
            } else {
                Some(0.0)
            };
            let report = FamilyLimits {
                alpha,
                at_zero: 0.0,
                at_infinity,
                probe_small_t: h_alpha(alpha, 1e-6)?,
                probe_large_t: h_alpha(alpha, 1e6)?,
                aux_limits: (3.0, 1.0),
                aux_probe: aux_h1_h2(1e-4)?,
            };
            match args.output {
                OutputFormat::Json => print_json(&report)?,
                OutputFormat::Csv => {
                    println!("quantity,value");
                    println!("at_zero,{}", sig17(report.at_zero));
                    match report.at_infinity {
                        Some(v) => println!("at_infinity,{}", sig17(v)),
                        None => println!("at_infinity,unbounded"),
                    }
                    println!("probe_small_t,{}", sig17(report.probe_small_t));
                    println!("probe_large_t,{}", sig17(report.probe_large_t));
                    println!("aux_h1_probe,{}", sig17(report.aux_probe.0));
                    println!("aux_h2_probe,{}", sig17(report.aux_probe.1));
                }
                OutputFormat::Human => {
                    println!("family limits at alpha {alpha}:");
                    println!("  t -> 0+: 0 (probe at 1e-6: {})", report.probe_small_t);
                    match report.at_infinity {
                        Some(v) => println!(
                            "  t -> infinity: {v} (probe at 1e6: {})",
                            report.probe_large_t
                        ),
                        None => println!(
                            "  t -> infinity: unbounded (probe at 1e6: {})",
                            report.probe_large_t
                        ),
                    }
                    println!(
                        "  auxiliary factors -> (3, 1) at 0+ (probe at 1e-4: ({}, {}))",
                        report.aux_probe.0, report.aux_probe.1
                    );
                }
            }
            Ok(())
        }
        (None, Some(path)) => {
            let spec: RatioSpec = read_spec(path)?;
            let min_t = if spec.rho < 2.0 || spec.theta > 0.0 {
                match find_min_f(&spec, &GridSpec::log(1e-2, 1e2, 50)?) {
                    Ok(t) => Some(t),
                    // a one-signed derivative means the minimum sits on the
                    // boundary; that is a shape fact, not an error
                    Err(Error::NoBracket(_)) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let report = RatioLimits {
                input: path.display().to_string(),
                rho: spec.rho,
                theta: spec.theta,
                d1_zero_limit: lnf_d1_zero_limit(&spec)?,
                d1_probe: ln_f_deriv(1e-9, &spec, 1)?,
                p_zero_limit: p_zero_limit(&spec)?,
                p_probe: p_eval(1e-9, &spec)?,
                d1_sup: lnf_d1_sup(&spec)?,
                min_t,
            };
            match args.output {
                OutputFormat::Json => print_json(&report)?,
                OutputFormat::Csv => {
                    println!("quantity,value");
                    println!("d1_zero_limit,{}", sig17(report.d1_zero_limit));
                    println!("d1_probe,{}", sig17(report.d1_probe));
                    println!("p_zero_limit,{}", sig17(report.p_zero_limit));
                    println!("p_probe,{}", sig17(report.p_probe));
                    match report.d1_sup {
                        Bound::Finite(v) => println!("d1_sup,{}", sig17(v)),
                        Bound::Unbounded => println!("d1_sup,unbounded"),
                    }
                    if let Some(t) = report.min_t {
                        println!("min_t,{}", sig17(t));
                    }
                }
                OutputFormat::Human => {
                    println!(
                        "gamma-product ratio limits (rho {}, theta {}):",
                        report.rho, report.theta
                    );
                    println!(
                        "  [ln F]'(0+) = {} (probe at 1e-9: {})",
                        report.d1_zero_limit, report.d1_probe
                    );
                    println!(
                        "  P(0+) = {} (probe at 1e-9: {})",
                        report.p_zero_limit, report.p_probe
                    );
                    match report.d1_sup {
                        Bound::Finite(v) => println!("  sup [ln F]' = {v}"),
                        Bound::Unbounded => println!("  sup [ln F]' = unbounded"),
                    }
                    match report.min_t {
                        Some(t) => println!("  minimum at t = {t}"),
                        None => println!("  no interior minimum located"),
                    }
                }
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct PlotReport {
    function: String,
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

fn cmd_plotdata(args: &PlotArgs) -> Result<()> {
    let func = args.func.as_str();
    if !PLOT_FNS.contains(&func) {
        bail!(
            "unknown function {func:?}; plotdata accepts: {}",
            PLOT_FNS.join(", ")
        );
    }
    let grid = resolve_grid(&args.grid, 1e-2, 1e2, 200)?;
    let alpha = || need(args.alpha, "--alpha", func);
    let acc = accuracy(args.series_cap);

    let columns: Vec<&'static str> = match func {
        "h_alpha" => vec!["t", "value", "d1", "d2"],
        "aux" => vec!["t", "h1", "h2"],
        _ => vec!["t", "value"],
    };

    let mut rows = Vec::with_capacity(grid.points);
    for t in grid.abscissas() {
        let row = match func {
            "h_alpha" => {
                let a = alpha()?;
                let (d1, d2) = h_alpha_derivs(a, t)?;
                vec![t, h_alpha(a, t)?, d1, d2]
            }
            "aux" => {
                let (h1, h2) = aux_h1_h2(t)?;
                vec![t, h1, h2]
            }
            "log_h_d1" => vec![t, log_h_alpha_d1(alpha()?, t)?],
            "log_h_d2" => vec![t, log_h_alpha_d2(alpha()?, t)?],
            "logconc_h" => vec![t, logconc_h(t)?],
            "series_d" => vec![t, series_d(t, args.order.unwrap_or(30) as usize)?],
            "stirling_theta" => vec![t, stirling_theta(t)?],
            "recip_expm1" => vec![t, recip_expm1(t)?],
            "ln_gamma" => vec![t, ln_gamma(t)?],
            "digamma" => vec![t, polygamma(0, t)?],
            "trigamma" => vec![t, polygamma(1, t)?],
            "polygamma" => {
                let n = args
                    .order
                    .ok_or_else(|| anyhow!("--fn polygamma requires --order"))?;
                vec![t, polygamma(n, t)?]
            }
            "q_ln_gamma" => {
                let q = QParam::new(need(args.q, "--q", func)?)?;
                vec![t, q_ln_gamma(q, t, &acc)?]
            }
            _ => unreachable!("name checked against PLOT_FNS"),
        };
        rows.push(row);
    }

    match args.output {
        OutputFormat::Json => print_json(&PlotReport {
            function: func.to_string(),
            columns,
            rows,
        })?,
        OutputFormat::Csv => {
            println!("{}", columns.join(","));
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|&v| sig17(v)).collect();
                println!("{}", cells.join(","));
            }
        }
        OutputFormat::Human => {
            let header: Vec<String> = columns.iter().map(|c| format!("{c:>24}")).collect();
            println!("{}", header.join(" "));
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|&v| format!("{:>24}", sig17(v))).collect();
                println!("{}", cells.join(" "));
            }
        }
    }
    Ok(())
}
