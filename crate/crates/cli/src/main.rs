mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;
use specmoment::{
    compute, correlation_reconstruct, moment_fast, plan, smoothed_spectrum, spectrum_scan, Error, MomentResult, Route,
};
use thiserror::Error;

use config::{resolve, Resolved};
use output::{full, opt_full, plain};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(Error::NoValidRoute(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Plain,
}

/// Generalized moments of spectral distributions from correlation functions.
#[derive(Debug, Parser)]
#[command(name = "specmoment", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one generalized moment.
    Moment {
        #[command(flatten)]
        common: Common,
    },
    /// Scan the smoothed spectrum (1/σ)∫f((ω−ω₀)/σ)dP(ω) over a grid of ω₀.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Grid as start:end:step.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },
    /// Reconstruct C(t) at the given times.
    Reconstruct {
        #[command(flatten)]
        common: Common,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        times: Vec<f64>,
    },
    /// Fast-path error against node count.
    Converge {
        #[command(flatten)]
        common: Common,
        /// Comma-separated node counts N+1.
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        n_list: Vec<usize>,
    },
    /// Report the route for a model and function without computing.
    Validate {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Model descriptor, e.g. `exponential`, `free_particle:beta=2,hbar=1`, `strip:tau0=1`.
    #[arg(long)]
    pub model: Option<String>,
    /// Function descriptor, e.g. `sinc:band=0.5`, or a bare kind with --band/--time/--k.
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub band: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub time: Option<f64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub rho1: Option<f64>,
    #[arg(long)]
    pub rho2: Option<f64>,
    #[arg(long)]
    pub n_nodes: Option<usize>,
    #[arg(long)]
    pub laguerre_order: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON file with the same fields; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Collected output; written once at the end.
#[derive(Default)]
struct Emit {
    out: String,
    err: String,
}

impl Emit {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn note(&mut self, s: impl AsRef<str>) {
        self.err.push_str(s.as_ref());
        self.err.push('\n');
    }

    /// The plan goes to stdout in plain mode and to stderr for CSV.
    fn plan(&mut self, format: Format, text: String) {
        match format {
            Format::Plain => self.line(format!("plan: {text}")),
            Format::Csv => self.note(format!("plan: {text}")),
            Format::Json => {}
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn result_json(r: &MomentResult) -> serde_json::Value {
    json!({
        "value_re": r.value.re,
        "value_im": r.value.im,
        "real_valued": r.real_valued,
        "route": r.route_used.route.as_str(),
        "nodes": r.nodes_used,
        "apriori_bound": r.a_priori_bound,
        "plan": r.route_used,
    })
}

fn run_moment(cfg: &Resolved, emit: &mut Emit) -> Result<(), CliError> {
    let f = cfg.require_function()?;
    let p = plan(&cfg.model, f, &cfg.opts)?;
    let r = compute(&cfg.model, f, &p)?;
    emit.plan(cfg.format, p.to_string());
    match cfg.format {
        Format::Plain => {
            emit.line(format!("value: {}", plain(r.value.re)));
            if !r.real_valued {
                emit.line(format!("imag: {}", plain(r.value.im)));
            }
            emit.line(format!("route: {}", r.route_used.route));
            emit.line(format!("nodes: {}", r.nodes_used));
            emit.line(format!("bound: {}", r.a_priori_bound.map(plain).unwrap_or_else(|| "n/a".into())));
        }
        Format::Csv => {
            emit.line("value_re,value_im,route,nodes,apriori_bound");
            emit.line(format!(
                "{},{},{},{},{}",
                full(r.value.re),
                full(r.value.im),
                r.route_used.route,
                r.nodes_used,
                opt_full(r.a_priori_bound)
            ));
        }
        Format::Json => emit.line(json_text(&result_json(&r))),
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("--grid expects start:end:step, got `{spec}`"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [a, b, step] = parts[..] else { return Err(bad()) };
    if !(step > 0.0) || !(b >= a) || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(CliError::Usage(format!("--grid has {count} points, limit is 1000000")));
    }
    Ok((0..count).map(|i| a + i as f64 * step).collect())
}

fn run_spectrum(cfg: &Resolved, grid: &str, sigma: f64, emit: &mut Emit) -> Result<(), CliError> {
    let kernel = cfg.require_function()?;
    let grid = parse_grid(grid)?;
    let scan = spectrum_scan(&cfg.model, kernel, &grid, sigma, &cfg.opts)?;
    let first_plan = match grid.first() {
        Some(&w) => Some(plan(&cfg.model, &kernel.shift_scale(w, sigma)?, &cfg.opts)),
        None => None,
    };
    if let Some(Ok(p)) = &first_plan {
        emit.plan(cfg.format, format!("omega0={}: {p}", grid[0]));
    }
    match cfg.format {
        Format::Plain => {
            emit.line("omega0 value route bound");
            for p in &scan.points {
                match (&p.value, &p.error) {
                    (Some(v), _) => emit.line(format!(
                        "{} {} {} {}",
                        plain(p.omega0),
                        plain(*v),
                        p.route.map(|r| r.as_str()).unwrap_or_default(),
                        p.bound.map(plain).unwrap_or_else(|| "n/a".into())
                    )),
                    (None, e) => emit.line(format!("{} error: {}", plain(p.omega0), e.as_deref().unwrap_or(""))),
                }
            }
        }
        Format::Csv => emit.out.push_str(&scan.to_csv()),
        Format::Json => emit.line(scan.to_json()),
    }
    if let Some(failed) = scan.points.iter().find(|p| p.error.is_some()) {
        smoothed_spectrum(&cfg.model, kernel, failed.omega0, sigma, &cfg.opts)?;
        return Err(CliError::Usage(format!(
            "omega0 = {}: {}",
            failed.omega0,
            failed.error.as_deref().unwrap_or("")
        )));
    }
    Ok(())
}

fn run_reconstruct(cfg: &Resolved, times: &[f64], emit: &mut Emit) -> Result<(), CliError> {
    let results: Vec<MomentResult> = times
        .par_iter()
        .map(|&t| correlation_reconstruct(&cfg.model, t, &cfg.opts))
        .collect::<Result<_, _>>()?;
    for (t, r) in times.iter().zip(&results) {
        emit.plan(cfg.format, format!("t={t}: {}", r.route_used));
    }
    match cfg.format {
        Format::Plain => {
            emit.line("t value_re value_im route nodes");
            for (t, r) in times.iter().zip(&results) {
                emit.line(format!(
                    "{} {} {} {} {}",
                    plain(*t),
                    plain(r.value.re),
                    plain(r.value.im),
                    r.route_used.route,
                    r.nodes_used
                ));
            }
        }
        Format::Csv => {
            emit.line("t,value_re,value_im,route,nodes");
            for (t, r) in times.iter().zip(&results) {
                emit.line(format!(
                    "{},{},{},{},{}",
                    full(*t),
                    full(r.value.re),
                    full(r.value.im),
                    r.route_used.route,
                    r.nodes_used
                ));
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = times
                .iter()
                .zip(&results)
                .map(|(t, r)| {
                    let mut v = result_json(r);
                    v["t"] = json!(t);
                    v
                })
                .collect();
            emit.line(json_text(&json!(rows)));
        }
    }
    Ok(())
}

fn run_converge(cfg: &Resolved, n_list: &[usize], emit: &mut Emit) -> Result<(), CliError> {
    let f = cfg.require_function()?;
    let p = plan(&cfg.model, f, &cfg.opts)?;
    if p.route != Route::FastPath {
        return Err(Error::NoValidRoute(format!(
            "converge studies the fast path, but this pair routes to {} ({})",
            p.route, p.justification
        ))
        .into());
    }
    if n_list.contains(&0) {
        return Err(CliError::Usage("--n-list entries must be at least 1".into()));
    }
    emit.plan(cfg.format, p.to_string());
    let max_n = n_list.iter().copied().max().unwrap_or(1);
    let n_ref = (4 * max_n).clamp(256, 4096);
    let reference = moment_fast(&cfg.model, f, &p.contour.with_nodes(n_ref))?.value;
    let rows: Vec<(usize, MomentResult, f64)> = n_list
        .iter()
        .map(|&n| {
            let r = moment_fast(&cfg.model, f, &p.contour.with_nodes(n))?;
            let e = (r.value - reference).norm();
            Ok((n, r, e))
        })
        .collect::<Result<_, CliError>>()?;
    match cfg.format {
        Format::Plain => {
            emit.line(format!("reference (N+1 = {n_ref}): {}", plain(reference.re)));
            emit.line("n_nodes value abs_error apriori_bound route");
            for (n, r, e) in &rows {
                emit.line(format!(
                    "{n} {} {} {} {}",
                    plain(r.value.re),
                    plain(*e),
                    r.a_priori_bound.map(plain).unwrap_or_else(|| "n/a".into()),
                    r.route_used.route
                ));
            }
        }
        Format::Csv => {
            emit.line("n_nodes,value,abs_error,apriori_bound,route");
            for (n, r, e) in &rows {
                emit.line(format!(
                    "{n},{},{},{},{}",
                    full(r.value.re),
                    full(*e),
                    opt_full(r.a_priori_bound),
                    r.route_used.route
                ));
            }
        }
        Format::Json => {
            let out: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, r, e)| {
                    json!({
                        "n_nodes": n,
                        "value": r.value.re,
                        "value_im": r.value.im,
                        "abs_error": e,
                        "apriori_bound": r.a_priori_bound,
                        "route": r.route_used.route.as_str(),
                    })
                })
                .collect();
            emit.line(json_text(&json!({
                "plan": p,
                "reference_nodes": n_ref,
                "reference": reference.re,
                "rows": out,
            })));
        }
    }
    Ok(())
}

fn run_validate(cfg: &Resolved, emit: &mut Emit) -> Result<(), CliError> {
    let f = cfg.require_function()?;
    let p = plan(&cfg.model, f, &cfg.opts)?;
    match cfg.format {
        Format::Json => emit.line(json_text(&json!({ "valid": true, "plan": p }))),
        Format::Csv => {
            emit.line("route,justification");
            emit.line(format!("{},\"{}\"", p.route, p.justification.replace('"', "\"\"")));
        }
        Format::Plain => {
            emit.line(format!("plan: {p}"));
            emit.line("valid");
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SPECMOMENT_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SPECMOMENT_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn dispatch(cli: Cli, emit: &mut Emit) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Moment { common } => run_moment(&resolve(&common)?, emit),
        Command::Spectrum { common, grid, sigma } => run_spectrum(&resolve(&common)?, &grid, sigma, emit),
        Command::Reconstruct { common, times } => run_reconstruct(&resolve(&common)?, &times, emit),
        Command::Converge { common, n_list } => run_converge(&resolve(&common)?, &n_list, emit),
        Command::Validate { common } => run_validate(&resolve(&common)?, emit),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut emit = Emit::default();
    let status = dispatch(cli, &mut emit);
    print!("{}", emit.out);
    eprint!("{}", emit.err);
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
