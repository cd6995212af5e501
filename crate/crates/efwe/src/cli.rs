//! Command-line front end: model fitting, family comparison, reproducible
//! sampling, and plot-ready CSV tables.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure or
//! non-convergence, 3 data error. Set `EFWE_LOG=debug` (or `info`, `error`)
//! for diagnostics on stderr.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::datasets::{aarset, load_csv, Column, Dataset};
use crate::distributions::{EfweParams, SamplePolicy};
use crate::error::Error;
use crate::inference::{fit_mle, kaplan_meier, wald_ci, Family, FitResult};

/// Parses the process arguments, runs one subcommand, and returns the exit
/// code for the process to report.
pub fn run() -> i32 {
    init_logging();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = dispatch(cli, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        // A closed pipe (e.g. piping into `head`) is a normal way for the
        // reader to stop consuming; exit quietly instead of erroring.
        Err(Failure::Lib(Error::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            lib_exit_code(&e)
        }
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter("EFWE_LOG");
    env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init()
        .ok();
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn lib_exit_code(e: &Error) -> i32 {
    match e {
        Error::EmptyData
        | Error::DegenerateData { .. }
        | Error::InsufficientData { .. }
        | Error::CsvParse { .. }
        | Error::NonPositiveValue { .. }
        | Error::ColumnNotFound { .. }
        | Error::Io(_)
        | Error::Csv(_) => 3,
        _ => 2,
    }
}

#[derive(Parser)]
#[command(
    name = "efwe",
    version,
    about = "Exponential Flexible Weibull Extension lifetime distribution toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fit one family by maximum likelihood and report the full summary.
    Fit(FitArgs),
    /// Fit several families and rank them by AIC (ties broken by BIC).
    Compare(CompareArgs),
    /// Draw reproducible samples and write them as CSV on stdout.
    Sample(SampleArgs),
    /// Tabulate a fitted curve (or a Kaplan-Meier overlay) as CSV on stdout.
    Table(TableArgs),
}

#[derive(Args)]
struct DataArgs {
    /// Use the built-in device-failure lifetime dataset (n = 50).
    #[arg(long)]
    aarset: bool,
    /// CSV file of positive lifetimes.
    #[arg(long, value_name = "PATH", conflicts_with = "aarset")]
    data: Option<PathBuf>,
    /// Column of the CSV to read: zero-based index or header name.
    #[arg(long, value_name = "COL", default_value = "0", value_parser = parse_column)]
    column: Column,
}

impl DataArgs {
    fn load(&self) -> Result<Dataset, Failure> {
        match (self.aarset, &self.data) {
            (true, _) => Ok(aarset()),
            (false, Some(path)) => Ok(load_csv(path, &self.column)?),
            (false, None) => Err(Failure::Usage(
                "provide a dataset via --aarset or --data <PATH>".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Family to fit.
    #[arg(long, value_parser = parse_family)]
    model: Family,
    /// Confidence level for the Wald intervals.
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    out: OutFormat,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Comma-separated families to fit and rank.
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    models: Vec<Family>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    out: OutFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Conditional,
    Strict,
}

#[derive(Args)]
struct SampleArgs {
    /// EFWE parameters as alpha,beta,lambda.
    #[arg(long, value_parser = parse_params3)]
    params: [f64; 3],
    /// Number of draws.
    #[arg(short = 'n', long = "n")]
    n: usize,
    /// RNG seed; identical seeds reproduce identical output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling policy for the mass at the origin.
    #[arg(long, value_enum, default_value_t = PolicyArg::Conditional)]
    policy: PolicyArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Cdf,
    Pdf,
    Hazard,
    Survival,
    KmOverlay,
}

impl What {
    fn column_name(&self) -> &'static str {
        match self {
            What::Cdf => "cdf",
            What::Pdf => "pdf",
            What::Hazard => "hazard",
            What::Survival => "survival",
            What::KmOverlay => "km_survival",
        }
    }
}

#[derive(Clone, Copy)]
struct Grid {
    lo: f64,
    hi: f64,
    steps: usize,
}

#[derive(Args)]
struct TableArgs {
    /// EFWE parameters as alpha,beta,lambda.
    #[arg(long, value_parser = parse_params3)]
    params: [f64; 3],
    /// Quantity to tabulate.
    #[arg(long, value_enum)]
    what: What,
    /// Evaluation grid as lo:hi:steps (required except for km-overlay).
    #[arg(long, value_parser = parse_grid)]
    grid: Option<Grid>,
    #[command(flatten)]
    data: DataArgs,
}

fn parse_column(s: &str) -> Result<Column, String> {
    Ok(s.parse().expect("column parsing is infallible"))
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_params3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected alpha,beta,lambda, got '{s}'"));
    }
    let mut out = [0.0f64; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("'{part}' is not a number"))?;
    }
    Ok(out)
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected lo:hi:steps, got '{s}'"));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| "lo is not a number".to_string())?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| "hi is not a number".to_string())?;
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| "steps is not an integer".to_string())?;
    if !lo.is_finite() || !hi.is_finite() || !(lo > 0.0) {
        return Err("grid bounds must be finite and positive".into());
    }
    if hi <= lo {
        return Err("grid needs lo < hi".into());
    }
    if steps < 2 {
        return Err("grid needs at least 2 steps".into());
    }
    Ok(Grid { lo, hi, steps })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Fit(args) => cmd_fit(args, out),
        Cmd::Compare(args) => cmd_compare(args, out),
        Cmd::Sample(args) => cmd_sample(args, out),
        Cmd::Table(args) => cmd_table(args, out),
    }
}

fn cmd_fit(args: FitArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(0.0..1.0).contains(&args.level) {
        return Err(Failure::Usage(format!(
            "--level must be in [0, 1), got {}",
            args.level
        )));
    }
    let data = args.data.load()?;
    let mut fit = fit_mle(&data, args.model)?;
    if args.level != fit.level {
        fit.ci = wald_ci(&fit, args.level)?;
        fit.level = args.level;
    }
    match args.out {
        OutFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&fit_json(&fit)).unwrap()
        )?,
        OutFormat::Text => write!(out, "{}", fit_text(&fit))?,
    }
    Ok(if fit.converged { 0 } else { 2 })
}

fn cmd_compare(args: CompareArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if args.models.is_empty() {
        return Err(Failure::Usage(
            "list at least one family via --models".into(),
        ));
    }
    let data = args.data.load()?;
    let fits: Vec<(Family, Result<FitResult, Error>)> = args
        .models
        .iter()
        .map(|&fam| (fam, fit_mle(&data, fam)))
        .collect();

    // Rank the successful fits by AIC, then BIC.
    let mut order: Vec<usize> = (0..fits.len()).filter(|&i| fits[i].1.is_ok()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (fits[i].1.as_ref().unwrap(), fits[j].1.as_ref().unwrap());
        a.aic.total_cmp(&b.aic).then(a.bic.total_cmp(&b.bic))
    });

    match args.out {
        OutFormat::Json => {
            let mut rows = Vec::new();
            for (rank, &i) in order.iter().enumerate() {
                let fit = fits[i].1.as_ref().unwrap();
                let mut row = fit_json(fit);
                row.as_object_mut()
                    .unwrap()
                    .insert("rank".into(), Value::from(rank as u64 + 1));
                rows.push(row);
            }
            for (fam, res) in &fits {
                if let Err(e) = res {
                    let mut row = Map::new();
                    row.insert("model".into(), Value::from(fam.as_str()));
                    row.insert("error".into(), Value::from(e.to_string()));
                    rows.push(Value::Object(row));
                }
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&Value::Array(rows)).unwrap()
            )?;
        }
        OutFormat::Text => {
            writeln!(
                out,
                "{:<5} {:<8} {:<2} {:<10} {:<9} {:<9} {:<9} {:<9} {:<9} converged",
                "rank", "model", "k", "loglik", "aic", "aicc", "bic", "ks", "p"
            )?;
            for (rank, &i) in order.iter().enumerate() {
                let fit = fits[i].1.as_ref().unwrap();
                writeln!(
                    out,
                    "{:<5} {:<8} {:<2} {:<10} {:<9} {:<9} {:<9} {:<9} {:<9} {}",
                    rank + 1,
                    fit.family.as_str(),
                    fit.k(),
                    sig6(fit.loglik),
                    sig6(fit.aic),
                    sig6(fit.aicc),
                    sig6(fit.bic),
                    sig6(fit.ks_stat),
                    sig6(fit.ks_pvalue),
                    fit.converged
                )?;
            }
            for (fam, res) in &fits {
                if let Err(e) = res {
                    writeln!(out, "{:<5} {:<8} failed: {e}", "-", fam.as_str())?;
                }
            }
        }
    }
    if order.is_empty() {
        let first = fits.iter().find_map(|(_, r)| r.as_ref().err()).unwrap();
        return Ok(lib_exit_code(first));
    }
    Ok(0)
}

fn cmd_sample(args: SampleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let [a, b, l] = args.params;
    let params = EfweParams::new(a, b, l)?;
    let policy = match args.policy {
        PolicyArg::Conditional => SamplePolicy::Conditional,
        PolicyArg::Strict => SamplePolicy::Strict,
    };
    let draws = params.sample(args.n, args.seed, policy)?;
    writeln!(out, "time")?;
    for x in draws {
        writeln!(out, "{x}")?;
    }
    Ok(0)
}

fn cmd_table(args: TableArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let [a, b, l] = args.params;
    let params = EfweParams::new(a, b, l)?;
    if args.what == What::KmOverlay {
        let data = args.data.load()?;
        let km = kaplan_meier(&data);
        writeln!(out, "time,km_survival,fitted_survival")?;
        for (i, &t) in km.times().iter().enumerate() {
            writeln!(out, "{t},{},{}", km.surv()[i], params.survival(t)?)?;
        }
        return Ok(0);
    }
    let grid = args.grid.ok_or_else(|| {
        Failure::Usage(format!(
            "--grid lo:hi:steps is required for --what {}",
            args.what.column_name()
        ))
    })?;
    writeln!(out, "x,{}", args.what.column_name())?;
    for i in 0..grid.steps {
        let x = grid.lo + (grid.hi - grid.lo) * i as f64 / (grid.steps - 1) as f64;
        let v = match args.what {
            What::Cdf => params.cdf(x)?,
            What::Pdf => params.pdf(x)?,
            What::Hazard => params.hazard(x)?,
            What::Survival => params.survival(x)?,
            What::KmOverlay => unreachable!("handled above"),
        };
        writeln!(out, "{x},{v}")?;
    }
    Ok(0)
}

fn fit_json(fit: &FitResult) -> Value {
    let mut m = Map::new();
    m.insert("model".into(), Value::from(fit.family.as_str()));
    let mut params = Map::new();
    for (name, v) in fit.param_names.iter().zip(&fit.estimates) {
        params.insert((*name).into(), Value::from(*v));
    }
    m.insert("params".into(), Value::Object(params));
    m.insert("loglik".into(), Value::from(fit.loglik));
    m.insert("aic".into(), Value::from(fit.aic));
    m.insert("aicc".into(), Value::from(fit.aicc));
    m.insert("bic".into(), Value::from(fit.bic));
    m.insert("ks".into(), Value::from(fit.ks_stat));
    m.insert("ks_pvalue".into(), Value::from(fit.ks_pvalue));
    m.insert(
        "ci".into(),
        Value::from(
            fit.ci
                .iter()
                .map(|&(lo, hi)| vec![lo, hi])
                .collect::<Vec<_>>(),
        ),
    );
    m.insert("vcov".into(), Value::from(fit.vcov.clone()));
    m.insert("defect".into(), Value::from(fit.defect));
    m.insert("converged".into(), Value::from(fit.converged));
    m.insert("level".into(), Value::from(fit.level));
    m.insert("n".into(), Value::from(fit.n as u64));
    m.insert("score_norm".into(), Value::from(fit.score_norm));
    Value::Object(m)
}

fn fit_text(fit: &FitResult) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", fit.family);
    let _ = writeln!(out, "n: {}", fit.n);
    let _ = writeln!(out, "converged: {}", fit.converged);
    let _ = writeln!(out, "score_norm: {}", sig6(fit.score_norm));
    let _ = writeln!(out, "loglik: {}", sig6(fit.loglik));
    let _ = writeln!(out, "aic: {}", sig6(fit.aic));
    let _ = writeln!(out, "aicc: {}", sig6(fit.aicc));
    let _ = writeln!(out, "bic: {}", sig6(fit.bic));
    let _ = writeln!(out, "ks: {}", sig6(fit.ks_stat));
    let _ = writeln!(out, "ks_pvalue: {}", sig6(fit.ks_pvalue));
    let _ = writeln!(out, "defect: {}", sig6(fit.defect));
    let width = fit.param_names.iter().map(|n| n.len()).max().unwrap_or(0);
    let _ = writeln!(out, "params (ci at {}%):", sig6(fit.level * 100.0));
    for i in 0..fit.estimates.len() {
        let _ = writeln!(
            out,
            "  {:<width$} = {}  [{}, {}]",
            fit.param_names[i],
            sig6(fit.estimates[i]),
            sig6(fit.ci[i].0),
            sig6(fit.ci[i].1),
        );
    }
    let _ = writeln!(out, "vcov:");
    for row in &fit.vcov {
        let cells: Vec<String> = row.iter().map(|&v| sig6(v)).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
    out
}

/// Formats a number to six significant digits for text reports, dropping
/// trailing zeros.
fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=8).contains(&exp) {
        format!("{x:.5e}")
    } else {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

// ======================================================================
// tests
// ======================================================================
