//! The `ulinf` command line: fit, compare, simulate, sample and gen-data.
//!
//! Exit codes: 0 success, 1 runtime or fit failure, 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::competitors::{fit_beinf, fit_zoik};
use crate::data_io::{generate_pseudo, load, Dataset, PseudoLayout};
use crate::error::Error;
use crate::inference::{fit_ulinf, partition, FitResult, Model};
use crate::inflated_mixture::{SamplingMode, Ulinf, UlinfParams};
use crate::model_selection::{cdf_table_to_csv, compare, ecdf_and_fitted_cdfs, CdfRow, ComparisonReport};
use crate::simulation::{report_to_csv, report_to_text, run_simulation, Execution, SimDesign};

/// Seed used by every randomized subcommand unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 99;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ulinf", version, about = "Zero-and-one inflated unit-Lindley modeling toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Confidence level for intervals.
    #[arg(long, global = true, default_value_t = 0.95, value_parser = parse_level)]
    pub level: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Ulinf,
    Beinf,
    Zoik,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Ulinf => Model::Ulinf,
            ModelArg::Beinf => Model::Beinf,
            ModelArg::Zoik => Model::Zoik,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Mixture,
    Stratified,
}

impl From<ModeArg> for SamplingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Mixture => SamplingMode::Mixture,
            ModeArg::Stratified => SamplingMode::Stratified,
        }
    }
}

#[derive(Debug, Args)]
pub struct TruthArgs {
    #[arg(long, default_value_t = 0.25)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.4)]
    pub p: f64,
    #[arg(long, default_value_t = 1.5)]
    pub theta: f64,
}

impl TruthArgs {
    fn params(&self) -> Result<UlinfParams, CliError> {
        UlinfParams::new(self.alpha, self.p, self.theta).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one model to a dataset.
    Fit {
        /// File path or embedded dataset name (`elephants`).
        #[arg(long)]
        data: String,
        #[arg(long, value_enum, default_value_t = ModelArg::Ulinf)]
        model: ModelArg,
    },
    /// Fit all three models and rank them by AIC and BIC.
    Compare {
        #[arg(long)]
        data: String,
        /// Number of grid points for the empirical vs fitted CDF table (0 = none).
        #[arg(long, default_value_t = 0)]
        cdf_grid: usize,
        /// Write the CDF table here as CSV instead of embedding it in the report.
        #[arg(long)]
        cdf_output: Option<PathBuf>,
    },
    /// Monte Carlo bias and MSE study of the ULINF estimators.
    Simulate {
        #[command(flatten)]
        truth: TruthArgs,
        #[arg(long, value_delimiter = ',', default_values_t = SimDesign::DEFAULT_SIZES)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Stratified)]
        mode: ModeArg,
        /// Run replications on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// Draw values from a ULINF distribution.
    Sample {
        #[command(flatten)]
        truth: TruthArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Mixture)]
        mode: ModeArg,
    },
    /// Generate a pseudo dataset of zeros, unit-Lindley draws and ones.
    GenData {
        #[arg(long, conflicts_with = "appendix_b")]
        zeros: Option<usize>,
        #[arg(long, conflicts_with = "appendix_b")]
        ones: Option<usize>,
        #[arg(long, conflicts_with = "appendix_b")]
        interior: Option<usize>,
        #[arg(long, conflicts_with = "appendix_b")]
        theta: Option<f64>,
        /// 20 zeros, 190 interior values and 60 ones.
        #[arg(long)]
        appendix_b: bool,
    },
}

fn parse_level(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("level must lie strictly between 0 and 1, got {v}"))
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(Error::Io(e))
    }
}

/// Formats `x` with 10 significant digits, dropping trailing zeros.
pub fn sig10(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..10).contains(&exp) {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let decimals = (9 - exp).max(0) as usize;
    let fixed = format!("{x:.decimals$}");
    if fixed.contains('.') {
        fixed.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        fixed
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` (or `--output`) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let written = match &cli.common.output {
                Some(path) => std::fs::write(path, report.as_bytes()),
                None => out.write_all(report.as_bytes()),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_FAILURE
                }
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let common = &cli.common;
    match &cli.command {
        Command::Fit { data, model } => {
            let dataset = load(data)?;
            let part = partition(&dataset.values)?;
            let fit = match Model::from(*model) {
                Model::Ulinf => fit_ulinf(&part, common.level),
                Model::Beinf => fit_beinf(&part, common.level),
                Model::Zoik => fit_zoik(&part, common.level),
            }?;
            Ok(match common.format {
                Format::Json => to_json(&fit),
                Format::Csv => fit_to_csv(&fit),
                Format::Text => fit_to_text(&fit, &dataset.name),
            })
        }
        Command::Compare {
            data,
            cdf_grid,
            cdf_output,
        } => {
            let dataset = load(data)?;
            let report = compare(&dataset.values, common.level)?;
            let grid = match *cdf_grid {
                0 => None,
                1 => return Err(CliError::Usage("--cdf-grid needs at least 2 points".into())),
                k => Some(ecdf_and_fitted_cdfs(&dataset.values, &report, k)?),
            };
            let embedded = match (&grid, cdf_output) {
                (Some(rows), Some(path)) => {
                    std::fs::write(path, cdf_table_to_csv(rows))?;
                    None
                }
                (rows, _) => rows.as_deref(),
            };
            Ok(render_comparison(&report, &dataset, embedded, common.format))
        }
        Command::Simulate {
            truth,
            sizes,
            reps,
            mode,
            serial,
        } => {
            let design = SimDesign {
                truth: truth.params()?,
                sample_sizes: sizes.clone(),
                replications: *reps,
                mode: (*mode).into(),
                seed: common.seed,
                execution: if *serial { Execution::Serial } else { Execution::Parallel },
            };
            if *reps == 0 || sizes.iter().any(|&n| n < 2) {
                return Err(CliError::Usage("--reps must be ≥ 1 and every size ≥ 2".into()));
            }
            let report = run_simulation(&design)?;
            Ok(match common.format {
                Format::Json => to_json(&report),
                Format::Csv => report_to_csv(&report),
                Format::Text => report_to_text(&report),
            })
        }
        Command::Sample { truth, n, mode } => {
            let params = truth.params()?;
            let model = Ulinf::new(params)?;
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let values = model.sample(*n, &mut rng, (*mode).into());
            Ok(match common.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct SampleOut<'a> {
                        params: UlinfParams,
                        mode: SamplingMode,
                        seed: u64,
                        values: &'a [f64],
                    }
                    to_json(&SampleOut {
                        params,
                        mode: (*mode).into(),
                        seed: common.seed,
                        values: &values,
                    })
                }
                Format::Csv => dataset_csv(&values),
                Format::Text => values.iter().fold(String::new(), |mut s, v| {
                    let _ = writeln!(s, "{v}");
                    s
                }),
            })
        }
        Command::GenData {
            zeros,
            ones,
            interior,
            theta,
            appendix_b,
        } => {
            let base = if *appendix_b { PseudoLayout::APPENDIX_B } else { PseudoLayout::DEFAULT };
            let layout = PseudoLayout {
                zeros: zeros.unwrap_or(base.zeros),
                ones: ones.unwrap_or(base.ones),
                interior: interior.unwrap_or(base.interior),
                theta: theta.unwrap_or(base.theta),
            };
            if !(layout.theta > 0.0 && layout.theta.is_finite()) {
                return Err(CliError::Usage(format!("--theta must be positive, got {}", layout.theta)));
            }
            let dataset = generate_pseudo(common.seed, layout)?;
            Ok(match common.format {
                Format::Json => to_json(&dataset),
                Format::Csv | Format::Text => dataset_csv(&dataset.values),
            })
        }
    }
}

fn dataset_csv(values: &[f64]) -> String {
    let mut buf = Vec::new();
    Dataset {
        name: "sample".into(),
        values: values.to_vec(),
        source: crate::data_io::Source::Generated,
    }
    .write_csv(&mut buf)
    .expect("writing to memory");
    String::from_utf8(buf).expect("ascii csv")
}

fn fit_to_csv(fit: &FitResult) -> String {
    let mut out = String::from("parameter,estimate,std_error,lower,upper\n");
    for (name, est) in &fit.estimates {
        let se = fit.std_errors.get(name).map_or_else(String::new, |v| v.to_string());
        let (lo, hi) = fit
            .conf_intervals
            .get(name)
            .map_or_else(|| (String::new(), String::new()), |(l, h)| (l.to_string(), h.to_string()));
        let _ = writeln!(out, "{name},{est},{se},{lo},{hi}");
    }
    for (name, v) in &fit.derived {
        let _ = writeln!(out, "{name},{v},,,");
    }
    for (name, v) in [("loglik", fit.loglik), ("aic", fit.aic), ("bic", fit.bic)] {
        let _ = writeln!(out, "{name},{v},,,");
    }
    out
}

fn fit_to_text(fit: &FitResult, dataset: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model: {}  data: {}  n: {}  level: {}", fit.model, dataset, fit.n, fit.level);
    let _ = writeln!(
        out,
        "{:<10}{:>18}{:>18}{:>18}{:>18}",
        "parameter", "estimate", "std_error", "lower", "upper"
    );
    for (name, est) in &fit.estimates {
        let se = fit.std_errors.get(name).map_or_else(|| "-".into(), |v| sig10(*v));
        let (lo, hi) = fit
            .conf_intervals
            .get(name)
            .map_or_else(|| ("-".into(), "-".into()), |(l, h)| (sig10(*l), sig10(*h)));
        let _ = writeln!(out, "{name:<10}{:>18}{se:>18}{lo:>18}{hi:>18}", sig10(*est));
    }
    for name in &fit.intervals_unavailable {
        let _ = writeln!(out, "note: no interval for {name} (estimate on the boundary)");
    }
    for (name, v) in &fit.derived {
        let _ = writeln!(out, "{name}: {}", sig10(*v));
    }
    let _ = writeln!(
        out,
        "loglik: {}  aic: {}  bic: {}",
        sig10(fit.loglik),
        sig10(fit.aic),
        sig10(fit.bic)
    );
    out
}

#[derive(Serialize)]
struct ComparisonOut<'a> {
    dataset: &'a str,
    #[serde(flatten)]
    report: &'a ComparisonReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    cdf_grid: Option<&'a [CdfRow]>,
}

fn render_comparison(report: &ComparisonReport, dataset: &Dataset, grid: Option<&[CdfRow]>, format: Format) -> String {
    match format {
        Format::Json => to_json(&ComparisonOut {
            dataset: &dataset.name,
            report,
            cdf_grid: grid,
        }),
        Format::Csv => {
            let mut out = crate::model_selection::report_to_csv(report);
            if let Some(rows) = grid {
                out.push('\n');
                out.push_str(&cdf_table_to_csv(rows));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "data: {}  n: {}  level: {}", dataset.name, report.n, report.level);
            let _ = writeln!(out, "{:<8}{:>3}{:>18}{:>18}{:>18}", "model", "k", "loglik", "aic", "bic");
            for slot in &report.fits {
                match &slot.fit {
                    Some(f) => {
                        let _ = writeln!(
                            out,
                            "{:<8}{:>3}{:>18}{:>18}{:>18}",
                            slot.model.name(),
                            slot.model.num_params(),
                            sig10(f.loglik),
                            sig10(f.aic),
                            sig10(f.bic)
                        );
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "{:<8}{:>3}  failed: {}",
                            slot.model.name(),
                            slot.model.num_params(),
                            slot.error.as_deref().unwrap_or("unknown error")
                        );
                    }
                }
            }
            let names = |v: &[Model]| v.iter().map(|m| m.name()).collect::<Vec<_>>().join(" < ");
            let _ = writeln!(out, "ranking by AIC: {}", names(&report.ranking.aic));
            let _ = writeln!(out, "ranking by BIC: {}", names(&report.ranking.bic));
            for f in report.successful() {
                out.push('\n');
                out.push_str(&fit_to_text(f, &dataset.name));
            }
            if let Some(rows) = grid {
                out.push('\n');
                out.push_str(&cdf_table_to_csv(rows));
            }
            out
        }
    }
}
