//! Monte Carlo study of the ULINF estimators: bias, MSE and mean estimate
//! of `α̂`, `θ̂`, `p̂` and the plug-in mean and variance, across sample
//! sizes.
//!
//! Replication `r` at sample size `n` draws from its own ChaCha stream
//! keyed by `(seed, n, r)`, so results do not depend on execution order or
//! thread count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::inference::{mle, partition};
use crate::inflated_mixture::{SamplingMode, Ulinf, UlinfParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimDesign {
    pub truth: UlinfParams,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub mode: SamplingMode,
    pub seed: u64,
    pub execution: Execution,
}

impl SimDesign {
    pub const DEFAULT_SIZES: [usize; 5] = [50, 100, 200, 500, 1000];

    /// Default study: sizes 50–1000, 10 000 replications, stratified
    /// endpoint counts.
    pub fn new(truth: UlinfParams, seed: u64) -> Self {
        Self {
            truth,
            sample_sizes: Self::DEFAULT_SIZES.to_vec(),
            replications: 10_000,
            mode: SamplingMode::Stratified,
            seed,
            execution: Execution::Parallel,
        }
    }

    fn validate(&self) -> Result<()> {
        self.truth.validate()?;
        if self.replications == 0 {
            return Err(crate::Error::InvalidArgument("replications must be at least 1".into()));
        }
        if let Some(n) = self.sample_sizes.iter().find(|&&n| n < 2) {
            return Err(crate::Error::InvalidArgument(format!(
                "sample sizes must be at least 2, got {n}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimand {
    Alpha,
    Theta,
    P,
    Mean,
    Variance,
}

impl Estimand {
    pub const ALL: [Estimand; 5] = [
        Estimand::Alpha,
        Estimand::Theta,
        Estimand::P,
        Estimand::Mean,
        Estimand::Variance,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub mean_estimate: f64,
    pub bias: f64,
    pub relative_bias: f64,
    pub mse: f64,
    /// Sample variance of the estimates (divisor `R − 1`; 0 when `R = 1`).
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeReport {
    pub n: usize,
    pub kept_replications: usize,
    pub dropped_replications: usize,
    pub cells: BTreeMap<Estimand, CellStats>,
}

impl SizeReport {
    pub fn cell(&self, estimand: Estimand) -> &CellStats {
        &self.cells[&estimand]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub truth: UlinfParams,
    pub true_mean: f64,
    pub true_variance: f64,
    pub mode: SamplingMode,
    pub replications: usize,
    pub seed: u64,
    pub dropped_replications: usize,
    pub sizes: Vec<SizeReport>,
}

impl SimulationReport {
    pub fn size(&self, n: usize) -> Option<&SizeReport> {
        self.sizes.iter().find(|s| s.n == n)
    }
}

/// The random stream for replication `rep` at sample size `n`.
pub fn replication_rng(seed: u64, n: usize, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) ^ rep as u64);
    rng
}

/// Estimates `(α̂, θ̂, p̂, Ê, V̂)` from one replication, or `None` when `θ̂`
/// is undefined.
fn replicate(model: &Ulinf, n: usize, mode: SamplingMode, mut rng: ChaCha8Rng) -> Option<[f64; 5]> {
    let sample = model.sample(n, &mut rng, mode);
    let part = partition(&sample).ok()?;
    let params = mle(&part).params()?;
    let (mean, variance) = Ulinf::new(params).ok()?.mean_variance();
    let row = [params.alpha, params.theta, params.p, mean, variance];
    row.iter().all(|v| v.is_finite()).then_some(row)
}

pub fn run_simulation(design: &SimDesign) -> Result<SimulationReport> {
    design.validate()?;
    let model = Ulinf::new(design.truth)?;
    let (true_mean, true_variance) = model.mean_variance();
    let truth_row = [
        design.truth.alpha,
        design.truth.theta,
        design.truth.p,
        true_mean,
        true_variance,
    ];

    let mut sizes = Vec::with_capacity(design.sample_sizes.len());
    let mut dropped_total = 0;
    for &n in &design.sample_sizes {
        let run = |rep: usize| replicate(&model, n, design.mode, replication_rng(design.seed, n, rep));
        let rows: Vec<Option<[f64; 5]>> = match design.execution {
            Execution::Serial => (0..design.replications).map(run).collect(),
            Execution::Parallel => (0..design.replications).into_par_iter().map(run).collect(),
        };
        let kept: Vec<[f64; 5]> = rows.into_iter().flatten().collect();
        let dropped = design.replications - kept.len();
        dropped_total += dropped;

        let mut cells = BTreeMap::new();
        for (j, estimand) in Estimand::ALL.into_iter().enumerate() {
            cells.insert(estimand, aggregate(kept.iter().map(|r| r[j]), truth_row[j]));
        }
        sizes.push(SizeReport {
            n,
            kept_replications: kept.len(),
            dropped_replications: dropped,
            cells,
        });
    }

    Ok(SimulationReport {
        truth: design.truth,
        true_mean,
        true_variance,
        mode: design.mode,
        replications: design.replications,
        seed: design.seed,
        dropped_replications: dropped_total,
        sizes,
    })
}

// Sequential sums in replication order.
fn aggregate(estimates: impl Iterator<Item = f64> + Clone, truth: f64) -> CellStats {
    let (mut count, mut sum, mut sq_err) = (0usize, 0.0, 0.0);
    for e in estimates.clone() {
        count += 1;
        sum += e;
        sq_err += (e - truth) * (e - truth);
    }
    if count == 0 {
        return CellStats {
            mean_estimate: f64::NAN,
            bias: f64::NAN,
            relative_bias: f64::NAN,
            mse: f64::NAN,
            variance: f64::NAN,
        };
    }
    let k = count as f64;
    let mean = sum / k;
    let variance = if count > 1 {
        estimates.map(|e| (e - mean) * (e - mean)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let bias = mean - truth;
    CellStats {
        mean_estimate: mean,
        bias,
        relative_bias: if truth != 0.0 { bias / truth } else { f64::NAN },
        mse: sq_err / k,
        variance,
    }
}

const ROW_LABELS: [&str; 15] = [
    "Bias.alpha",
    "Bias.theta",
    "Bias.p",
    "MSE.alpha",
    "MSE.theta",
    "MSE.p",
    "alpha.est",
    "theta.est",
    "p.est",
    "E_y",
    "V_y",
    "bias.E",
    "bias.V",
    "mse.E",
    "mse.V",
];

fn row_values(report: &SimulationReport) -> Vec<Vec<f64>> {
    use Estimand::*;
    let pick = |f: fn(&CellStats) -> f64, e: Estimand| -> Vec<f64> {
        report.sizes.iter().map(|s| f(s.cell(e))).collect()
    };
    let bias = |c: &CellStats| c.bias;
    let mse = |c: &CellStats| c.mse;
    let est = |c: &CellStats| c.mean_estimate;
    vec![
        pick(bias, Alpha),
        pick(bias, Theta),
        pick(bias, P),
        pick(mse, Alpha),
        pick(mse, Theta),
        pick(mse, P),
        pick(est, Alpha),
        pick(est, Theta),
        pick(est, P),
        pick(est, Mean),
        pick(est, Variance),
        pick(bias, Mean),
        pick(bias, Variance),
        pick(mse, Mean),
        pick(mse, Variance),
    ]
}

/// 15 rows by one column per sample size.
pub fn report_to_csv(report: &SimulationReport) -> String {
    let mut out = String::from("\"\"");
    for s in &report.sizes {
        let _ = write!(out, ",{}", s.n);
    }
    out.push('\n');
    if report.sizes.is_empty() {
        return out;
    }
    for (label, values) in ROW_LABELS.iter().zip(row_values(report)) {
        out.push_str(label);
        for v in values {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// Aligned text rendering of the same table, with a short preamble.
pub fn report_to_text(report: &SimulationReport) -> String {
    let mut out = String::new();
    let t = report.truth;
    let _ = writeln!(
        out,
        "truth: alpha={} p={} theta={}  (mean={}, variance={})",
        t.alpha,
        t.p,
        t.theta,
        crate::cli::sig10(report.true_mean),
        crate::cli::sig10(report.true_variance)
    );
    let _ = writeln!(
        out,
        "mode: {}  replications: {}  seed: {}  dropped: {}",
        report.mode, report.replications, report.seed, report.dropped_replications
    );
    let _ = write!(out, "{:<12}", "");
    for s in &report.sizes {
        let _ = write!(out, "{:>18}", s.n);
    }
    out.push('\n');
    if report.sizes.is_empty() {
        return out;
    }
    for (label, values) in ROW_LABELS.iter().zip(row_values(report)) {
        let _ = write!(out, "{label:<12}");
        for v in values {
            let _ = write!(out, "{:>18}", crate::cli::sig10(v));
        }
        out.push('\n');
    }
    out
}
