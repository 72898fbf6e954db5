//! Sufficient statistics, closed-form maximum likelihood, Fisher
//! information and Wald intervals for the ULINF model.
//!
//! The likelihood factorizes into a Bernoulli part for the endpoint
//! indicator (`α`), a Bernoulli part for ones among endpoints (`p`) and the
//! unit-Lindley likelihood of the interior values (`θ`), so each parameter
//! is estimated from its own block.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inflated_mixture::{UlinfParams, UlinfPoint};
use crate::special_fn::normal_quantile;

/// A sample split into endpoint counts and interior values.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedSample {
    n: usize,
    t1: usize,
    t2: usize,
    interior: Vec<f64>,
    t_y: f64,
    sum_log_complement: f64,
}

impl PartitionedSample {
    /// Total sample size.
    pub fn n(&self) -> usize {
        self.n
    }
    /// Number of observations equal to 0 or 1.
    pub fn t1(&self) -> usize {
        self.t1
    }
    /// Number of observations equal to 1.
    pub fn t2(&self) -> usize {
        self.t2
    }
    pub fn zeros(&self) -> usize {
        self.t1 - self.t2
    }
    pub fn ones(&self) -> usize {
        self.t2
    }
    /// Number of interior observations, `n − T1`.
    pub fn nc(&self) -> usize {
        self.interior.len()
    }
    pub fn interior(&self) -> &[f64] {
        &self.interior
    }
    /// `Σ y/(1−y)` over the interior values.
    pub fn t_y(&self) -> f64 {
        self.t_y
    }
    /// `Σ ln(1−y)` over the interior values.
    pub fn sum_log_complement(&self) -> f64 {
        self.sum_log_complement
    }
}

/// Classifies every value by exact comparison with 0 and 1.
pub fn partition(sample: &[f64]) -> Result<PartitionedSample> {
    let mut t1 = 0;
    let mut t2 = 0;
    let mut interior = Vec::with_capacity(sample.len());
    for (index, &y) in sample.iter().enumerate() {
        match UlinfPoint::classify(y) {
            Ok(UlinfPoint::AtZero) => t1 += 1,
            Ok(UlinfPoint::AtOne) => {
                t1 += 1;
                t2 += 1;
            }
            Ok(UlinfPoint::Interior(v)) => interior.push(v),
            Err(_) => return Err(Error::OutOfRange { index, value: y }),
        }
    }
    let t_y = interior.iter().map(|y| y / (1.0 - y)).sum();
    let sum_log_complement = interior.iter().map(|y| (-y).ln_1p()).sum();
    Ok(PartitionedSample {
        n: sample.len(),
        t1,
        t2,
        interior,
        t_y,
        sum_log_complement,
    })
}

/// Maximum likelihood estimates; `theta` is absent without interior data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UlinfEstimate {
    pub alpha: f64,
    pub p: f64,
    pub theta: Option<f64>,
}

impl UlinfEstimate {
    pub fn params(&self) -> Option<UlinfParams> {
        self.theta.map(|theta| UlinfParams {
            alpha: self.alpha,
            p: self.p,
            theta,
        })
    }
}

/// Root of `2nc/θ − nc/(1+θ) − t = 0`.
pub fn theta_mle(nc: usize, t: f64) -> Option<f64> {
    if nc == 0 || !(t > 0.0) {
        return None;
    }
    let nc = nc as f64;
    Some((nc - t + (t * t + 6.0 * nc * t + nc * nc).sqrt()) / (2.0 * t))
}

/// `α̂ = T1/n`, `p̂ = T2/T1` (0 when `T1 = 0`), and the closed-form `θ̂`
/// computed from the interior observations only.
pub fn mle(sample: &PartitionedSample) -> UlinfEstimate {
    let alpha = if sample.n == 0 {
        0.0
    } else {
        sample.t1 as f64 / sample.n as f64
    };
    let p = if sample.t1 == 0 {
        0.0
    } else {
        sample.t2 as f64 / sample.t1 as f64
    };
    UlinfEstimate {
        alpha,
        p,
        theta: theta_mle(sample.nc(), sample.t_y),
    }
}

/// `k·ln(q) + m·ln(1−q)` with `0·ln 0 = 0`; a positive count on a
/// zero-probability outcome gives `−∞`.
pub fn bernoulli_loglik(successes: usize, failures: usize, q: f64) -> f64 {
    let term = |count: usize, prob: f64| {
        if count == 0 {
            0.0
        } else if prob <= 0.0 {
            f64::NEG_INFINITY
        } else {
            count as f64 * prob.ln()
        }
    };
    term(successes, q) + term(failures, 1.0 - q)
}

/// `ℓ1(α) = T1 ln α + (n − T1) ln(1 − α)`.
pub fn loglik_alpha(alpha: f64, sample: &PartitionedSample) -> f64 {
    bernoulli_loglik(sample.t1, sample.n - sample.t1, alpha)
}

/// `ℓ2(p) = T2 ln p + (T1 − T2) ln(1 − p)`.
pub fn loglik_p(p: f64, sample: &PartitionedSample) -> f64 {
    bernoulli_loglik(sample.t2, sample.t1 - sample.t2, p)
}

/// `ℓ3(θ) = 2nc ln θ − nc ln(1+θ) − θ t(y) − 3 Σ ln(1−y)`.
pub fn loglik_theta(theta: f64, sample: &PartitionedSample) -> f64 {
    let nc = sample.nc() as f64;
    if nc == 0.0 {
        return 0.0;
    }
    2.0 * nc * theta.ln() - nc * theta.ln_1p() - theta * sample.t_y - 3.0 * sample.sum_log_complement
}

pub fn loglik(params: &UlinfParams, sample: &PartitionedSample) -> f64 {
    loglik_alpha(params.alpha, sample) + loglik_p(params.p, sample) + loglik_theta(params.theta, sample)
}

/// Diagonal Fisher information for `(α, p, θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherInformation {
    pub diagonal: [f64; 3],
}

impl FisherInformation {
    /// Diagonal of the inverse information, i.e. asymptotic variances.
    pub fn inverse_diagonal(&self) -> [f64; 3] {
        self.diagonal.map(|k| 1.0 / k)
    }

    pub fn std_errors(&self) -> [f64; 3] {
        self.diagonal.map(|k| (1.0 / k).sqrt())
    }
}

/// Per-parameter information entries, `None` where the entry is singular.
pub fn information_entries(params: &UlinfParams, n: usize, nc: usize) -> [Option<f64>; 3] {
    let UlinfParams { alpha, p, theta } = *params;
    let n = n as f64;
    let interior_alpha = alpha > 0.0 && alpha < 1.0;
    let k_alpha = (interior_alpha && n > 0.0).then(|| n / (alpha * (1.0 - alpha)));
    let k_p = (alpha > 0.0 && p > 0.0 && p < 1.0 && n > 0.0).then(|| n * alpha / (p * (1.0 - p)));
    let k_theta = (nc > 0 && theta > 0.0)
        .then(|| nc as f64 * (2.0 / (theta * theta) - 1.0 / ((1.0 + theta) * (1.0 + theta))));
    [k_alpha, k_p, k_theta]
}

/// `diag(n/(α(1−α)), nα/(p(1−p)), nc(2/θ² − 1/(1+θ)²))`.
pub fn fisher_information(params: &UlinfParams, n: usize, nc: usize) -> Result<FisherInformation> {
    let [ka, kp, kt] = information_entries(params, n, nc);
    Ok(FisherInformation {
        diagonal: [
            ka.ok_or(Error::SingularInformation { parameter: "alpha" })?,
            kp.ok_or(Error::SingularInformation { parameter: "p" })?,
            kt.ok_or(Error::SingularInformation { parameter: "theta" })?,
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// `z_{1−(1−level)/2}` for a two-sided interval at confidence `level`.
pub fn two_sided_z(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain {
            what: "confidence level",
            value: level,
        });
    }
    normal_quantile(1.0 - (1.0 - level) / 2.0)
}

/// Symmetric Wald interval `estimate ± z·se`, clipped to `[lower, upper]`.
pub fn wald_interval(estimate: f64, se: f64, z: f64, lower: f64, upper: f64) -> Interval {
    Interval {
        lo: (estimate - z * se).max(lower),
        hi: (estimate + z * se).min(upper),
    }
}

/// Wald intervals for `(α, p, θ)`; `α` and `p` are clipped to `[0, 1]`,
/// `θ` to `[0, ∞)`.
pub fn wald_intervals(
    params: &UlinfParams,
    info: &FisherInformation,
    level: f64,
) -> Result<[Interval; 3]> {
    let z = two_sided_z(level)?;
    let se = info.std_errors();
    Ok([
        wald_interval(params.alpha, se[0], z, 0.0, 1.0),
        wald_interval(params.p, se[1], z, 0.0, 1.0),
        wald_interval(params.theta, se[2], z, 0.0, f64::INFINITY),
    ])
}

/// `sqrt(gᵀ K⁻¹ g)` for a diagonal information `K`.
pub fn delta_method_se(info: &FisherInformation, gradient: &[f64; 3]) -> f64 {
    info.inverse_diagonal()
        .iter()
        .zip(gradient)
        .map(|(v, g)| g * g * v)
        .sum::<f64>()
        .sqrt()
}

/// Delta-method standard error of the fitted mean `αp + (1−α)/(1+θ)`.
pub fn mean_se(params: &UlinfParams, info: &FisherInformation) -> f64 {
    delta_method_se(info, &params.mean_gradient())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "ULINF")]
    Ulinf,
    #[serde(rename = "BEINF")]
    Beinf,
    #[serde(rename = "ZOIK")]
    Zoik,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Ulinf, Model::Beinf, Model::Zoik];

    pub fn name(&self) -> &'static str {
        match self {
            Model::Ulinf => "ULINF",
            Model::Beinf => "BEINF",
            Model::Zoik => "ZOIK",
        }
    }

    /// Number of free parameters used by the information criteria.
    pub fn num_params(&self) -> usize {
        match self {
            Model::Ulinf => 3,
            Model::Beinf | Model::Zoik => 4,
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Estimates, uncertainty and information criteria for one fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: Model,
    pub estimates: IndexMap<String, f64>,
    pub std_errors: IndexMap<String, f64>,
    pub conf_intervals: IndexMap<String, (f64, f64)>,
    /// Reparameterizations reported alongside the estimates.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub derived: IndexMap<String, f64>,
    /// Parameters whose intervals are unavailable because the estimate sits
    /// on the boundary of the parameter space.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intervals_unavailable: Vec<String>,
    pub level: f64,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub n: usize,
}

/// `(−2ℓ + 2k, −2ℓ + k ln n)`.
pub fn information_criteria(loglik: f64, k: usize, n: usize) -> (f64, f64) {
    let k = k as f64;
    (-2.0 * loglik + 2.0 * k, -2.0 * loglik + k * (n as f64).ln())
}

/// Collects per-parameter estimates into a [`FitResult`].
#[derive(Debug)]
pub(crate) struct FitBuilder {
    result: FitResult,
    z: f64,
}

impl FitBuilder {
    pub(crate) fn new(model: Model, n: usize, level: f64) -> Result<Self> {
        Ok(Self {
            z: two_sided_z(level)?,
            result: FitResult {
                model,
                estimates: IndexMap::new(),
                std_errors: IndexMap::new(),
                conf_intervals: IndexMap::new(),
                derived: IndexMap::new(),
                intervals_unavailable: Vec::new(),
                level,
                loglik: f64::NAN,
                aic: f64::NAN,
                bic: f64::NAN,
                n,
            },
        })
    }

    pub(crate) fn parameter(
        &mut self,
        name: &str,
        estimate: f64,
        information: Option<f64>,
        bounds: (f64, f64),
    ) -> &mut Self {
        self.result.estimates.insert(name.to_string(), estimate);
        match information.filter(|k| *k > 0.0 && k.is_finite()) {
            Some(k) => {
                let se = (1.0 / k).sqrt();
                let ci = wald_interval(estimate, se, self.z, bounds.0, bounds.1);
                self.result.std_errors.insert(name.to_string(), se);
                self.result.conf_intervals.insert(name.to_string(), (ci.lo, ci.hi));
            }
            None => self.result.intervals_unavailable.push(name.to_string()),
        }
        self
    }

    /// A parameter with a standard error from elsewhere (e.g. a numerical
    /// observed information).
    pub(crate) fn parameter_with_se(
        &mut self,
        name: &str,
        estimate: f64,
        se: Option<f64>,
        bounds: (f64, f64),
    ) -> &mut Self {
        let info = se.filter(|s| *s > 0.0 && s.is_finite()).map(|s| 1.0 / (s * s));
        self.parameter(name, estimate, info, bounds)
    }

    pub(crate) fn derived(&mut self, name: &str, value: f64) -> &mut Self {
        self.result.derived.insert(name.to_string(), value);
        self
    }

    pub(crate) fn finish(mut self, loglik: f64) -> FitResult {
        let (aic, bic) = information_criteria(loglik, self.result.model.num_params(), self.result.n);
        self.result.loglik = loglik;
        self.result.aic = aic;
        self.result.bic = bic;
        self.result
    }
}

/// Closed-form ULINF fit with Fisher-information Wald intervals.
pub fn fit_ulinf(sample: &PartitionedSample, level: f64) -> Result<FitResult> {
    if sample.n() == 0 {
        return Err(Error::EmptyDataset);
    }
    let est = mle(sample);
    let params = est.params().ok_or(Error::InsufficientData {
        model: "ULINF",
        needed: 1,
        found: 0,
    })?;
    let [ka, kp, kt] = information_entries(&params, sample.n(), sample.nc());
    let mut fb = FitBuilder::new(Model::Ulinf, sample.n(), level)?;
    fb.parameter("alpha", params.alpha, ka, (0.0, 1.0))
        .parameter("p", params.p, kp, (0.0, 1.0))
        .parameter("theta", params.theta, kt, (0.0, f64::INFINITY));
    let (mean, variance) = crate::inflated_mixture::Ulinf::new(params)?.mean_variance();
    fb.derived("mean", mean).derived("variance", variance);
    if let (Some(ka), Some(kp), Some(kt)) = (ka, kp, kt) {
        let info = FisherInformation {
            diagonal: [ka, kp, kt],
        };
        fb.derived("mean_se", mean_se(&params, &info));
    }
    Ok(fb.finish(loglik(&params, sample)))
}
