//! The zero-and-one inflated unit-Lindley distribution (ULINF).
//!
//! A two-component mixture: with weight `alpha` a Bernoulli(`p`) value at
//! 0 or 1, otherwise a unit-Lindley(`theta`) value inside `(0, 1)`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unit_lindley::UnitLindley;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UlinfParams {
    pub alpha: f64,
    pub p: f64,
    pub theta: f64,
}

impl UlinfParams {
    pub fn new(alpha: f64, p: f64, theta: f64) -> Result<Self> {
        let params = Self { alpha, p, theta };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Domain {
                what: "mixing weight alpha",
                value: self.alpha,
            });
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Domain {
                what: "Bernoulli probability p",
                value: self.p,
            });
        }
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return Err(Error::Domain {
                what: "unit-Lindley theta",
                value: self.theta,
            });
        }
        Ok(())
    }

    /// `m(α, p, θ) = αp + (1−α)/(1+θ)`.
    pub fn mean(&self) -> f64 {
        self.alpha * self.p + (1.0 - self.alpha) / (1.0 + self.theta)
    }

    /// Gradient of [`UlinfParams::mean`] with respect to `(α, p, θ)`.
    pub fn mean_gradient(&self) -> [f64; 3] {
        let inv = 1.0 / (1.0 + self.theta);
        [self.p - inv, self.alpha, -(1.0 - self.alpha) * inv * inv]
    }
}

/// An observation classified by the three cases of the mixed density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UlinfPoint {
    AtZero,
    AtOne,
    Interior(f64),
}

impl UlinfPoint {
    /// Exact comparison with 0 and 1; anything else must lie in `(0, 1)`.
    pub fn classify(y: f64) -> Result<Self> {
        if y == 0.0 {
            Ok(Self::AtZero)
        } else if y == 1.0 {
            Ok(Self::AtOne)
        } else if y > 0.0 && y < 1.0 {
            Ok(Self::Interior(y))
        } else {
            Err(Error::Domain {
                what: "observation",
                value: y,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Independent draws from the mixture.
    #[default]
    Mixture,
    /// A fixed `round(αn)` endpoint values, the rest interior, shuffled.
    Stratified,
}

impl std::fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SamplingMode::Mixture => f.write_str("mixture"),
            SamplingMode::Stratified => f.write_str("stratified"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ulinf {
    params: UlinfParams,
    continuous: UnitLindley,
}

impl Ulinf {
    pub fn new(params: UlinfParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params,
            continuous: UnitLindley::new(params.theta)?,
        })
    }

    pub fn params(&self) -> UlinfParams {
        self.params
    }

    pub fn continuous(&self) -> &UnitLindley {
        &self.continuous
    }

    /// Density with respect to counting measure at {0, 1} plus Lebesgue
    /// measure on `(0, 1)`.
    pub fn density(&self, point: UlinfPoint) -> f64 {
        let UlinfParams { alpha, p, .. } = self.params;
        match point {
            UlinfPoint::AtZero => alpha * (1.0 - p),
            UlinfPoint::AtOne => alpha * p,
            UlinfPoint::Interior(y) => (1.0 - alpha) * self.continuous.ln_pdf_interior(y).exp(),
        }
    }

    /// Right-continuous CDF with jumps `α(1−p)` at 0 and `αp` at 1.
    pub fn cdf(&self, y: f64) -> f64 {
        let UlinfParams { alpha, p, .. } = self.params;
        if y < 0.0 {
            0.0
        } else if y >= 1.0 {
            1.0
        } else {
            alpha * (1.0 - p) + (1.0 - alpha) * self.continuous.cdf(y)
        }
    }

    /// `E[Y^r] = αp + (1−α)μ_r`.
    pub fn moment(&self, r: u32) -> Result<f64> {
        let UlinfParams { alpha, p, .. } = self.params;
        let mu = self.continuous.moment(r)?;
        Ok(alpha * p + (1.0 - alpha) * mu)
    }

    pub fn mean_variance(&self) -> (f64, f64) {
        let mean = self.params.mean();
        let second = self.moment(2).expect("second moment of a valid unit-Lindley");
        (mean, (second - mean * mean).max(0.0))
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R, mode: SamplingMode) -> Vec<f64> {
        let UlinfParams { alpha, p, .. } = self.params;
        let bernoulli = |rng: &mut R| if rng.random::<f64>() < p { 1.0 } else { 0.0 };
        match mode {
            SamplingMode::Mixture => (0..n)
                .map(|_| {
                    if rng.random::<f64>() < alpha {
                        bernoulli(rng)
                    } else {
                        self.continuous.sample(rng)
                    }
                })
                .collect(),
            SamplingMode::Stratified => {
                let endpoints = stratified_endpoint_count(alpha, n);
                let mut out = Vec::with_capacity(n);
                for _ in 0..endpoints {
                    out.push(bernoulli(rng));
                }
                for _ in endpoints..n {
                    out.push(self.continuous.sample(rng));
                }
                out.shuffle(rng);
                out
            }
        }
    }
}

/// Number of endpoint values in a stratified sample of size `n`: `αn`
/// rounded half to even, so `0.25 · 50` gives 12.
pub fn stratified_endpoint_count(alpha: f64, n: usize) -> usize {
    ((alpha * n as f64).round_ties_even() as usize).min(n)
}
