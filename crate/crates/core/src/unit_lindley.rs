//! The unit-Lindley distribution on `(0, 1)`.
//!
//! `Y = X / (1 + X)` with `X ~ Lindley(θ)`. Density
//! `θ²/(1+θ) · (1-y)^{-3} · exp(-θy/(1-y))`.

use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{Error, Result};
use crate::special_fn::{integrate_with_breaks, scaled_exp_integral_e1, QuadratureSpec};

/// Above this θ the closed-form second moment loses too many digits to
/// cancellation and quadrature takes over.
const CLOSED_FORM_MU2_MAX_THETA: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitLindley {
    theta: f64,
    log_norm: f64,
    exp: Exp<f64>,
}

impl UnitLindley {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::Domain {
                what: "unit-Lindley theta",
                value: theta,
            });
        }
        let exp = Exp::new(theta).map_err(|_| Error::Domain {
            what: "unit-Lindley theta",
            value: theta,
        })?;
        Ok(Self {
            theta,
            log_norm: 2.0 * theta.ln() - theta.ln_1p(),
            exp,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Log density for `y` strictly inside `(0, 1)`, without domain checks.
    pub(crate) fn ln_pdf_interior(&self, y: f64) -> f64 {
        self.log_norm - 3.0 * (-y).ln_1p() - self.theta * y / (1.0 - y)
    }

    pub fn ln_pdf(&self, y: f64) -> Result<f64> {
        check_interior(y)?;
        Ok(self.ln_pdf_interior(y))
    }

    /// Density. Underflows to exactly 0 near `y = 1` instead of overflowing.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        check_interior(y)?;
        Ok(self.ln_pdf_interior(y).exp())
    }

    /// CDF, clamped to 0 below the support and 1 above it.
    pub fn cdf(&self, y: f64) -> f64 {
        if y.is_nan() {
            return f64::NAN;
        }
        if y <= 0.0 {
            return 0.0;
        }
        if y >= 1.0 {
            return 1.0;
        }
        let x = y / (1.0 - y);
        let tx = self.theta * x;
        let value = -(-tx).exp_m1() - tx / (1.0 + self.theta) * (-tx).exp();
        value.clamp(0.0, 1.0)
    }

    /// Quantile by bisection on the CDF.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain {
                what: "unit-Lindley quantile probability",
                value: u,
            });
        }
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        let mut mid = 0.5;
        for _ in 0..2000 {
            mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let diff = self.cdf(mid) - u;
            if diff.abs() <= 1e-14 {
                break;
            }
            if diff < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(mid)
    }

    /// Draws `n` variates; see the [`Distribution`] impl for the construction.
    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    pub fn mean(&self) -> f64 {
        1.0 / (1.0 + self.theta)
    }

    /// Closed form `μ2 = (θ² e^θ E1(θ) − θ + 1) / (1 + θ)`.
    pub fn second_moment_closed_form(&self) -> f64 {
        let t = self.theta;
        let scaled = scaled_exp_integral_e1(t).expect("theta is positive");
        (t * t * scaled - t + 1.0) / (1.0 + t)
    }

    /// `E[Y^r]` by adaptive quadrature.
    pub fn moment_by_quadrature(&self, r: u32, spec: &QuadratureSpec) -> Result<f64> {
        let breaks = self.quadrature_breaks();
        integrate_with_breaks(
            |y| y.powi(r as i32) * self.ln_pdf_interior(y).exp(),
            &breaks,
            spec,
        )
    }

    /// Raw moment `E[Y^r]`, `r ≥ 1`.
    pub fn moment(&self, r: u32) -> Result<f64> {
        match r {
            0 => Err(Error::InvalidArgument("moment order must be at least 1".into())),
            1 => Ok(self.mean()),
            2 if self.theta <= CLOSED_FORM_MU2_MAX_THETA => Ok(self.second_moment_closed_form()),
            _ => self.moment_by_quadrature(r, &QuadratureSpec::default()),
        }
    }

    pub fn variance(&self) -> Result<f64> {
        let m = self.mean();
        Ok(self.moment(2)? - m * m)
    }

    /// Panel boundaries on `(0, 1)` that follow the scale `1/θ` of the
    /// underlying Lindley variable, so concentrated densities are not missed.
    pub(crate) fn quadrature_breaks(&self) -> Vec<f64> {
        let mut pts = vec![0.0];
        for c in [0.25, 1.0, 3.0, 10.0, 30.0, 100.0] {
            let x = c / self.theta;
            let y = x / (1.0 + x);
            if y > *pts.last().unwrap() && y < 1.0 {
                pts.push(y);
            }
        }
        pts.push(1.0);
        pts
    }
}

/// Lindley composition: with probability `θ/(1+θ)` an `Exp(θ)` draw, else
/// the sum of two independent `Exp(θ)` draws; then `Y = X/(1+X)`.
impl Distribution<f64> for UnitLindley {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let p_exp = self.theta / (1.0 + self.theta);
        loop {
            let x = if rng.random::<f64>() < p_exp {
                self.exp.sample(rng)
            } else {
                self.exp.sample(rng) + self.exp.sample(rng)
            };
            let y = x / (1.0 + x);
            if y > 0.0 && y < 1.0 {
                return y;
            }
        }
    }
}

fn check_interior(y: f64) -> Result<()> {
    if y > 0.0 && y < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "unit-Lindley support point",
            value: y,
        })
    }
}
