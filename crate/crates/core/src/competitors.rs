//! Zero-and-one inflated beta (BEINF) and Kumaraswamy (ZOIK) models.
//!
//! Both share the ULINF discrete structure, so their mixing and Bernoulli
//! parameters have the same closed-form estimates; only the continuous
//! shapes need numerical fitting.

use statrs::function::beta::beta_reg;
use statrs::function::gamma::{digamma, ln_gamma};

use crate::error::{Error, Result};
use crate::inference::{information_entries, loglik_alpha, loglik_p, FitBuilder, FitResult, Model, PartitionedSample};
use crate::inflated_mixture::{UlinfParams, UlinfPoint};
use crate::optimizer::{fd_hessian, invert, maximize_1d, nelder_mead, newton_solve, OptimSettings};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeinfParams {
    pub alpha: f64,
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoikParams {
    pub lambda: f64,
    pub p: f64,
    pub a: f64,
    pub b: f64,
}

fn check_unit(what: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::Domain { what, value: v })
    }
}

fn check_shape(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value: v })
    }
}

fn ln_or_neg_inf(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else {
        f64::NEG_INFINITY
    }
}

impl BeinfParams {
    pub fn new(alpha: f64, gamma: f64, a: f64, b: f64) -> Result<Self> {
        check_unit("BEINF alpha", alpha)?;
        check_unit("BEINF gamma", gamma)?;
        check_shape("beta shape a", a)?;
        check_shape("beta shape b", b)?;
        Ok(Self { alpha, gamma, a, b })
    }

    pub fn logpdf(&self, point: UlinfPoint) -> f64 {
        match point {
            UlinfPoint::AtZero => ln_or_neg_inf(self.alpha * (1.0 - self.gamma)),
            UlinfPoint::AtOne => ln_or_neg_inf(self.alpha * self.gamma),
            UlinfPoint::Interior(y) => ln_or_neg_inf(1.0 - self.alpha) + beta_ln_pdf(y, self.a, self.b),
        }
    }

    pub fn cdf(&self, y: f64) -> f64 {
        if y < 0.0 {
            0.0
        } else if y >= 1.0 {
            1.0
        } else {
            let cont = if y == 0.0 { 0.0 } else { beta_reg(self.a, self.b, y) };
            self.alpha * (1.0 - self.gamma) + (1.0 - self.alpha) * cont
        }
    }

    /// Mean-precision form `(μ, φ) = (a/(a+b), a+b)`.
    pub fn mean_precision(&self) -> (f64, f64) {
        (self.a / (self.a + self.b), self.a + self.b)
    }
}

impl ZoikParams {
    pub fn new(lambda: f64, p: f64, a: f64, b: f64) -> Result<Self> {
        check_unit("ZOIK lambda", lambda)?;
        check_unit("ZOIK p", p)?;
        check_shape("Kumaraswamy shape a", a)?;
        check_shape("Kumaraswamy shape b", b)?;
        Ok(Self { lambda, p, a, b })
    }

    pub fn logpdf(&self, point: UlinfPoint) -> f64 {
        match point {
            UlinfPoint::AtZero => ln_or_neg_inf(self.lambda * (1.0 - self.p)),
            UlinfPoint::AtOne => ln_or_neg_inf(self.lambda * self.p),
            UlinfPoint::Interior(y) => ln_or_neg_inf(1.0 - self.lambda) + kumaraswamy_ln_pdf(y, self.a, self.b),
        }
    }

    pub fn cdf(&self, y: f64) -> f64 {
        if y < 0.0 {
            0.0
        } else if y >= 1.0 {
            1.0
        } else {
            self.lambda * (1.0 - self.p) + (1.0 - self.lambda) * kumaraswamy_cdf(y, self.a, self.b)
        }
    }
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

pub fn beta_ln_pdf(y: f64, a: f64, b: f64) -> f64 {
    (a - 1.0) * y.ln() + (b - 1.0) * (-y).ln_1p() - ln_beta(a, b)
}

/// `ln(1 − y^a)`, accurate both when `y^a` is tiny and when it is near 1.
fn ln_one_minus_pow(y: f64, a: f64) -> f64 {
    let t = a * y.ln();
    if t < -std::f64::consts::LN_2 {
        (-t.exp()).ln_1p()
    } else {
        (-t.exp_m1()).ln()
    }
}

pub fn kumaraswamy_ln_pdf(y: f64, a: f64, b: f64) -> f64 {
    a.ln() + b.ln() + (a - 1.0) * y.ln() + (b - 1.0) * ln_one_minus_pow(y, a)
}

pub fn kumaraswamy_cdf(y: f64, a: f64, b: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else if y >= 1.0 {
        1.0
    } else {
        -(b * ln_one_minus_pow(y, a)).exp_m1()
    }
}

/// Interior-only sufficient statistics for the beta likelihood.
#[derive(Debug, Clone, Copy)]
struct BetaStats {
    nc: f64,
    sum_ln_y: f64,
    sum_ln_1my: f64,
}

impl BetaStats {
    fn new(interior: &[f64]) -> Self {
        Self {
            nc: interior.len() as f64,
            sum_ln_y: interior.iter().map(|y| y.ln()).sum(),
            sum_ln_1my: interior.iter().map(|y| (-y).ln_1p()).sum(),
        }
    }

    fn loglik(&self, a: f64, b: f64) -> f64 {
        if !(a > 0.0 && b > 0.0) {
            return f64::NEG_INFINITY;
        }
        (a - 1.0) * self.sum_ln_y + (b - 1.0) * self.sum_ln_1my - self.nc * ln_beta(a, b)
    }

    fn score(&self, a: f64, b: f64) -> [f64; 2] {
        let common = digamma(a + b);
        [
            self.sum_ln_y - self.nc * (digamma(a) - common),
            self.sum_ln_1my - self.nc * (digamma(b) - common),
        ]
    }
}

/// Interior beta log-likelihood `Σ ln Beta(y; a, b)`.
pub fn beta_interior_loglik(interior: &[f64], a: f64, b: f64) -> f64 {
    BetaStats::new(interior).loglik(a, b)
}

/// Interior Kumaraswamy log-likelihood `Σ ln Kw(y; a, b)`.
pub fn kumaraswamy_interior_loglik(interior: &[f64], a: f64, b: f64) -> f64 {
    if !(a > 0.0 && b > 0.0) {
        return f64::NEG_INFINITY;
    }
    interior.iter().map(|&y| kumaraswamy_ln_pdf(y, a, b)).sum()
}

/// Fitted continuous shapes with the route that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFit {
    pub a: f64,
    pub b: f64,
    pub loglik: f64,
    pub iterations: usize,
}

/// Maximizes the interior beta log-likelihood: Newton on the digamma score
/// from a moment start, falling back to Nelder–Mead over `(ln a, ln b)`.
pub fn fit_beta_shapes(interior: &[f64]) -> Result<ShapeFit> {
    if interior.len() < 2 {
        return Err(Error::InsufficientData {
            model: "BEINF",
            needed: 2,
            found: interior.len(),
        });
    }
    let stats = BetaStats::new(interior);
    let settings = OptimSettings::default();

    let n = stats.nc;
    let mean = interior.iter().sum::<f64>() / n;
    let var = interior.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n;
    let common = mean * (1.0 - mean) / var - 1.0;
    let start = if var > 0.0 && common > 0.0 {
        [mean * common, (1.0 - mean) * common]
    } else {
        [1.0, 1.0]
    };

    let newton = newton_solve(
        |x| stats.score(x[0], x[1]).to_vec(),
        |x| x.iter().all(|v| *v > 0.0 && v.is_finite()),
        &start,
        1e-10,
        &settings,
    );
    match newton {
        Ok(root) => Ok(ShapeFit {
            a: root.x[0],
            b: root.x[1],
            loglik: stats.loglik(root.x[0], root.x[1]),
            iterations: root.iterations,
        }),
        Err(_) => {
            let nm_settings = OptimSettings {
                f_tol: 0.0,
                ..settings
            };
            let best = nelder_mead(
                |s| stats.loglik(s[0].exp(), s[1].exp()),
                &[start[0].ln(), start[1].ln()],
                &nm_settings,
            )?;
            let (a, b) = (best.x[0].exp(), best.x[1].exp());
            Ok(ShapeFit {
                a,
                b,
                loglik: stats.loglik(a, b),
                iterations: best.iterations,
            })
        }
    }
}

const KW_LOG_A_RANGE: (f64, f64) = (-6.907_755_278_982_137, 6.907_755_278_982_137);

/// Maximizes the interior Kumaraswamy log-likelihood by profiling out `b`:
/// for fixed `a`, `b̂(a) = −nc / Σ ln(1 − y^a)`; the profile is then
/// searched over `ln a ∈ [ln 1e-3, ln 1e3]`.
pub fn fit_kumaraswamy_shapes(interior: &[f64]) -> Result<ShapeFit> {
    if interior.len() < 2 {
        return Err(Error::InsufficientData {
            model: "ZOIK",
            needed: 2,
            found: interior.len(),
        });
    }
    let nc = interior.len() as f64;
    let sum_ln_y: f64 = interior.iter().map(|y| y.ln()).sum();
    let profile = |log_a: f64| {
        let a = log_a.exp();
        let b = kumaraswamy_profile_b(interior, a);
        let s: f64 = interior.iter().map(|&y| ln_one_minus_pow(y, a)).sum();
        nc * a.ln() + nc * b.ln() + (a - 1.0) * sum_ln_y + (b - 1.0) * s
    };
    let (lo, hi) = KW_LOG_A_RANGE;
    let best = maximize_1d(profile, lo, hi, &OptimSettings::default())?;
    let edge_tol = 1e-6;
    if best.x - lo < edge_tol {
        return Err(Error::BracketEdge {
            parameter: "Kumaraswamy shape a",
            edge: lo.exp(),
        });
    }
    if hi - best.x < edge_tol {
        return Err(Error::BracketEdge {
            parameter: "Kumaraswamy shape a",
            edge: hi.exp(),
        });
    }
    let a = best.x.exp();
    let b = kumaraswamy_profile_b(interior, a);
    Ok(ShapeFit {
        a,
        b,
        loglik: kumaraswamy_interior_loglik(interior, a, b),
        iterations: best.iterations,
    })
}

/// `b̂(a) = −nc / Σ ln(1 − y^a)`.
pub fn kumaraswamy_profile_b(interior: &[f64], a: f64) -> f64 {
    let s: f64 = interior.iter().map(|&y| ln_one_minus_pow(y, a)).sum();
    -(interior.len() as f64) / s
}

/// Standard errors of two shape parameters from the inverse of the
/// numerical observed information `−∇²ℓ`.
fn observed_shape_se<F: Fn(&[f64]) -> f64>(ll: F, a: f64, b: f64) -> [Option<f64>; 2] {
    let Ok(h) = fd_hessian(ll, &[a, b], &OptimSettings::default()) else {
        return [None, None];
    };
    let info = vec![vec![-h[0][0], -h[0][1]], vec![-h[1][0], -h[1][1]]];
    match invert(&info) {
        Some(cov) if cov[0][0] > 0.0 && cov[1][1] > 0.0 => [Some(cov[0][0].sqrt()), Some(cov[1][1].sqrt())],
        _ => [None, None],
    }
}

/// Discrete-part estimates shared by all three models.
fn discrete_estimates(sample: &PartitionedSample) -> (f64, f64, [Option<f64>; 2]) {
    let est = crate::inference::mle(sample);
    let dummy = UlinfParams {
        alpha: est.alpha,
        p: est.p,
        theta: 1.0,
    };
    let [ka, kp, _] = information_entries(&dummy, sample.n(), sample.nc());
    (est.alpha, est.p, [ka, kp])
}

pub fn fit_beinf(sample: &PartitionedSample, level: f64) -> Result<FitResult> {
    let shapes = fit_beta_shapes(sample.interior())?;
    let (alpha, gamma, [ka, kg]) = discrete_estimates(sample);
    let interior = sample.interior();
    let [se_a, se_b] = observed_shape_se(|x| beta_interior_loglik(interior, x[0], x[1]), shapes.a, shapes.b);
    let params = BeinfParams {
        alpha,
        gamma,
        a: shapes.a,
        b: shapes.b,
    };
    let (mu, phi) = params.mean_precision();

    let mut fb = FitBuilder::new(Model::Beinf, sample.n(), level)?;
    fb.parameter("alpha", alpha, ka, (0.0, 1.0))
        .parameter("gamma", gamma, kg, (0.0, 1.0))
        .parameter_with_se("a", shapes.a, se_a, (0.0, f64::INFINITY))
        .parameter_with_se("b", shapes.b, se_b, (0.0, f64::INFINITY))
        .derived("mu", mu)
        .derived("phi", phi);
    let loglik = loglik_alpha(alpha, sample) + loglik_p(gamma, sample) + shapes.loglik;
    Ok(fb.finish(loglik))
}

pub fn fit_zoik(sample: &PartitionedSample, level: f64) -> Result<FitResult> {
    let shapes = fit_kumaraswamy_shapes(sample.interior())?;
    let (lambda, p, [kl, kp]) = discrete_estimates(sample);
    let interior = sample.interior();
    let [se_a, se_b] = observed_shape_se(
        |x| kumaraswamy_interior_loglik(interior, x[0], x[1]),
        shapes.a,
        shapes.b,
    );
    let mut fb = FitBuilder::new(Model::Zoik, sample.n(), level)?;
    fb.parameter("lambda", lambda, kl, (0.0, 1.0))
        .parameter("p", p, kp, (0.0, 1.0))
        .parameter_with_se("a", shapes.a, se_a, (0.0, f64::INFINITY))
        .parameter_with_se("b", shapes.b, se_b, (0.0, f64::INFINITY));
    let loglik = loglik_alpha(lambda, sample) + loglik_p(p, sample) + shapes.loglik;
    Ok(fb.finish(loglik))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_io::ELEPHANTS;
    use crate::inference::partition;
    use crate::optimizer::fd_gradient;
    use crate::special_fn::{integrate, QuadratureSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tight() -> QuadratureSpec {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }

    fn elephants() -> PartitionedSample {
        partition(&ELEPHANTS).unwrap()
    }

    #[test]
    fn beinf_uniform_and_masses() {
        let p = BeinfParams::new(0.3, 0.4, 1.0, 1.0).unwrap();
        assert!((p.logpdf(UlinfPoint::Interior(0.37)) - 0.7f64.ln()).abs() < 1e-14);
        let masses = p.logpdf(UlinfPoint::AtZero).exp() + p.logpdf(UlinfPoint::AtOne).exp();
        assert!((masses - 0.3).abs() < 1e-15);
        let degenerate = BeinfParams::new(0.3, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(degenerate.logpdf(UlinfPoint::AtZero), f64::NEG_INFINITY);
    }

    #[test]
    fn beinf_normalizes() {
        for (alpha, gamma, a, b) in [(0.3, 0.5, 1.4065, 2.2685), (0.1, 0.2, 0.5, 0.7), (0.6, 0.9, 5.0, 1.3)] {
            let p = BeinfParams::new(alpha, gamma, a, b).unwrap();
            let interior = integrate(|y| p.logpdf(UlinfPoint::Interior(y)).exp(), 0.0, 1.0, &tight()).unwrap();
            let total = interior + p.logpdf(UlinfPoint::AtZero).exp() + p.logpdf(UlinfPoint::AtOne).exp();
            assert!((total - 1.0).abs() < 1e-8, "{alpha} {gamma} {a} {b}: {total}");
        }
    }

    #[test]
    fn zoik_uniform_cdf_normalization() {
        let p = ZoikParams::new(0.2, 0.5, 1.0, 1.0).unwrap();
        assert!((p.logpdf(UlinfPoint::Interior(0.81)) - 0.8f64.ln()).abs() < 1e-14);
        assert_eq!(kumaraswamy_cdf(1.0, 1.3, 2.1), 1.0);
        for (lambda, pp, a, b) in [(0.2963, 0.75, 1.3514, 2.3707), (0.1, 0.1, 0.6, 0.8), (0.5, 0.3, 4.0, 7.0)] {
            let z = ZoikParams::new(lambda, pp, a, b).unwrap();
            let interior = integrate(|y| z.logpdf(UlinfPoint::Interior(y)).exp(), 0.0, 1.0, &tight()).unwrap();
            let total = interior + z.logpdf(UlinfPoint::AtZero).exp() + z.logpdf(UlinfPoint::AtOne).exp();
            assert!((total - 1.0).abs() < 1e-8, "{total}");
        }
    }

    #[test]
    fn cdfs_agree_with_quadrature() {
        let b = BeinfParams::new(0.2, 0.3, 1.7, 2.6).unwrap();
        let z = ZoikParams::new(0.2, 0.3, 1.7, 2.6).unwrap();
        for y in [0.1, 0.45, 0.9] {
            let bi = integrate(|t| b.logpdf(UlinfPoint::Interior(t)).exp(), 0.0, y, &tight()).unwrap();
            assert!((b.cdf(y) - (0.2 * 0.7 + bi)).abs() < 1e-9);
            let zi = integrate(|t| z.logpdf(UlinfPoint::Interior(t)).exp(), 0.0, y, &tight()).unwrap();
            assert!((z.cdf(y) - (0.2 * 0.7 + zi)).abs() < 1e-9);
        }
        assert_eq!(b.cdf(1.0), 1.0);
        assert_eq!(z.cdf(1.0), 1.0);
    }

    #[test]
    fn beta_shapes_on_elephants() {
        let fit = fit_beta_shapes(elephants().interior()).unwrap();
        assert!((fit.a - 1.4065).abs() < 5e-3, "{}", fit.a);
        assert!((fit.b - 2.2685).abs() < 5e-3, "{}", fit.b);
    }

    #[test]
    fn beta_nelder_mead_agrees_with_newton() {
        let interior = elephants().interior().to_vec();
        let settings = OptimSettings {
            max_iter: 5000,
            f_tol: 0.0,
            ..Default::default()
        };
        let nm = nelder_mead(|x| beta_interior_loglik(&interior, x[0], x[1]), &[1.0, 1.0], &settings).unwrap();
        assert!((nm.x[0] - 1.4065).abs() < 5e-3);
        assert!((nm.x[1] - 2.2685).abs() < 5e-3);
    }

    #[test]
    fn beta_symmetric_data_gives_equal_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut data = Vec::new();
        for _ in 0..500 {
            let y: f64 = rng.random_range(0.05..0.95);
            data.push(y);
            data.push(1.0 - y);
        }
        let fit = fit_beta_shapes(&data).unwrap();
        assert!((fit.a - fit.b).abs() < 1e-6 * fit.a, "{} {}", fit.a, fit.b);
    }

    #[test]
    fn beta_fit_beats_perturbations_and_is_concave() {
        let interior = elephants().interior().to_vec();
        let fit = fit_beta_shapes(&interior).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let a = fit.a * rng.random_range(0.7..1.3);
            let b = fit.b * rng.random_range(0.7..1.3);
            assert!(fit.loglik >= beta_interior_loglik(&interior, a, b));
        }
        let h = fd_hessian(|x| beta_interior_loglik(&interior, x[0], x[1]), &[fit.a, fit.b], &OptimSettings::default()).unwrap();
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        assert!(h[0][0] + h[1][1] < 0.0 && det > 0.0);
    }

    #[test]
    fn kumaraswamy_shapes_on_elephants() {
        let fit = fit_kumaraswamy_shapes(elephants().interior()).unwrap();
        assert!((fit.a - 1.3514).abs() < 5e-3, "{}", fit.a);
        assert!((fit.b - 2.3707).abs() < 5e-3, "{}", fit.b);
    }

    #[test]
    fn kumaraswamy_profile_equals_joint_optimum() {
        let interior = elephants().interior().to_vec();
        let fit = fit_kumaraswamy_shapes(&interior).unwrap();
        let settings = OptimSettings {
            max_iter: 20_000,
            x_tol: 1e-12,
            f_tol: 0.0,
            fd_step: None,
        };
        let joint = nelder_mead(
            |x| kumaraswamy_interior_loglik(&interior, x[0].exp(), x[1].exp()),
            &[0.0, 0.0],
            &settings,
        )
        .unwrap();
        assert!((joint.x[0].exp() - fit.a).abs() < 1e-6, "{} {}", joint.x[0].exp(), fit.a);
        assert!((joint.x[1].exp() - fit.b).abs() < 1e-6);
    }

    #[test]
    fn kumaraswamy_recovers_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (a, b) = (2.0, 3.0);
        // Inverse CDF: y = (1 − (1 − u)^{1/b})^{1/a}
        let data: Vec<f64> = (0..100_000)
            .map(|_| {
                let u: f64 = rng.random();
                (1.0 - (1.0 - u).powf(1.0 / b)).powf(1.0 / a)
            })
            .collect();
        let fit = fit_kumaraswamy_shapes(&data).unwrap();
        let [se_a, se_b] = observed_shape_se(|x| kumaraswamy_interior_loglik(&data, x[0], x[1]), fit.a, fit.b);
        assert!((fit.a - a).abs() < 3.0 * se_a.unwrap(), "{} ± {:?}", fit.a, se_a);
        assert!((fit.b - b).abs() < 3.0 * se_b.unwrap(), "{} ± {:?}", fit.b, se_b);
    }

    #[test]
    fn kumaraswamy_edge_is_reported() {
        // Near-identical values push the shape to the top of the bracket.
        let data = vec![0.5, 0.5 + 1e-9, 0.5 - 1e-9];
        assert!(matches!(fit_kumaraswamy_shapes(&data), Err(Error::BracketEdge { .. })));
    }

    #[test]
    fn insufficient_interior() {
        let s = partition(&[0.0, 1.0, 0.4]).unwrap();
        assert!(matches!(fit_beinf(&s, 0.95), Err(Error::InsufficientData { .. })));
        assert!(matches!(fit_zoik(&s, 0.95), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn shared_discrete_estimates_and_stationarity() {
        let s = elephants();
        let b = fit_beinf(&s, 0.95).unwrap();
        let z = fit_zoik(&s, 0.95).unwrap();
        assert_eq!(b.estimates["alpha"], z.estimates["lambda"]);
        assert_eq!(b.estimates["gamma"], z.estimates["p"]);
        assert!((b.derived["mu"] - b.estimates["a"] / (b.estimates["a"] + b.estimates["b"])).abs() < 1e-15);
        let interior = s.interior();
        let gb = fd_gradient(|x| beta_interior_loglik(interior, x[0], x[1]), &[b.estimates["a"], b.estimates["b"]], &OptimSettings::default()).unwrap();
        let gz = fd_gradient(|x| kumaraswamy_interior_loglik(interior, x[0], x[1]), &[z.estimates["a"], z.estimates["b"]], &OptimSettings::default()).unwrap();
        let norm = |g: &[f64]| g.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(norm(&gb) < 1e-6 * b.loglik.abs().max(1.0));
        assert!(norm(&gz) < 1e-6 * z.loglik.abs().max(1.0));
        for fit in [&b, &z] {
            assert_eq!(fit.aic, -2.0 * fit.loglik + 8.0);
            for (name, (lo, hi)) in &fit.conf_intervals {
                let e = fit.estimates[name];
                assert!(*lo <= e && e <= *hi, "{name}");
            }
        }
    }
}
