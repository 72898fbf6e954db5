//! Special functions and adaptive quadrature.
//!
//! The exponential integral feeds the closed-form second moment of the
//! unit-Lindley law; the quadrature routine is the independent oracle the
//! test suites use for normalization, moment and likelihood checks.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// Exponential integral `E1(x) = ∫_x^∞ e^{-t}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    check_e1_domain(x)?;
    if x <= 1.0 {
        Ok(e1_series(x))
    } else {
        Ok(e1_continued_fraction_scaled(x) * (-x).exp())
    }
}

/// `e^x · E1(x)`, evaluated without forming `e^x` for large arguments.
pub fn scaled_exp_integral_e1(x: f64) -> Result<f64> {
    check_e1_domain(x)?;
    if x <= 1.0 {
        Ok(e1_series(x) * x.exp())
    } else {
        Ok(e1_continued_fraction_scaled(x))
    }
}

fn check_e1_domain(x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "E1 argument",
            value: x,
        })
    }
}

// E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k·k!)
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        let k = k as f64;
        term *= -x / k;
        let contrib = term / k;
        sum += contrib;
        if contrib.abs() < f64::EPSILON * sum.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

// Modified Lentz evaluation of the continued fraction for e^x E1(x).
fn e1_continued_fraction_scaled(x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            break;
        }
    }
    h
}

/// Standard normal quantile.
///
/// Acklam's rational approximation followed by one Halley step against
/// `erfc`, which brings the error well below 1e-12 across `(0, 1)`.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            what: "normal quantile probability",
            value: p,
        });
    }
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    let e = 0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (0.5 * x * x).exp();
    Ok(x - u / (1.0 + 0.5 * x * u))
}

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidArgument(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

// 15-point Kronrod abscissae with the embedded 7-point Gauss rule (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // Nodes of a tiny panel can round onto an endpoint; keep them inside.
    let (inner_lo, inner_hi) = (a.next_up(), b.next_down());
    let eval = |x: f64| -> Result<f64> {
        let x = if inner_lo <= inner_hi { x.clamp(inner_lo, inner_hi) } else { x };
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { point: vec![x] })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = eval(center - dx)?;
        let hi = eval(center + dx)?;
        f1[j] = lo;
        f2[j] = hi;
        kronrod += WGK[j] * (lo + hi);
        abs_sum += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment { a, b, value, error })
}

/// Adaptive 15-point Gauss–Kronrod integration of `f` over `(a, b)`.
///
/// The rule never evaluates the endpoints, so integrable endpoint
/// singularities are tolerated.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_with_breaks(f, &[a, b], spec)
}

/// Like [`integrate`], but seeds the subdivision with the given ordered
/// breakpoints (first and last are the integration limits).
///
/// Useful when the integrand is concentrated in a region much narrower than
/// the whole interval and a single initial panel could miss it entirely.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::InvalidArgument(
            "integration needs at least two limits".into(),
        ));
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::InvalidArgument(format!(
                "integration limits must be finite and increasing, got {w:?}"
            )));
        }
    }

    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        heap.push(kronrod15(&f, w[0], w[1])?);
    }

    let mut subdivisions = 0;
    loop {
        let (total, total_err) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if total_err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                estimate: total,
                error_bound: total_err,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Panel cannot be split further in floating point.
            return Err(Error::QuadratureNonConvergence {
                estimate: total,
                error_bound: total_err,
                subdivisions,
            });
        }
        heap.push(kronrod15(&f, worst.a, mid)?);
        heap.push(kronrod15(&f, mid, worst.b)?);
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_reference_values() {
        let e1 = exp_integral_e1(1.0).unwrap();
        assert!((e1 - 0.219_383_934_395_520_26).abs() <= 1e-12 * 0.22);
        let e10 = exp_integral_e1(10.0).unwrap();
        assert!((e10 - 4.156_968_929_685_324e-6).abs() <= 1e-12 * 4.2e-6);
        assert!(exp_integral_e1(1e-12).unwrap() > 27.0);
    }

    #[test]
    fn e1_matches_quadrature_on_both_branches() {
        // ∫_x^∞ e^{-t}/t dt with t = x/u, u ∈ (0, 1): ∫_0^1 e^{-x/u}/u du
        let spec = QuadratureSpec {
            abs_tol: 1e-15,
            rel_tol: 1e-13,
            max_subdivisions: 500,
        };
        for &x in &[0.05, 0.3, 1.0, 1.7, 4.0, 12.0] {
            let oracle = integrate(|u: f64| (-x / u).exp() / u, 0.0, 1.0, &spec).unwrap();
            let got = exp_integral_e1(x).unwrap();
            assert!(((got - oracle) / oracle).abs() < 1e-11, "x={x} {got} {oracle}");
        }
    }

    #[test]
    fn e1_rejects_nonpositive() {
        assert!(matches!(exp_integral_e1(0.0), Err(Error::Domain { .. })));
        assert!(exp_integral_e1(-1.0).is_err());
        assert!(exp_integral_e1(f64::NAN).is_err());
    }

    #[test]
    fn e1_derivative_is_minus_exp_over_x() {
        let mut x: f64 = 1e-6;
        while x <= 50.0 {
            let h = 1e-5 * x;
            let fd = (exp_integral_e1(x + h).unwrap() - exp_integral_e1(x - h).unwrap()) / (2.0 * h);
            let exact = -(-x).exp() / x;
            assert!(((fd - exact) / exact).abs() < 1e-6, "x={x}: {fd} vs {exact}");
            x *= 1.37;
        }
    }

    #[test]
    fn e2_recurrence_is_nonnegative() {
        let mut x: f64 = 1e-4;
        while x < 200.0 {
            let e2 = (-x).exp() - x * exp_integral_e1(x).unwrap();
            assert!(e2 >= -1e-300, "x={x} e2={e2}");
            x *= 1.5;
        }
    }

    #[test]
    fn scaled_e1_is_consistent() {
        for &x in &[0.2, 1.0, 3.0, 30.0] {
            let direct = exp_integral_e1(x).unwrap() * x.exp();
            let scaled = scaled_exp_integral_e1(x).unwrap();
            assert!(((direct - scaled) / scaled).abs() < 1e-13);
        }
        // e^x E1(x) ~ 1/x for large x
        let big = scaled_exp_integral_e1(1e6).unwrap();
        assert!((big * 1e6 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn normal_quantile_reference() {
        let z = normal_quantile(0.975).unwrap();
        assert!((z - 1.959_963_984_540_054).abs() < 1e-9);
        assert!(normal_quantile(0.5).unwrap().abs() < 1e-15);
        let lo = normal_quantile(1e-10).unwrap();
        assert!((lo + 6.361_340_902_404_056).abs() < 1e-9);
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
    }

    #[test]
    fn integrate_constant_and_polynomial() {
        let spec = QuadratureSpec::default();
        assert!((integrate(|_| 1.0, 0.0, 1.0, &spec).unwrap() - 1.0).abs() < 1e-14);
        let v = integrate(|x| x * x * x, -1.0, 2.0, &spec).unwrap();
        assert!((v - 3.75).abs() < 1e-12);
    }

    #[test]
    fn integrate_handles_endpoint_singularity() {
        let spec = QuadratureSpec {
            max_subdivisions: 500,
            ..Default::default()
        };
        let v = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn integrate_reports_nonconvergence() {
        let spec = QuadratureSpec {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_subdivisions: 3,
        };
        match integrate(|x: f64| (1.0 / x).sin() / x.sqrt(), 0.0, 1.0, &spec) {
            Err(Error::QuadratureNonConvergence {
                estimate,
                error_bound,
                subdivisions,
            }) => {
                assert!(estimate.is_finite());
                assert!(error_bound > 0.0);
                assert_eq!(subdivisions, 3);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn integrate_rejects_bad_input() {
        let spec = QuadratureSpec::default();
        assert!(integrate(|x| x, 1.0, 0.0, &spec).is_err());
        let bad = QuadratureSpec {
            abs_tol: 0.0,
            ..spec
        };
        assert!(integrate(|x| x, 0.0, 1.0, &bad).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(c: &[f64], x: f64) -> f64 {
            c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
        }

        proptest! {
            #[test]
            fn integrate_is_linear(
                f in prop::collection::vec(-5.0f64..5.0, 1..7),
                g in prop::collection::vec(-5.0f64..5.0, 1..7),
                a in -3.0f64..3.0,
                b in -3.0f64..3.0,
            ) {
                let spec = QuadratureSpec::default();
                let lhs = integrate(|x| a * poly(&f, x) + b * poly(&g, x), -1.0, 1.5, &spec).unwrap();
                let fi = integrate(|x| poly(&f, x), -1.0, 1.5, &spec).unwrap();
                let gi = integrate(|x| poly(&g, x), -1.0, 1.5, &spec).unwrap();
                let rhs = a * fi + b * gi;
                let tol = 1e-10 * (1.0 + a.abs() + b.abs()) * (1.0 + fi.abs() + gi.abs());
                prop_assert!((lhs - rhs).abs() <= tol, "{} vs {}", lhs, rhs);
            }
        }
    }
}
