//! Fits ULINF, BEINF and ZOIK to one sample and ranks them by AIC and BIC.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::competitors::{fit_beinf, fit_zoik, BeinfParams, ZoikParams};
use crate::error::{Error, Result};
use crate::inference::{fit_ulinf, partition, FitResult, Model};
use crate::inflated_mixture::{Ulinf, UlinfParams};

/// One model's slot: a fit, or the reason it failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSlot {
    pub model: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranking {
    pub aic: Vec<Model>,
    pub bic: Vec<Model>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Best {
    pub aic: Option<Model>,
    pub bic: Option<Model>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub level: f64,
    pub fits: Vec<FitSlot>,
    pub ranking: Ranking,
    pub best: Best,
}

impl ComparisonReport {
    pub fn fit(&self, model: Model) -> Option<&FitResult> {
        self.fits.iter().find(|s| s.model == model)?.fit.as_ref()
    }

    pub fn successful(&self) -> impl Iterator<Item = &FitResult> {
        self.fits.iter().filter_map(|s| s.fit.as_ref())
    }
}

fn rank_by(fits: &[&FitResult], criterion: impl Fn(&FitResult) -> f64) -> Vec<Model> {
    let mut order: Vec<&FitResult> = fits.iter().copied().filter(|f| criterion(f).is_finite()).collect();
    order.sort_by(|a, b| {
        criterion(a)
            .total_cmp(&criterion(b))
            .then(a.model.num_params().cmp(&b.model.num_params()))
            .then(a.model.name().cmp(b.model.name()))
    });
    order.into_iter().map(|f| f.model).collect()
}

pub fn compare(sample: &[f64], level: f64) -> Result<ComparisonReport> {
    if sample.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let part = partition(sample)?;
    // Settles an invalid level up front rather than in three failure slots.
    crate::inference::two_sided_z(level)?;

    let fits: Vec<FitSlot> = Model::ALL
        .into_iter()
        .map(|model| {
            let outcome = match model {
                Model::Ulinf => fit_ulinf(&part, level),
                Model::Beinf => fit_beinf(&part, level),
                Model::Zoik => fit_zoik(&part, level),
            };
            match outcome {
                Ok(fit) => FitSlot {
                    model,
                    fit: Some(fit),
                    error: None,
                },
                Err(e) => FitSlot {
                    model,
                    fit: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let ok: Vec<&FitResult> = fits.iter().filter_map(|s| s.fit.as_ref()).collect();
    let ranking = Ranking {
        aic: rank_by(&ok, |f| f.aic),
        bic: rank_by(&ok, |f| f.bic),
    };
    let best = Best {
        aic: ranking.aic.first().copied(),
        bic: ranking.bic.first().copied(),
    };
    Ok(ComparisonReport {
        n: part.n(),
        level,
        fits,
        ranking,
        best,
    })
}

/// Fitted mixed distribution rebuilt from a [`FitResult`].
#[derive(Debug, Clone)]
pub enum FittedModel {
    Ulinf(Ulinf),
    Beinf(BeinfParams),
    Zoik(ZoikParams),
}

impl FittedModel {
    pub fn from_fit(fit: &FitResult) -> Result<Self> {
        let get = |name: &str| {
            fit.estimates
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("{} fit lacks estimate `{name}`", fit.model)))
        };
        Ok(match fit.model {
            Model::Ulinf => FittedModel::Ulinf(Ulinf::new(UlinfParams::new(get("alpha")?, get("p")?, get("theta")?)?)?),
            Model::Beinf => FittedModel::Beinf(BeinfParams::new(get("alpha")?, get("gamma")?, get("a")?, get("b")?)?),
            Model::Zoik => FittedModel::Zoik(ZoikParams::new(get("lambda")?, get("p")?, get("a")?, get("b")?)?),
        })
    }

    pub fn cdf(&self, y: f64) -> f64 {
        match self {
            FittedModel::Ulinf(m) => m.cdf(y),
            FittedModel::Beinf(m) => m.cdf(y),
            FittedModel::Zoik(m) => m.cdf(y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdfRow {
    pub y: f64,
    pub ecdf: f64,
    pub cdf_ulinf: Option<f64>,
    pub cdf_beinf: Option<f64>,
    pub cdf_zoik: Option<f64>,
}

impl CdfRow {
    pub fn fitted(&self, model: Model) -> Option<f64> {
        match model {
            Model::Ulinf => self.cdf_ulinf,
            Model::Beinf => self.cdf_beinf,
            Model::Zoik => self.cdf_zoik,
        }
    }
}

/// Empirical and fitted CDFs on `grid_size` evenly spaced points from 0 to
/// 1 inclusive. Columns of models without a fit are `None`.
pub fn ecdf_and_fitted_cdfs(sample: &[f64], fits: &ComparisonReport, grid_size: usize) -> Result<Vec<CdfRow>> {
    if grid_size < 2 {
        return Err(Error::InvalidArgument(format!(
            "CDF grid needs at least 2 points, got {grid_size}"
        )));
    }
    if sample.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;

    let model = |m: Model| -> Result<Option<FittedModel>> { fits.fit(m).map(FittedModel::from_fit).transpose() };
    let (u, b, z) = (model(Model::Ulinf)?, model(Model::Beinf)?, model(Model::Zoik)?);

    let last = (grid_size - 1) as f64;
    Ok((0..grid_size)
        .map(|i| {
            let y = if i + 1 == grid_size { 1.0 } else { i as f64 / last };
            let at_or_below = sorted.partition_point(|&v| v <= y);
            CdfRow {
                y,
                ecdf: at_or_below as f64 / n,
                cdf_ulinf: u.as_ref().map(|m| m.cdf(y)),
                cdf_beinf: b.as_ref().map(|m| m.cdf(y)),
                cdf_zoik: z.as_ref().map(|m| m.cdf(y)),
            }
        })
        .collect())
}

/// `max |ecdf − F̂|` over the grid for one model.
pub fn max_ecdf_deviation(rows: &[CdfRow], model: Model) -> Option<f64> {
    rows.iter()
        .map(|r| r.fitted(model).map(|f| (r.ecdf - f).abs()))
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
}

pub fn cdf_table_to_csv(rows: &[CdfRow]) -> String {
    let cell = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |v| v.to_string());
    let mut out = String::from("y,ecdf,cdf_ulinf,cdf_beinf,cdf_zoik\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.y,
            r.ecdf,
            cell(r.cdf_ulinf),
            cell(r.cdf_beinf),
            cell(r.cdf_zoik)
        );
    }
    out
}

/// One row per model: loglik, AIC, BIC and rank under each criterion.
pub fn report_to_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("model,k,loglik,aic,bic,rank_aic,rank_bic,error\n");
    let rank = |list: &[Model], m: Model| {
        list.iter()
            .position(|&x| x == m)
            .map_or_else(String::new, |i| (i + 1).to_string())
    };
    for slot in &report.fits {
        let m = slot.model;
        match &slot.fit {
            Some(f) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},",
                    m,
                    m.num_params(),
                    f.loglik,
                    f.aic,
                    f.bic,
                    rank(&report.ranking.aic, m),
                    rank(&report.ranking.bic, m)
                );
            }
            None => {
                let reason = slot.error.as_deref().unwrap_or("").replace('"', "'");
                let _ = writeln!(out, "{},{},,,,,,\"{}\"", m, m.num_params(), reason);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_io::{generate_pseudo, PseudoLayout, ELEPHANTS};

    #[test]
    fn elephants_shared_discrete_estimates() {
        let r = compare(&ELEPHANTS, 0.95).unwrap();
        assert_eq!(r.fits.len(), 3);
        let u = r.fit(Model::Ulinf).unwrap();
        let b = r.fit(Model::Beinf).unwrap();
        let z = r.fit(Model::Zoik).unwrap();
        for (fit, a, p) in [(u, "alpha", "p"), (b, "alpha", "gamma"), (z, "lambda", "p")] {
            assert_eq!(fit.estimates[a], 8.0 / 27.0);
            assert_eq!(fit.estimates[p], 0.75);
        }
        assert_eq!(r.ranking.aic.len(), 3);
        assert_eq!(r.best.aic, r.ranking.aic.first().copied());
    }

    #[test]
    fn ranking_matches_stored_values() {
        let r = compare(&ELEPHANTS, 0.9).unwrap();
        for list in [&r.ranking.aic, &r.ranking.bic] {
            assert_eq!(list.len(), 3);
        }
        let aics: Vec<f64> = r.ranking.aic.iter().map(|m| r.fit(*m).unwrap().aic).collect();
        let bics: Vec<f64> = r.ranking.bic.iter().map(|m| r.fit(*m).unwrap().bic).collect();
        assert!(aics.windows(2).all(|w| w[0] <= w[1]));
        assert!(bics.windows(2).all(|w| w[0] <= w[1]));
        for f in r.successful() {
            let k = f.model.num_params() as f64;
            assert_eq!(f.aic - (-2.0 * f.loglik), 2.0 * k);
            assert!((f.bic - (-2.0 * f.loglik) - k * (f.n as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn pseudo_dataset_prefers_ulinf() {
        let d = generate_pseudo(99, PseudoLayout::default()).unwrap();
        let r = compare(&d.values, 0.95).unwrap();
        assert_eq!(r.best.aic, Some(Model::Ulinf));
        assert_eq!(r.best.bic, Some(Model::Ulinf));
    }

    #[test]
    fn single_interior_point_degrades() {
        let r = compare(&[0.0, 0.4, 1.0], 0.95).unwrap();
        assert!(r.fit(Model::Ulinf).is_some());
        for m in [Model::Beinf, Model::Zoik] {
            let slot = r.fits.iter().find(|s| s.model == m).unwrap();
            assert!(slot.fit.is_none());
            assert!(slot.error.as_ref().unwrap().contains("needs at least"), "{:?}", slot.error);
        }
        assert_eq!(r.ranking.aic, vec![Model::Ulinf]);
        assert_eq!(r.best.bic, Some(Model::Ulinf));
    }

    #[test]
    fn empty_and_invalid_samples() {
        assert!(matches!(compare(&[], 0.95), Err(Error::EmptyDataset)));
        assert!(matches!(compare(&[0.2, 1.5], 0.95), Err(Error::OutOfRange { index: 1, .. })));
        assert!(compare(&[0.2, 0.3], 1.5).is_err());
    }

    #[test]
    fn duplicating_interior_points_keeps_identities() {
        let mut data = ELEPHANTS.to_vec();
        data.extend([0.3, 0.3, 0.3, 0.3]);
        let base = compare(&ELEPHANTS, 0.95).unwrap();
        let r = compare(&data, 0.95).unwrap();
        for f in r.successful() {
            assert_eq!(f.n, 31);
            let k = f.model.num_params() as f64;
            assert!((f.bic + 2.0 * f.loglik - k * 31f64.ln()).abs() < 1e-9);
        }
        assert_ne!(base.fit(Model::Ulinf).unwrap().bic, r.fit(Model::Ulinf).unwrap().bic);
    }

    #[test]
    fn tie_break_prefers_fewer_parameters_then_name() {
        let template = compare(&ELEPHANTS, 0.95).unwrap();
        let mut fits: Vec<FitResult> = template.successful().cloned().collect();
        for f in &mut fits {
            f.aic = 10.0;
        }
        let refs: Vec<&FitResult> = fits.iter().collect();
        assert_eq!(rank_by(&refs, |f| f.aic), vec![Model::Ulinf, Model::Beinf, Model::Zoik]);
    }

    #[test]
    fn cdf_grid_endpoints_and_jumps() {
        let r = compare(&ELEPHANTS, 0.95).unwrap();
        let rows = ecdf_and_fitted_cdfs(&ELEPHANTS, &r, 101).unwrap();
        assert_eq!(rows.len(), 101);
        assert_eq!(rows[0].y, 0.0);
        assert!((rows[0].ecdf - 2.0 / 27.0).abs() < 1e-15);
        let last = rows.last().unwrap();
        assert_eq!(last.y, 1.0);
        for v in [Some(last.ecdf), last.cdf_ulinf, last.cdf_beinf, last.cdf_zoik] {
            assert_eq!(v, Some(1.0));
        }
        // Fitted mass at zero, shared by all three models.
        let zero_mass = (8.0 / 27.0) * 0.25;
        for m in Model::ALL {
            assert!((rows[0].fitted(m).unwrap() - zero_mass).abs() < 1e-12);
        }
        assert!(rows.windows(2).all(|w| w[0].ecdf <= w[1].ecdf));
        let dev: Vec<Option<f64>> = Model::ALL.iter().map(|&m| max_ecdf_deviation(&rows, m)).collect();
        eprintln!("max |ecdf - cdf| on elephants (ULINF, BEINF, ZOIK): {dev:?}");
        assert!(dev.iter().all(|d| d.is_some_and(|d| d < 0.5)));

        let csv = cdf_table_to_csv(&rows);
        assert!(csv.starts_with("y,ecdf,cdf_ulinf,cdf_beinf,cdf_zoik\n"));
        assert_eq!(csv.lines().count(), 102);
        assert!(ecdf_and_fitted_cdfs(&ELEPHANTS, &r, 1).is_err());
    }

    #[test]
    fn cdf_grid_with_failed_fits() {
        let data = [0.0, 0.4, 1.0];
        let r = compare(&data, 0.95).unwrap();
        let rows = ecdf_and_fitted_cdfs(&data, &r, 3).unwrap();
        assert!(rows.iter().all(|r| r.cdf_beinf.is_none() && r.cdf_ulinf.is_some()));
        assert!(cdf_table_to_csv(&rows).contains("NA"));
        assert_eq!(max_ecdf_deviation(&rows, Model::Zoik), None);
        let csv = report_to_csv(&r);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.contains("ULINF,3,"));
    }
}
