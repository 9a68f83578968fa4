//! Monte Carlo generator for the multifactor panel
//!
//! ```text
//! tfp_it = a_i + phi tfp_{i,t-1} + b' x_it + b1' x_{i,t-1} + g_i' f_t + e_it
//! rd_it  = Gd_i' f_t + v_it
//! rf_it  = Gf_i' f_t + s_it
//! ```
//!
//! where only the first `floor(N^alpha)` units carry nonzero `g_i`, and an
//! experiment runner that measures estimator bias and residual CD rejection.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::cd::cd_test;
use crate::dynamic::{fit_dynamic, DynamicSpec};
use crate::error::{invalid, Result};
use crate::panel::{PanelColumn, PanelDataset};
use crate::statics::{fit_static, StaticSpec};

pub const DEPENDENT: &str = "tfp";
pub const REGRESSORS: [&str; 2] = ["rd", "rf"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorLaw {
    IidNormal,
    Ar1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FactorDGPConfig {
    pub n_units: usize,
    pub n_periods: usize,
    /// Number of factors.
    pub m: usize,
    pub alpha: f64,
    /// Contemporaneous slopes on `rd`, `rf`.
    pub beta_true: [f64; 2],
    /// Slopes on the first lags of `rd`, `rf`.
    pub beta_lag: [f64; 2],
    /// Coefficient on the lagged dependent variable.
    pub phi: f64,
    /// Standard deviation of unit-specific slope deviations.
    pub slope_sd: f64,
    /// Standard deviation of unit intercepts.
    pub intercept_sd: f64,
    /// Bounds of the uniform law for the error loadings `g_i`.
    pub gamma_bounds: (f64, f64),
    /// Uniform bounds for `Gd_i` when loadings are not correlated.
    pub gamma_d_bounds: (f64, f64),
    /// Uniform bounds for `Gf_i` when loadings are not correlated.
    pub gamma_f_bounds: (f64, f64),
    /// Draw `Gd_i = g_i + noise`, `Gf_i = g_i + noise`.
    pub correlate_loadings: bool,
    pub loading_noise_sd: f64,
    pub factor_law: FactorLaw,
    pub factor_rho: f64,
    pub sd_eps: f64,
    pub sd_v: f64,
    pub sd_s: f64,
    /// AR(1) coefficient of the idiosyncratic regressor components.
    pub regressor_rho: f64,
    /// Discarded start-up periods.
    pub burn_in: usize,
    pub seed: u64,
}

impl Default for FactorDGPConfig {
    fn default() -> Self {
        Self {
            n_units: 50,
            n_periods: 50,
            m: 1,
            alpha: 1.0,
            beta_true: [0.5, 0.3],
            beta_lag: [0.0, 0.0],
            phi: 0.0,
            slope_sd: 0.0,
            intercept_sd: 0.0,
            gamma_bounds: (-1.0, 3.0),
            gamma_d_bounds: (0.0, 0.0),
            gamma_f_bounds: (0.0, 0.0),
            correlate_loadings: true,
            loading_noise_sd: 0.5,
            factor_law: FactorLaw::Ar1,
            factor_rho: 0.5,
            sd_eps: 1.0,
            sd_v: 1.0,
            sd_s: 1.0,
            regressor_rho: 0.0,
            burn_in: 50,
            seed: 1,
        }
    }
}

impl FactorDGPConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_units < 2 || self.n_periods < 2 {
            return Err(invalid("the panel needs at least 2 units and 2 periods"));
        }
        if self.m < 1 {
            return Err(invalid("at least one factor is required"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(invalid(format!("alpha must lie in [0, 1], got {}", self.alpha)));
        }
        if !(self.sd_eps > 0.0 && self.sd_v > 0.0 && self.sd_s > 0.0) {
            return Err(invalid("idiosyncratic standard deviations must be positive"));
        }
        if self.slope_sd < 0.0 || self.intercept_sd < 0.0 || self.loading_noise_sd < 0.0 {
            return Err(invalid("dispersion parameters must be nonnegative"));
        }
        for (name, (lo, hi)) in [
            ("gamma_bounds", self.gamma_bounds),
            ("gamma_d_bounds", self.gamma_d_bounds),
            ("gamma_f_bounds", self.gamma_f_bounds),
        ] {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(invalid(format!("{name}: lower bound exceeds upper bound")));
            }
        }
        for (name, r) in [
            ("phi", self.phi),
            ("factor_rho", self.factor_rho),
            ("regressor_rho", self.regressor_rho),
        ] {
            if r.abs() >= 1.0 {
                return Err(invalid(format!("{name} must lie in (-1, 1), got {r}")));
            }
        }
        Ok(())
    }

    /// `floor(N^alpha)`: units with nonzero error loadings.
    pub fn loaded_units(&self) -> usize {
        ((self.n_units as f64).powf(self.alpha) + 1e-9).floor() as usize
    }

    /// Long-run slopes `(b + b1) / (1 - phi)`.
    pub fn long_run(&self) -> [f64; 2] {
        [0, 1].map(|j| (self.beta_true[j] + self.beta_lag[j]) / (1.0 - self.phi))
    }

    /// `key = value` lines describing the configuration.
    pub fn echo(&self) -> Vec<String> {
        let law = match self.factor_law {
            FactorLaw::IidNormal => "iid_normal".to_string(),
            FactorLaw::Ar1 => format!("ar1 (rho = {})", self.factor_rho),
        };
        vec![
            format!("n_units = {}", self.n_units),
            format!("n_periods = {}", self.n_periods),
            format!("m = {}", self.m),
            format!("alpha = {} (loaded units = {})", self.alpha, self.loaded_units()),
            format!("beta_true = {:?}", self.beta_true),
            format!("beta_lag = {:?}", self.beta_lag),
            format!("phi = {}", self.phi),
            format!("slope_sd = {}", self.slope_sd),
            format!("intercept_sd = {}", self.intercept_sd),
            format!("gamma_bounds = {:?}", self.gamma_bounds),
            format!("gamma_d_bounds = {:?}", self.gamma_d_bounds),
            format!("gamma_f_bounds = {:?}", self.gamma_f_bounds),
            format!("correlate_loadings = {}", self.correlate_loadings),
            format!("loading_noise_sd = {}", self.loading_noise_sd),
            format!("factor_law = {law} [modelling choice]"),
            format!("sd_eps = {}, sd_v = {}, sd_s = {}", self.sd_eps, self.sd_v, self.sd_s),
            format!("regressor_rho = {}", self.regressor_rho),
            format!("burn_in = {}", self.burn_in),
            format!("seed = {}", self.seed),
        ]
    }
}

/// What the generator put into a panel.
#[derive(Debug, Clone)]
pub struct DgpTruth {
    pub beta: [f64; 2],
    pub long_run: [f64; 2],
    pub loaded_units: usize,
    /// `g_i' f_t + e_it`.
    pub errors: PanelColumn,
    /// `N x m` error loadings after zeroing.
    pub gamma: Vec<Vec<f64>>,
    /// `m` factor paths over the kept periods.
    pub factors: Vec<Vec<f64>>,
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        // keep the draw count independent of the bounds
        let _: f64 = rng.random();
        lo
    } else {
        Uniform::new(lo, hi).map(|u| u.sample(rng)).unwrap_or(lo)
    }
}

fn normal(rng: &mut ChaCha8Rng, sd: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    sd * z
}

fn ar_path(rng: &mut ChaCha8Rng, len: usize, rho: f64, sd: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    // stationary start
    let mut level = normal(rng, sd / (1.0 - rho * rho).sqrt());
    for _ in 0..len {
        out.push(level);
        level = rho * level + normal(rng, sd);
    }
    out
}

/// Panel from the configured seed (replication stream 0).
pub fn generate_dgp(config: &FactorDGPConfig) -> Result<(PanelDataset, DgpTruth)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    generate_with_rng(config, &mut rng)
}

pub fn generate_with_rng(config: &FactorDGPConfig, rng: &mut ChaCha8Rng) -> Result<(PanelDataset, DgpTruth)> {
    config.validate()?;
    let (n, t, m) = (config.n_units, config.n_periods, config.m);
    let len = t + config.burn_in;

    let factor_rho = match config.factor_law {
        FactorLaw::IidNormal => 0.0,
        FactorLaw::Ar1 => config.factor_rho,
    };
    let factors: Vec<Vec<f64>> = (0..m).map(|_| ar_path(rng, len, factor_rho, 1.0)).collect();

    // Every unit draws its loadings so that alpha only decides which are zeroed.
    let loaded = config.loaded_units();
    let mut gamma = Vec::with_capacity(n);
    let mut gamma_d = Vec::with_capacity(n);
    let mut gamma_f = Vec::with_capacity(n);
    for _ in 0..n {
        let g: Vec<f64> = (0..m).map(|_| uniform(rng, config.gamma_bounds)).collect();
        let (gd, gf): (Vec<f64>, Vec<f64>) = g
            .iter()
            .map(|&gj| {
                let nd = normal(rng, config.loading_noise_sd);
                let nf = normal(rng, config.loading_noise_sd);
                let ud = uniform(rng, config.gamma_d_bounds);
                let uf = uniform(rng, config.gamma_f_bounds);
                if config.correlate_loadings {
                    (gj + nd, gj + nf)
                } else {
                    (ud, uf)
                }
            })
            .unzip();
        gamma.push(g);
        gamma_d.push(gd);
        gamma_f.push(gf);
    }
    for g in gamma.iter_mut().skip(loaded) {
        g.iter_mut().for_each(|v| *v = 0.0);
    }

    let slope_noise = Normal::new(0.0, config.slope_sd.max(f64::MIN_POSITIVE)).map_err(|e| invalid(e.to_string()))?;
    let mut tfp = Vec::with_capacity(n);
    let mut rd = Vec::with_capacity(n);
    let mut rf = Vec::with_capacity(n);
    let mut errors = Vec::with_capacity(n);
    for i in 0..n {
        let a = normal(rng, config.intercept_sd);
        let b: Vec<f64> = config
            .beta_true
            .iter()
            .map(|b| {
                if config.slope_sd > 0.0 {
                    b + slope_noise.sample(rng)
                } else {
                    *b
                }
            })
            .collect();
        let v = ar_path(rng, len, config.regressor_rho, config.sd_v);
        let s = ar_path(rng, len, config.regressor_rho, config.sd_s);
        let eps: Vec<f64> = (0..len).map(|_| normal(rng, config.sd_eps)).collect();
        let load = |w: &[f64], tt: usize| -> f64 { (0..m).map(|j| w[j] * factors[j][tt]).sum() };
        let xd: Vec<f64> = (0..len).map(|tt| load(&gamma_d[i], tt) + v[tt]).collect();
        let xf: Vec<f64> = (0..len).map(|tt| load(&gamma_f[i], tt) + s[tt]).collect();
        let u: Vec<f64> = (0..len).map(|tt| load(&gamma[i], tt) + eps[tt]).collect();
        let mut y = Vec::with_capacity(len);
        let mut prev = a / (1.0 - config.phi);
        for tt in 0..len {
            let mut yt = a + config.phi * prev + b[0] * xd[tt] + b[1] * xf[tt] + u[tt];
            if tt > 0 {
                yt += config.beta_lag[0] * xd[tt - 1] + config.beta_lag[1] * xf[tt - 1];
            }
            y.push(yt);
            prev = yt;
        }
        let keep = |v: Vec<f64>| v[config.burn_in..].to_vec();
        tfp.push(keep(y));
        rd.push(keep(xd));
        rf.push(keep(xf));
        errors.push(keep(u));
    }

    let units: Vec<String> = (0..n).map(|i| format!("u{:03}", i + 1)).collect();
    let times: Vec<i64> = (1..=t as i64).collect();
    let ds = PanelDataset::new(units, times)?
        .with(DEPENDENT, PanelColumn::from_values(&tfp)?)?
        .with(REGRESSORS[0], PanelColumn::from_values(&rd)?)?
        .with(REGRESSORS[1], PanelColumn::from_values(&rf)?)?;
    let truth = DgpTruth {
        beta: config.beta_true,
        long_run: config.long_run(),
        loaded_units: loaded,
        errors: PanelColumn::from_values(&errors)?,
        gamma,
        factors: factors.iter().map(|f| f[config.burn_in..].to_vec()).collect(),
    };
    Ok((ds, truth))
}

/// An estimator run inside an experiment. Static estimators are scored on
/// the contemporaneous slopes, dynamic ones on the long-run slopes.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentEstimator {
    Static(StaticSpec),
    Dynamic(DynamicSpec),
}

impl ExperimentEstimator {
    pub fn label(&self) -> String {
        match self {
            ExperimentEstimator::Static(s) if s.trend => format!("{} (trend)", s.estimator.label()),
            ExperimentEstimator::Static(s) => s.estimator.label().to_string(),
            ExperimentEstimator::Dynamic(d) => format!("{} p={}", d.estimator.label(), d.p),
        }
    }

    /// Static specification of `tfp` on `rd`, `rf`.
    pub fn static_on_dgp(estimator: crate::statics::StaticEstimator) -> Self {
        ExperimentEstimator::Static(StaticSpec::new(DEPENDENT, &REGRESSORS, estimator))
    }

    pub fn dynamic_on_dgp(estimator: crate::dynamic::DynamicEstimator, p: usize) -> Self {
        ExperimentEstimator::Dynamic(DynamicSpec::new(DEPENDENT, &REGRESSORS, p, estimator))
    }

    fn run(&self, ds: &PanelDataset) -> Result<(Vec<f64>, Option<bool>)> {
        match self {
            ExperimentEstimator::Static(spec) => {
                let r = fit_static(ds, spec)?;
                Ok((r.aggregate_coefficients, r.cd.map(|c| c.rejects(0.05))))
            }
            ExperimentEstimator::Dynamic(spec) => {
                let r = fit_dynamic(ds, spec)?;
                Ok((
                    r.long_run.iter().map(|e| e.value).collect(),
                    r.cd.map(|c| c.rejects(0.05)),
                ))
            }
        }
    }

    fn truth(&self, truth: &DgpTruth) -> [f64; 2] {
        match self {
            ExperimentEstimator::Static(_) => truth.beta,
            ExperimentEstimator::Dynamic(_) => truth.long_run,
        }
    }
}

/// Summary for one estimator and coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientReport {
    pub estimator: String,
    pub coefficient: String,
    pub truth: f64,
    pub mean_estimate: f64,
    pub mean_bias: f64,
    /// `sd / sqrt(reps)`; `None` with fewer than two successful replications.
    pub mc_se: Option<f64>,
    pub rmse: f64,
    /// Share of replications whose residual CD test rejects at 5%.
    pub cd_rejection_rate: Option<f64>,
    pub failures: usize,
    pub successes: usize,
}

impl CoefficientReport {
    /// `|mean bias| / MC SE`.
    pub fn bias_in_mc_se(&self) -> Option<f64> {
        self.mc_se.map(|s| self.mean_bias.abs() / s)
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub replications: usize,
    pub rows: Vec<CoefficientReport>,
    /// CD rejection rate at 5% on the true error panel.
    pub true_error_cd_rejection_rate: Option<f64>,
    pub config: FactorDGPConfig,
    /// Per-replication estimates, `[estimator][replication]`, `None` on failure.
    pub estimates: Vec<Vec<Option<Vec<f64>>>>,
}

impl ExperimentReport {
    pub fn row(&self, estimator: &str, coefficient: &str) -> Option<&CoefficientReport> {
        self.rows
            .iter()
            .find(|r| r.estimator == estimator && r.coefficient == coefficient)
    }

    pub fn to_delimited(&self) -> String {
        let mut out = String::from(
            "estimator,coefficient,truth,mean_estimate,mean_bias,mc_se,rmse,cd_rejection_rate,failures,replications\n",
        );
        let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| format!("{x:.6}"));
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{},{:.6},{},{},{}",
                r.estimator,
                r.coefficient,
                r.truth,
                r.mean_estimate,
                r.mean_bias,
                opt(r.mc_se),
                r.rmse,
                opt(r.cd_rejection_rate),
                r.failures,
                self.replications
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Monte Carlo experiment: {} replications", self.replications);
        for line in self.config.echo() {
            let _ = writeln!(out, "  {line}");
        }
        if let Some(rate) = self.true_error_cd_rejection_rate {
            let _ = writeln!(out, "CD rejection rate on true errors: {rate:.3}");
        }
        for r in &self.rows {
            let se = match r.mc_se {
                Some(s) => format!("{s:.4}"),
                None => "undefined (fewer than 2 replications)".to_string(),
            };
            let cd = r
                .cd_rejection_rate
                .map_or_else(|| "NA".to_string(), |c| format!("{c:.3}"));
            let _ = writeln!(
                out,
                "{:<16} {:<4} bias {:>9.4}  MC SE {}  RMSE {:.4}  CD rejections {}  failures {}",
                r.estimator, r.coefficient, r.mean_bias, se, r.rmse, cd, r.failures
            );
        }
        out
    }
}

struct Replication {
    estimates: Vec<Option<(Vec<f64>, Option<bool>)>>,
    true_cd_reject: Option<bool>,
}

/// Runs `reps` replications; replication `r` draws from stream `r` of the
/// configured seed, so results do not depend on the worker count.
pub fn run_experiment(
    config: &FactorDGPConfig,
    estimators: &[ExperimentEstimator],
    reps: usize,
) -> Result<ExperimentReport> {
    config.validate()?;
    if reps == 0 {
        return Err(invalid("at least one replication is required"));
    }
    if reps < 30 {
        log::warn!("{reps} replications: Monte Carlo standard errors are unreliable below 30");
    }
    let runs: Vec<Replication> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(r as u64);
            let (ds, truth) = generate_with_rng(config, &mut rng)?;
            let estimates = estimators
                .iter()
                .map(|e| match e.run(&ds) {
                    Ok(v) => Some(v),
                    Err(err) => {
                        log::debug!("replication {r}, {}: {err}", e.label());
                        None
                    }
                })
                .collect();
            let true_cd_reject = cd_test(&truth.errors).ok().map(|c| c.rejects(0.05));
            Ok(Replication {
                estimates,
                true_cd_reject,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let dummy_truth = DgpTruth {
        beta: config.beta_true,
        long_run: config.long_run(),
        loaded_units: config.loaded_units(),
        errors: PanelColumn::masked(0, 0),
        gamma: Vec::new(),
        factors: Vec::new(),
    };
    let mut rows = Vec::new();
    let mut estimates = Vec::new();
    for (k, est) in estimators.iter().enumerate() {
        let per_rep: Vec<Option<(Vec<f64>, Option<bool>)>> = runs.iter().map(|r| r.estimates[k].clone()).collect();
        let ok: Vec<&(Vec<f64>, Option<bool>)> = per_rep.iter().flatten().collect();
        let failures = reps - ok.len();
        let cd_flags: Vec<bool> = ok.iter().filter_map(|(_, c)| *c).collect();
        let cd_rate = rate(&cd_flags);
        let truth = est.truth(&dummy_truth);
        for (j, name) in REGRESSORS.iter().enumerate() {
            let values: Vec<f64> = ok.iter().filter_map(|(b, _)| b.get(j).copied()).collect();
            let s = values.len();
            let (mean, mc_se, rmse) = if s == 0 {
                (f64::NAN, None, f64::NAN)
            } else {
                let mean = values.iter().sum::<f64>() / s as f64;
                let sd =
                    (s > 1).then(|| (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (s - 1) as f64).sqrt());
                let rmse = (values.iter().map(|v| (v - truth[j]).powi(2)).sum::<f64>() / s as f64).sqrt();
                (mean, sd.map(|sd| sd / (s as f64).sqrt()), rmse)
            };
            rows.push(CoefficientReport {
                estimator: est.label(),
                coefficient: (*name).to_string(),
                truth: truth[j],
                mean_estimate: mean,
                mean_bias: mean - truth[j],
                mc_se,
                rmse,
                cd_rejection_rate: cd_rate,
                failures,
                successes: s,
            });
        }
        estimates.push(per_rep.into_iter().map(|o| o.map(|(b, _)| b)).collect());
    }
    let true_flags: Vec<bool> = runs.iter().filter_map(|r| r.true_cd_reject).collect();
    Ok(ExperimentReport {
        replications: reps,
        rows,
        true_error_cd_rejection_rate: rate(&true_flags),
        config: config.clone(),
        estimates,
    })
}

fn rate(flags: &[bool]) -> Option<f64> {
    (!flags.is_empty()).then(|| flags.iter().filter(|&&f| f).count() as f64 / flags.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statics::StaticEstimator;

    fn small() -> FactorDGPConfig {
        FactorDGPConfig {
            n_units: 12,
            n_periods: 20,
            burn_in: 10,
            ..FactorDGPConfig::default()
        }
    }

    #[test]
    fn loaded_unit_count() {
        let mut c = FactorDGPConfig {
            n_units: 50,
            gamma_bounds: (1.0, 2.0),
            alpha: 0.0,
            ..FactorDGPConfig::default()
        };
        assert_eq!(c.loaded_units(), 1);
        let (_, truth) = generate_dgp(&c).unwrap();
        assert_eq!(truth.gamma.iter().filter(|g| g[0] != 0.0).count(), 1);
        c.alpha = 1.0;
        assert_eq!(c.loaded_units(), 50);
        c.alpha = 0.5;
        c.n_units = 16;
        assert_eq!(c.loaded_units(), 4);
    }

    #[test]
    fn identical_seeds_identical_panels() {
        let (a, _) = generate_dgp(&small()).unwrap();
        let (b, _) = generate_dgp(&small()).unwrap();
        assert_eq!(a, b);
        let (c, _) = generate_dgp(&FactorDGPConfig { seed: 2, ..small() }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_loadings_give_exact_linear_model() {
        let cfg = FactorDGPConfig {
            gamma_bounds: (0.0, 0.0),
            loading_noise_sd: 0.0,
            ..small()
        };
        let (ds, truth) = generate_dgp(&cfg).unwrap();
        let (y, d, f) = (
            ds.variable("tfp").unwrap(),
            ds.variable("rd").unwrap(),
            ds.variable("rf").unwrap(),
        );
        for i in 0..cfg.n_units {
            for t in 0..cfg.n_periods {
                let e = truth.errors.get(i, t).unwrap();
                let fitted = 0.5 * d.get(i, t).unwrap() + 0.3 * f.get(i, t).unwrap() + e;
                assert!((y.get(i, t).unwrap() - fitted).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(FactorDGPConfig { m: 0, ..small() }.validate().is_err());
        assert!(FactorDGPConfig { alpha: 1.5, ..small() }.validate().is_err());
        assert!(FactorDGPConfig { sd_v: 0.0, ..small() }.validate().is_err());
        assert!(FactorDGPConfig { phi: 1.0, ..small() }.validate().is_err());
    }

    #[test]
    fn single_replication_flags_undefined_se() {
        let est = [ExperimentEstimator::static_on_dgp(StaticEstimator::Mg)];
        let r = run_experiment(&small(), &est, 1).unwrap();
        assert_eq!(r.replications, 1);
        let row = r.row("MG", "rd").unwrap();
        assert!(row.mc_se.is_none());
        assert!(r.summary().contains("undefined"));
    }

    #[test]
    fn reports_are_deterministic() {
        let est = [
            ExperimentEstimator::static_on_dgp(StaticEstimator::Mg),
            ExperimentEstimator::static_on_dgp(StaticEstimator::Ccemg),
        ];
        let a = run_experiment(&small(), &est, 6).unwrap();
        let b = run_experiment(&small(), &est, 6).unwrap();
        assert_eq!(a.to_delimited(), b.to_delimited());
        assert_eq!(a.summary(), b.summary());
    }
}
