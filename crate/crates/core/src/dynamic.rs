//! Dynamic panel estimators in error-correction form.
//!
//! The per-unit ECM regresses `D.y` on `L1.y`, `L1.x`, lagged `D.y` and
//! current/lagged `D.x`. The coefficient on `L1.y` is the error-correction
//! coefficient `-lambda`; long-run slopes are `theta = -b / c` where `b` are
//! the `L1.x` coefficients and `c` the `L1.y` one.
//!
//! `cs_ardl` adds contemporaneous and lagged cross-section averages of the
//! dependent variable and regressors. `cs_dlmg` skips the autoregression
//! entirely and reads the long-run slopes off a distributed-lag levels
//! regression augmented with averages.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::design::{
    average_terms, fit_units, lag_name, lagged, mean_group, residual_panel, surviving_units, Stacked, Term, TermSet,
    UnitFit, UnitSample,
};
use crate::diagnostics::cd::{cd_test, CdResult};
use crate::error::{invalid, Error, Result};
use crate::panel::{PanelColumn, PanelDataset};
use crate::regress::{ols_with, OlsOptions, SeKind, UnitDesign};

/// Units whose estimated `|lambda|` falls below this are left out of the
/// long-run mean group.
pub const LAMBDA_EXCLUSION: f64 = 1e-3;

/// `|lambda|` below this makes the long-run mapping undefined.
pub const LAMBDA_UNDEFINED: f64 = 1e-6;

/// Error-correction coefficient and long-run slopes implied by ARDL lag
/// polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct LongRun {
    /// `1 - sum(phi)`.
    pub lambda: f64,
    /// `-lambda`, the coefficient on the lagged level in ECM form.
    pub ec_coefficient: f64,
    pub theta: Vec<f64>,
}

/// Maps autoregressive coefficients `phi_1..phi_p` and distributed-lag
/// coefficients `beta_0..beta_p` (one vector per lag, one entry per
/// regressor) to `(lambda, theta)`.
pub fn long_run_from_ardl(phi: &[f64], beta: &[Vec<f64>]) -> Result<LongRun> {
    let k = beta.first().map_or(0, Vec::len);
    if beta.iter().any(|b| b.len() != k) {
        return Err(Error::Shape("distributed-lag vectors differ in length".into()));
    }
    let lambda = 1.0 - phi.iter().sum::<f64>();
    if lambda.abs() < LAMBDA_UNDEFINED {
        return Err(Error::LongRunUndefined { lambda: lambda.abs() });
    }
    let theta = (0..k)
        .map(|j| beta.iter().map(|b| b[j]).sum::<f64>() / lambda)
        .collect();
    Ok(LongRun {
        lambda,
        ec_coefficient: -lambda,
        theta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicEstimator {
    ArdlPols,
    ArdlFe2,
    ArdlMg,
    CsArdl,
    CsDlmg,
}

impl DynamicEstimator {
    pub fn label(self) -> &'static str {
        match self {
            Self::ArdlPols => "ARDL-POLS",
            Self::ArdlFe2 => "ARDL-2FE",
            Self::ArdlMg => "ARDL-MG",
            Self::CsArdl => "CS-ARDL",
            Self::CsDlmg => "CS-DLMG",
        }
    }

    pub fn uses_averages(self) -> bool {
        matches!(self, Self::CsArdl | Self::CsDlmg)
    }

    pub fn is_pooled(self) -> bool {
        matches!(self, Self::ArdlPols | Self::ArdlFe2)
    }

    pub fn has_ec_term(self) -> bool {
        !matches!(self, Self::CsDlmg)
    }
}

impl fmt::Display for DynamicEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DynamicEstimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "ardl_pols" => Self::ArdlPols,
            "ardl_fe2" | "ardl_2fe" => Self::ArdlFe2,
            "ardl_mg" => Self::ArdlMg,
            "cs_ardl" => Self::CsArdl,
            "cs_dlmg" | "cs_dl" => Self::CsDlmg,
            other => return Err(invalid(format!("unknown dynamic estimator `{other}`"))),
        })
    }
}

/// Default count of lagged cross-section averages (`T^(1/3)` with `T` near 40).
pub const DEFAULT_CS_LAGS: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicSpec {
    pub dependent: String,
    pub regressors: Vec<String>,
    pub p: usize,
    pub estimator: DynamicEstimator,
    #[serde(default)]
    pub cs_lags: usize,
    #[serde(default)]
    pub trend: bool,
    #[serde(default = "default_min_df")]
    pub min_df: usize,
}

fn default_min_df() -> usize {
    1
}

impl DynamicSpec {
    pub fn new(dependent: &str, regressors: &[&str], p: usize, estimator: DynamicEstimator) -> Self {
        Self {
            dependent: dependent.to_string(),
            regressors: regressors.iter().map(|s| s.to_string()).collect(),
            p,
            estimator,
            cs_lags: if estimator.uses_averages() { DEFAULT_CS_LAGS } else { 0 },
            trend: false,
            min_df: 1,
        }
    }

    pub fn with_cs_lags(mut self, cs_lags: usize) -> Self {
        self.cs_lags = cs_lags;
        self
    }

    pub fn with_trend(mut self, trend: bool) -> Self {
        self.trend = trend;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.regressors.is_empty() {
            return Err(invalid("at least one regressor is required"));
        }
        if !(1..=3).contains(&self.p) {
            return Err(invalid(format!("lag order p must be in 1..=3, got {}", self.p)));
        }
        if self.cs_lags > 3 {
            return Err(invalid("cs_lags must be in 0..=3"));
        }
        if self.cs_lags > 0 && !self.estimator.uses_averages() {
            return Err(invalid(format!("{} takes no cross-section averages", self.estimator)));
        }
        if self.trend && self.estimator.is_pooled() {
            return Err(invalid(format!(
                "{} includes year effects; a linear trend is collinear with them",
                self.estimator
            )));
        }
        if self.min_df == 0 {
            return Err(invalid("min_df must be at least 1"));
        }
        Ok(())
    }

    fn regressor_refs(&self) -> Vec<&str> {
        self.regressors.iter().map(String::as_str).collect()
    }

    /// ECM terms: `L1.y`, `L1.x..`, `L{1..p-1}.D.y`, `L{0..p-1}.D.x..`.
    fn ecm_terms(&self, ds: &PanelDataset) -> Result<(Term, Vec<Term>)> {
        let y = ds.variable(&self.dependent)?;
        let dy = y.first_difference();
        let dep = Term::new(format!("D.{}", self.dependent), dy.clone());
        let mut terms = vec![Term::new(lag_name(&self.dependent, 1), y.lag(1)?)];
        for r in &self.regressors {
            terms.push(Term::new(lag_name(r, 1), ds.variable(r)?.lag(1)?));
        }
        for l in 1..self.p {
            terms.push(Term::new(lag_name(&format!("D.{}", self.dependent), l), dy.lag(l)?));
        }
        for r in &self.regressors {
            let dx = ds.variable(r)?.first_difference();
            for l in 0..self.p {
                terms.push(Term::new(lag_name(&format!("D.{r}"), l), lagged(&dx, l)?));
            }
        }
        Ok((dep, terms))
    }

    /// Distributed-lag levels terms: `x..`, `L{0..p-2}.D.x..`, `y_bar`,
    /// `L{0..cs_lags}.x_bar..`.
    fn dl_terms(&self, ds: &PanelDataset) -> Result<(Term, Vec<Term>)> {
        let y = ds.variable(&self.dependent)?;
        let dep = Term::new(self.dependent.clone(), y.clone());
        let mut terms = Vec::new();
        for r in &self.regressors {
            terms.push(Term::new(r.clone(), ds.variable(r)?.clone()));
        }
        for r in &self.regressors {
            let dx = ds.variable(r)?.first_difference();
            for l in 0..self.p.saturating_sub(1) {
                terms.push(Term::new(lag_name(&format!("D.{r}"), l), lagged(&dx, l)?));
            }
        }
        terms.extend(average_terms(ds, &[self.dependent.as_str()], 0)?);
        terms.extend(average_terms(ds, &self.regressor_refs(), self.cs_lags)?);
        Ok((dep, terms))
    }

    /// Levels ARDL: `L{1..p}.y`, `L{0..p}.x..` plus, for CS variants,
    /// `L{0..cs_lags}.z_bar`.
    pub fn ardl_levels_term_set(&self, ds: &PanelDataset) -> Result<TermSet> {
        self.validate()?;
        let y = ds.variable(&self.dependent)?;
        let mut terms = Vec::new();
        for l in 1..=self.p {
            terms.push(Term::new(lag_name(&self.dependent, l), y.lag(l)?));
        }
        for r in &self.regressors {
            let x = ds.variable(r)?;
            for l in 0..=self.p {
                terms.push(Term::new(lag_name(r, l), lagged(x, l)?));
            }
        }
        if self.estimator.uses_averages() {
            terms.extend(average_terms(ds, &self.averaged_vars(), self.cs_lags)?);
        }
        Ok(TermSet {
            dependent: Term::new(self.dependent.clone(), y.clone()),
            terms,
            intercept: true,
            trend: self.trend,
        })
    }

    fn averaged_vars(&self) -> Vec<&str> {
        let mut v = vec![self.dependent.as_str()];
        v.extend(self.regressor_refs());
        v
    }
}

impl UnitDesign for DynamicSpec {
    fn term_set(&self, ds: &PanelDataset) -> Result<TermSet> {
        self.validate()?;
        let (dependent, mut terms) = match self.estimator {
            DynamicEstimator::CsDlmg => self.dl_terms(ds)?,
            _ => self.ecm_terms(ds)?,
        };
        if self.estimator == DynamicEstimator::CsArdl {
            terms.extend(average_terms(ds, &self.averaged_vars(), self.cs_lags)?);
        }
        Ok(TermSet {
            dependent,
            terms,
            intercept: self.estimator != DynamicEstimator::ArdlFe2,
            trend: self.trend,
        })
    }

    fn unit_parameters(&self, set: &TermSet) -> usize {
        match self.estimator {
            DynamicEstimator::ArdlPols => 0,
            DynamicEstimator::ArdlFe2 => 1,
            _ => set.n_columns(),
        }
    }
}

/// Estimate with standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedEstimate {
    pub name: String,
    pub value: f64,
    pub se: f64,
}

/// Per-unit long-run quantities of a heterogeneous fit.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitLongRun {
    pub unit: String,
    pub theta: Vec<f64>,
    /// Absent for `cs_dlmg`.
    pub ec_coefficient: Option<f64>,
    /// Left out of the long-run mean group (near-zero lambda).
    pub excluded: bool,
    /// Largest modulus among the roots of the companion matrix of the
    /// autoregressive lag polynomial; below one means the roots of `A(L)` lie
    /// outside the unit circle. Filled for `cs_dlmg` only.
    pub max_companion_root: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct DynamicResult {
    pub estimator: DynamicEstimator,
    pub p: usize,
    pub cs_lags: usize,
    pub trend: bool,
    pub regressors: Vec<String>,
    pub long_run: Vec<Estimate>,
    pub ec_coefficient: Option<Estimate>,
    /// Remaining coefficients (pooled estimates or mean-group means).
    pub short_run: Vec<NamedEstimate>,
    pub unit_long_run: Vec<UnitLongRun>,
    pub residuals: PanelColumn,
    pub rmse: f64,
    pub nxt: usize,
    pub n: usize,
    pub units: Vec<String>,
    /// CD test on the residual panel; `None` when undefined.
    pub cd: Option<CdResult>,
}

pub fn fit_dynamic(ds: &PanelDataset, spec: &DynamicSpec) -> Result<DynamicResult> {
    let set = spec.term_set(ds)?;
    let units = surviving_units(&set, spec.unit_parameters(&set), spec.min_df);
    if units.is_empty() {
        return Err(Error::NoUsableUnits);
    }
    let mut result = match spec.estimator {
        DynamicEstimator::ArdlPols | DynamicEstimator::ArdlFe2 => fit_pooled_ecm(ds, spec, &set, &units),
        DynamicEstimator::ArdlMg | DynamicEstimator::CsArdl => fit_mg_ecm(ds, spec, &set, &units),
        DynamicEstimator::CsDlmg => fit_cs_dl(ds, spec, &set, &units),
    }?;
    result.cd = cd_test(&result.residuals).ok();
    Ok(result)
}

/// Long-run slopes and their delta-method covariance from ECM coefficients:
/// `c` on `L1.y` at `ec_idx`, `b_j` on `L1.x_j` at `ec_idx + 1 + j`.
fn ecm_long_run(coef: &DVector<f64>, cov: &DMatrix<f64>, ec_idx: usize, k: usize) -> Result<(Vec<Estimate>, Estimate)> {
    let c = coef[ec_idx];
    if c.abs() < LAMBDA_UNDEFINED {
        return Err(Error::LongRunUndefined { lambda: c.abs() });
    }
    let ec = Estimate {
        value: c,
        se: cov[(ec_idx, ec_idx)].max(0.0).sqrt(),
    };
    let theta = (0..k)
        .map(|j| {
            let bj = ec_idx + 1 + j;
            let b = coef[bj];
            let (gc, gb) = (b / (c * c), -1.0 / c);
            let var = gc * gc * cov[(ec_idx, ec_idx)] + gb * gb * cov[(bj, bj)] + 2.0 * gc * gb * cov[(ec_idx, bj)];
            Estimate {
                value: -b / c,
                se: var.max(0.0).sqrt(),
            }
        })
        .collect();
    Ok((theta, ec))
}

fn fit_pooled_ecm(ds: &PanelDataset, spec: &DynamicSpec, set: &TermSet, units: &[usize]) -> Result<DynamicResult> {
    let samples: Vec<UnitSample> = units.iter().map(|&i| set.unit_sample(i)).collect();
    let mut stacked = Stacked::from_samples(samples, set.names());
    if stacked.nobs() == 0 {
        return Err(Error::NoUsableUnits);
    }
    let absorbed = match spec.estimator {
        DynamicEstimator::ArdlFe2 => stacked.within_two_way(),
        _ => {
            stacked.add_year_dummies(ds.times());
            0
        }
    };
    let fit = ols_with(
        &stacked.response(),
        &stacked.design(),
        Some(&stacked.names),
        OlsOptions {
            se_kind: SeKind::RobustHc1,
            absorbed,
        },
    )?;
    let ec_idx = usize::from(set.intercept);
    let k = spec.regressors.len();
    let (long_run, ec) = ecm_long_run(&fit.coefficients, &fit.covariance, ec_idx, k)?;
    let short_run = stacked
        .names
        .iter()
        .enumerate()
        .filter(|(_, n)| !n.starts_with("year_"))
        .map(|(j, n)| NamedEstimate {
            name: n.clone(),
            value: fit.coefficients[j],
            se: fit.std_errors[j],
        })
        .collect();
    let mut residuals = PanelColumn::masked(ds.n_units(), ds.n_times());
    for ((&u, &t), e) in stacked.units.iter().zip(&stacked.times).zip(fit.residuals.iter()) {
        residuals.set(u, t, Some(*e));
    }
    let mut used = stacked.units.clone();
    used.dedup();
    Ok(DynamicResult {
        estimator: spec.estimator,
        p: spec.p,
        cs_lags: spec.cs_lags,
        trend: spec.trend,
        regressors: spec.regressors.clone(),
        long_run,
        ec_coefficient: Some(ec),
        short_run,
        unit_long_run: Vec::new(),
        residuals,
        rmse: fit.rmse,
        nxt: fit.nobs,
        n: used.len(),
        units: used.iter().map(|&i| ds.units()[i].clone()).collect(),
        cd: None,
    })
}

fn mg_short_run(names: &[String], fits: &[UnitFit]) -> Result<Vec<NamedEstimate>> {
    let vectors: Vec<Vec<f64>> = fits
        .iter()
        .map(|f| f.fit.coefficients.iter().copied().collect())
        .collect();
    let (mean, se) = mean_group(&vectors)?;
    Ok(names
        .iter()
        .zip(mean.iter().zip(&se))
        .map(|(n, (m, s))| NamedEstimate {
            name: n.clone(),
            value: *m,
            se: *s,
        })
        .collect())
}

fn heterogeneous_result(
    ds: &PanelDataset,
    spec: &DynamicSpec,
    fits: &[UnitFit],
    short_run: Vec<NamedEstimate>,
    unit_long_run: Vec<UnitLongRun>,
) -> Result<DynamicResult> {
    let included: Vec<Vec<f64>> = unit_long_run
        .iter()
        .filter(|u| !u.excluded)
        .map(|u| u.theta.clone())
        .collect();
    let (theta, theta_se) = mean_group(&included)?;
    let ec_coefficient = if spec.estimator.has_ec_term() {
        let ecs: Vec<Vec<f64>> = unit_long_run
            .iter()
            .filter_map(|u| u.ec_coefficient)
            .map(|c| vec![c])
            .collect();
        let (m, s) = mean_group(&ecs)?;
        Some(Estimate { value: m[0], se: s[0] })
    } else {
        None
    };
    let residuals = residual_panel(
        ds.n_units(),
        ds.n_times(),
        &fits
            .iter()
            .map(|f| (f.unit, f.times.as_slice(), &f.fit.residuals))
            .collect::<Vec<_>>(),
    );
    let nxt: usize = fits.iter().map(|f| f.fit.nobs).sum();
    let ssr: f64 = fits.iter().map(|f| f.fit.ssr()).sum();
    Ok(DynamicResult {
        estimator: spec.estimator,
        p: spec.p,
        cs_lags: spec.cs_lags,
        trend: spec.trend,
        regressors: spec.regressors.clone(),
        long_run: theta
            .iter()
            .zip(&theta_se)
            .map(|(v, s)| Estimate { value: *v, se: *s })
            .collect(),
        ec_coefficient,
        short_run,
        unit_long_run,
        residuals,
        rmse: (ssr / nxt as f64).sqrt(),
        nxt,
        n: fits.len(),
        units: fits.iter().map(|f| ds.units()[f.unit].clone()).collect(),
        cd: None,
    })
}

fn fit_mg_ecm(ds: &PanelDataset, spec: &DynamicSpec, set: &TermSet, units: &[usize]) -> Result<DynamicResult> {
    let fits = fit_units(set, units)?;
    let names = set.names();
    let ec_idx = usize::from(set.intercept);
    let k = spec.regressors.len();
    let unit_long_run = fits
        .iter()
        .map(|f| {
            let c = f.fit.coefficients[ec_idx];
            let excluded = c.abs() < LAMBDA_EXCLUSION;
            if excluded {
                log::warn!(
                    "unit `{}`: |lambda| = {:.2e}, excluded from long-run averaging",
                    ds.units()[f.unit],
                    c.abs()
                );
            }
            UnitLongRun {
                unit: ds.units()[f.unit].clone(),
                theta: (0..k).map(|j| -f.fit.coefficients[ec_idx + 1 + j] / c).collect(),
                ec_coefficient: Some(c),
                excluded,
                max_companion_root: None,
            }
        })
        .collect();
    let short_run = mg_short_run(&names, &fits)?;
    heterogeneous_result(ds, spec, &fits, short_run, unit_long_run)
}

fn fit_cs_dl(ds: &PanelDataset, spec: &DynamicSpec, set: &TermSet, units: &[usize]) -> Result<DynamicResult> {
    let fits = fit_units(set, units)?;
    let names = set.names();
    let offset = usize::from(set.intercept);
    let k = spec.regressors.len();
    let roots = companion_roots(ds, spec, units);
    let unit_long_run = fits
        .iter()
        .zip(roots)
        .map(|(f, root)| UnitLongRun {
            unit: ds.units()[f.unit].clone(),
            theta: (0..k).map(|j| f.fit.coefficients[offset + j]).collect(),
            ec_coefficient: None,
            excluded: false,
            max_companion_root: root,
        })
        .collect();
    let short_run = mg_short_run(&names, &fits)?;
    heterogeneous_result(ds, spec, &fits, short_run, unit_long_run)
}

/// Per-unit stability check for the distributed-lag estimator: fits the
/// levels ARDL with the same averages and reports the largest companion root
/// modulus of its autoregressive part. `None` when the auxiliary fit fails.
fn companion_roots(ds: &PanelDataset, spec: &DynamicSpec, units: &[usize]) -> Vec<Option<f64>> {
    let Ok(set) = spec.ardl_levels_term_set(ds) else {
        return vec![None; units.len()];
    };
    let names = set.names();
    units
        .iter()
        .map(|&i| {
            let s = set.unit_sample(i);
            let fit = ols_with(&s.response(), &s.design(), Some(&names), OlsOptions::default()).ok()?;
            let phi: Vec<f64> = (1..=spec.p).map(|l| fit.coefficients[l]).collect();
            Some(max_companion_modulus(&phi))
        })
        .collect()
}

/// Largest eigenvalue modulus of the companion matrix of `1 - sum phi_l L^l`.
pub fn max_companion_modulus(phi: &[f64]) -> f64 {
    let p = phi.len();
    if p == 0 {
        return 0.0;
    }
    let mut m = DMatrix::zeros(p, p);
    for (j, v) in phi.iter().enumerate() {
        m[(0, j)] = *v;
    }
    for r in 1..p {
        m[(r, r - 1)] = 1.0;
    }
    m.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Fits the levels ARDL for one unit and maps it to `(lambda, theta)`. Used to
/// cross-check the ECM parameterization.
pub fn unit_levels_long_run(ds: &PanelDataset, spec: &DynamicSpec, unit: usize) -> Result<LongRun> {
    let set = spec.ardl_levels_term_set(ds)?;
    let s = set.unit_sample(unit);
    let fit = ols_with(&s.response(), &s.design(), Some(&set.names()), OlsOptions::default())?;
    let k = spec.regressors.len();
    let phi: Vec<f64> = (1..=spec.p).map(|l| fit.coefficients[l]).collect();
    let base = 1 + spec.p;
    let beta: Vec<Vec<f64>> = (0..=spec.p)
        .map(|l| (0..k).map(|j| fit.coefficients[base + j * (spec.p + 1) + l]).collect())
        .collect();
    long_run_from_ardl(&phi, &beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_run_examples() {
        let lr = long_run_from_ardl(&[0.5], &[vec![0.25], vec![0.05]]).unwrap();
        assert!((lr.lambda - 0.5).abs() < 1e-15);
        assert!((lr.ec_coefficient + 0.5).abs() < 1e-15);
        assert!((lr.theta[0] - 0.6).abs() < 1e-14);

        let lr = long_run_from_ardl(&[0.0], &[vec![0.2], vec![0.0]]).unwrap();
        assert!((lr.theta[0] - 0.2).abs() < 1e-15);

        let lr = long_run_from_ardl(&[0.3, 0.2], &[vec![0.1], vec![0.05], vec![0.05]]).unwrap();
        assert!((lr.lambda - 0.5).abs() < 1e-15);
        assert!((lr.theta[0] - 0.4).abs() < 1e-14);
    }

    #[test]
    fn long_run_undefined_at_unit_root() {
        assert!(matches!(
            long_run_from_ardl(&[0.6, 0.4], &[vec![1.0], vec![0.0], vec![0.0]]),
            Err(Error::LongRunUndefined { .. })
        ));
    }

    #[test]
    fn companion_modulus() {
        assert!((max_companion_modulus(&[0.5]) - 0.5).abs() < 1e-12);
        // (1 - 0.5L)(1 - 0.4L) = 1 - 0.9L + 0.2L^2
        assert!((max_companion_modulus(&[0.9, -0.2]) - 0.5).abs() < 1e-10);
        assert!(max_companion_modulus(&[1.1]) > 1.0);
    }

    #[test]
    fn spec_validation() {
        let ok = DynamicSpec::new("y", &["x"], 2, DynamicEstimator::CsArdl);
        assert!(ok.validate().is_ok());
        assert_eq!(ok.cs_lags, 3);
        assert!(DynamicSpec::new("y", &["x"], 0, DynamicEstimator::ArdlMg)
            .validate()
            .is_err());
        assert!(DynamicSpec::new("y", &["x"], 4, DynamicEstimator::ArdlMg)
            .validate()
            .is_err());
        assert!(DynamicSpec::new("y", &["x"], 1, DynamicEstimator::ArdlMg)
            .with_cs_lags(2)
            .validate()
            .is_err());
        assert!(DynamicSpec::new("y", &["x"], 1, DynamicEstimator::ArdlPols)
            .with_trend(true)
            .validate()
            .is_err());
    }

    #[test]
    fn cs_dl_with_one_lag_has_no_difference_terms() {
        let ds = PanelDataset::new(vec!["a".into(), "b".into()], (0..10).collect())
            .unwrap()
            .with("y", PanelColumn::from_values(&[vec![1.0; 10], vec![2.0; 10]]).unwrap())
            .unwrap()
            .with("x", PanelColumn::from_values(&[vec![1.0; 10], vec![3.0; 10]]).unwrap())
            .unwrap();
        let spec = DynamicSpec::new("y", &["x"], 1, DynamicEstimator::CsDlmg);
        let names = spec.term_set(&ds).unwrap().names();
        assert!(names.iter().all(|n| !n.contains("D.")), "{names:?}");
        assert_eq!(
            names,
            ["const", "x", "y_bar", "x_bar", "L1.x_bar", "L2.x_bar", "L3.x_bar"]
        );
        let spec3 = DynamicSpec::new("y", &["x"], 3, DynamicEstimator::CsDlmg);
        let names3 = spec3.term_set(&ds).unwrap().names();
        assert!(names3.contains(&"D.x".to_string()) && names3.contains(&"L1.D.x".to_string()));
        assert!(!names3.contains(&"L2.D.x".to_string()));
    }
}
