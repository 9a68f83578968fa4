//! Static panel estimators: pooled OLS, two-way fixed effects, first
//! differences, pooled CCE, mean group, cross-sectionally demeaned MG and
//! CCE mean group.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::design::{
    average_terms, fit_units, mean_group, residual_panel, surviving_units, Stacked, Term, TermSet, UnitSample,
};
use crate::diagnostics::cd::{cd_test, CdResult};
use crate::error::{invalid, Error, Result};
use crate::panel::{PanelColumn, PanelDataset};
use crate::regress::{numerical_rank, ols_with, OlsOptions, SeKind, UnitDesign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StaticEstimator {
    Pols,
    Fe2,
    Fd,
    Ccep,
    Mg,
    Cdmg,
    Ccemg,
}

impl StaticEstimator {
    pub const ALL: [StaticEstimator; 7] = [
        Self::Pols,
        Self::Fe2,
        Self::Fd,
        Self::Ccep,
        Self::Mg,
        Self::Cdmg,
        Self::Ccemg,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::Pols => "POLS",
            Self::Fe2 => "2FE",
            Self::Fd => "FD",
            Self::Ccep => "CCEP",
            Self::Mg => "MG",
            Self::Cdmg => "CDMG",
            Self::Ccemg => "CCEMG",
        }
    }

    /// Slopes are common across units.
    pub fn is_pooled(self) -> bool {
        matches!(self, Self::Pols | Self::Fe2 | Self::Fd | Self::Ccep)
    }

    /// Pooled with period dummies (or their within equivalent), where a trend
    /// would be collinear.
    fn has_year_effects(self) -> bool {
        matches!(self, Self::Pols | Self::Fe2 | Self::Fd)
    }
}

impl fmt::Display for StaticEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for StaticEstimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "pols" => Self::Pols,
            "fe2" | "2fe" => Self::Fe2,
            "fd" => Self::Fd,
            "ccep" => Self::Ccep,
            "mg" => Self::Mg,
            "cdmg" => Self::Cdmg,
            "ccemg" | "cmg" => Self::Ccemg,
            other => return Err(invalid(format!("unknown static estimator `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticSpec {
    pub dependent: String,
    pub regressors: Vec<String>,
    pub estimator: StaticEstimator,
    #[serde(default)]
    pub trend: bool,
    #[serde(default = "default_true")]
    pub include_intercept: bool,
    #[serde(default = "default_min_df")]
    pub min_df: usize,
}

fn default_true() -> bool {
    true
}

fn default_min_df() -> usize {
    1
}

impl StaticSpec {
    pub fn new(dependent: &str, regressors: &[&str], estimator: StaticEstimator) -> Self {
        Self {
            dependent: dependent.to_string(),
            regressors: regressors.iter().map(|s| s.to_string()).collect(),
            estimator,
            trend: false,
            include_intercept: true,
            min_df: 1,
        }
    }

    pub fn with_trend(mut self, trend: bool) -> Self {
        self.trend = trend;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.regressors.is_empty() {
            return Err(invalid("at least one regressor is required"));
        }
        if self.regressors.contains(&self.dependent) {
            return Err(invalid("dependent variable also listed as a regressor"));
        }
        if self.trend && self.estimator.has_year_effects() {
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

    /// Dependent followed by regressors, the variables averaged by CCE.
    fn averaged_vars(&self) -> Vec<&str> {
        let mut v = vec![self.dependent.as_str()];
        v.extend(self.regressor_refs());
        v
    }
}

impl UnitDesign for StaticSpec {
    fn term_set(&self, ds: &PanelDataset) -> Result<TermSet> {
        self.validate()?;
        let regressors = |f: &dyn Fn(&PanelColumn) -> PanelColumn| -> Result<Vec<Term>> {
            self.regressors
                .iter()
                .map(|r| Ok(Term::new(r.clone(), f(ds.variable(r)?))))
                .collect()
        };
        let y = ds.variable(&self.dependent)?;
        let intercept = self.include_intercept;
        let set = match self.estimator {
            StaticEstimator::Pols | StaticEstimator::Mg => TermSet {
                dependent: Term::new(self.dependent.clone(), y.clone()),
                terms: regressors(&|c| c.clone())?,
                intercept,
                trend: self.trend,
            },
            StaticEstimator::Fe2 => TermSet {
                dependent: Term::new(self.dependent.clone(), y.clone()),
                terms: regressors(&|c| c.clone())?,
                intercept: false,
                trend: false,
            },
            StaticEstimator::Fd => TermSet {
                dependent: Term::new(format!("D.{}", self.dependent), y.first_difference()),
                terms: regressors(&|c| c.first_difference())?
                    .into_iter()
                    .map(|t| Term::new(format!("D.{}", t.name), t.column))
                    .collect(),
                intercept,
                trend: false,
            },
            StaticEstimator::Cdmg => TermSet {
                dependent: Term::new(self.dependent.clone(), y.cs_demean()),
                terms: regressors(&|c| c.cs_demean())?,
                intercept,
                trend: self.trend,
            },
            StaticEstimator::Ccep | StaticEstimator::Ccemg => {
                let mut terms = regressors(&|c| c.clone())?;
                terms.extend(average_terms(ds, &self.averaged_vars(), 0)?);
                TermSet {
                    dependent: Term::new(self.dependent.clone(), y.clone()),
                    terms,
                    intercept,
                    trend: self.trend,
                }
            }
        };
        Ok(set)
    }

    fn unit_parameters(&self, set: &TermSet) -> usize {
        match self.estimator {
            StaticEstimator::Pols | StaticEstimator::Fd => 0,
            StaticEstimator::Fe2 => 1,
            StaticEstimator::Ccep => set.n_columns() - self.regressors.len(),
            StaticEstimator::Mg | StaticEstimator::Cdmg | StaticEstimator::Ccemg => set.n_columns(),
        }
    }
}

/// Coefficients of one unit's regression.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCoefficients {
    pub unit: String,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct StaticResult {
    pub estimator: StaticEstimator,
    pub trend: bool,
    pub regressors: Vec<String>,
    pub aggregate_coefficients: Vec<f64>,
    pub aggregate_se: Vec<f64>,
    /// Names of the per-unit coefficient vectors (heterogeneous estimators).
    pub coefficient_names: Vec<String>,
    /// Empty for pooled estimators.
    pub unit_coefficients: Vec<UnitCoefficients>,
    pub residuals: PanelColumn,
    pub rmse: f64,
    /// Unit-time observations used.
    pub nxt: usize,
    /// Units used.
    pub n: usize,
    pub units: Vec<String>,
    /// CD test on the residual panel; `None` when undefined.
    pub cd: Option<CdResult>,
}

impl StaticResult {
    pub fn t_ratios(&self) -> Vec<f64> {
        self.aggregate_coefficients
            .iter()
            .zip(&self.aggregate_se)
            .map(|(b, s)| b / s)
            .collect()
    }
}

pub fn fit_static(ds: &PanelDataset, spec: &StaticSpec) -> Result<StaticResult> {
    let set = spec.term_set(ds)?;
    let units = surviving_units(&set, spec.unit_parameters(&set), spec.min_df);
    if units.is_empty() {
        return Err(Error::NoUsableUnits);
    }
    let mut result = match spec.estimator {
        StaticEstimator::Pols | StaticEstimator::Fd | StaticEstimator::Fe2 => fit_pooled(ds, spec, &set, &units),
        StaticEstimator::Ccep => fit_ccep(ds, spec, &set, &units),
        StaticEstimator::Mg | StaticEstimator::Cdmg | StaticEstimator::Ccemg => {
            fit_heterogeneous(ds, spec, &set, &units)
        }
    }?;
    result.cd = cd_test(&result.residuals).ok();
    Ok(result)
}

fn pooled_result(
    ds: &PanelDataset,
    spec: &StaticSpec,
    stacked: &Stacked,
    absorbed: usize,
    first_slope: usize,
) -> Result<StaticResult> {
    let fit = ols_with(
        &stacked.response(),
        &stacked.design(),
        Some(&stacked.names),
        OlsOptions {
            se_kind: SeKind::RobustHc1,
            absorbed,
        },
    )?;
    let k = spec.regressors.len();
    let mut residuals = PanelColumn::masked(ds.n_units(), ds.n_times());
    for ((&u, &t), e) in stacked.units.iter().zip(&stacked.times).zip(fit.residuals.iter()) {
        residuals.set(u, t, Some(*e));
    }
    let mut used: Vec<usize> = stacked.units.clone();
    used.dedup();
    Ok(StaticResult {
        estimator: spec.estimator,
        trend: spec.trend,
        regressors: spec.regressors.clone(),
        aggregate_coefficients: (first_slope..first_slope + k).map(|j| fit.coefficients[j]).collect(),
        aggregate_se: (first_slope..first_slope + k).map(|j| fit.std_errors[j]).collect(),
        coefficient_names: Vec::new(),
        unit_coefficients: Vec::new(),
        residuals,
        rmse: fit.rmse,
        nxt: fit.nobs,
        n: used.len(),
        units: used.iter().map(|&i| ds.units()[i].clone()).collect(),
        cd: None,
    })
}

fn fit_pooled(ds: &PanelDataset, spec: &StaticSpec, set: &TermSet, units: &[usize]) -> Result<StaticResult> {
    let samples: Vec<UnitSample> = units.iter().map(|&i| set.unit_sample(i)).collect();
    let mut stacked = Stacked::from_samples(samples, set.names());
    if stacked.nobs() == 0 {
        return Err(Error::NoUsableUnits);
    }
    match spec.estimator {
        StaticEstimator::Fe2 => {
            let absorbed = stacked.within_two_way();
            pooled_result(ds, spec, &stacked, absorbed, 0)
        }
        _ => {
            stacked.add_year_dummies(ds.times());
            pooled_result(ds, spec, &stacked, 0, usize::from(set.intercept))
        }
    }
}

/// Residualizes `columns` on `nuisance` (same rows); errors when the nuisance
/// block is rank deficient.
pub(crate) fn partial_out(nuisance: &DMatrix<f64>, columns: &mut [Vec<f64>]) -> Result<()> {
    if nuisance.ncols() == 0 {
        return Ok(());
    }
    if numerical_rank(nuisance) < nuisance.ncols() {
        return Err(Error::Collinear(vec![
            "unit-specific cross-section average loadings".into()
        ]));
    }
    let q = nuisance.clone().qr().q();
    for col in columns.iter_mut() {
        let v = DVector::from_column_slice(col);
        let r = &v - &q * (q.transpose() * &v);
        col.copy_from_slice(r.as_slice());
    }
    Ok(())
}

fn fit_ccep(ds: &PanelDataset, spec: &StaticSpec, set: &TermSet, units: &[usize]) -> Result<StaticResult> {
    // Frisch-Waugh: sweep each unit's intercept, average loadings and trend,
    // then pool the regressor slopes.
    let k = spec.regressors.len();
    let offset = usize::from(set.intercept);
    let mut absorbed = 0;
    let mut samples = Vec::with_capacity(units.len());
    for &i in units {
        let mut s = set.unit_sample(i);
        let nuisance_idx: Vec<usize> = (0..s.columns.len())
            .filter(|j| !(offset..offset + k).contains(j))
            .collect();
        let nuisance = DMatrix::from_fn(s.nobs(), nuisance_idx.len(), |r, c| s.columns[nuisance_idx[c]][r]);
        let mut slopes: Vec<Vec<f64>> = s.columns.drain(offset..offset + k).collect();
        slopes.push(std::mem::take(&mut s.y));
        partial_out(&nuisance, &mut slopes)?;
        s.y = slopes.pop().unwrap_or_default();
        s.columns = slopes;
        absorbed += nuisance_idx.len();
        samples.push(s);
    }
    let stacked = Stacked::from_samples(samples, spec.regressors.clone());
    pooled_result(ds, spec, &stacked, absorbed, 0)
}

fn fit_heterogeneous(ds: &PanelDataset, spec: &StaticSpec, set: &TermSet, units: &[usize]) -> Result<StaticResult> {
    let fits = fit_units(set, units)?;
    let names = set.names();
    let offset = usize::from(set.intercept);
    let k = spec.regressors.len();
    let vectors: Vec<Vec<f64>> = fits
        .iter()
        .map(|f| f.fit.coefficients.iter().copied().collect())
        .collect();
    let (mean, se) = mean_group(&vectors)?;
    let resid = residual_panel(
        ds.n_units(),
        ds.n_times(),
        &fits
            .iter()
            .map(|f| (f.unit, f.times.as_slice(), &f.fit.residuals))
            .collect::<Vec<_>>(),
    );
    let nxt: usize = fits.iter().map(|f| f.fit.nobs).sum();
    let ssr: f64 = fits.iter().map(|f| f.fit.ssr()).sum();
    Ok(StaticResult {
        estimator: spec.estimator,
        trend: spec.trend,
        regressors: spec.regressors.clone(),
        aggregate_coefficients: mean[offset..offset + k].to_vec(),
        aggregate_se: se[offset..offset + k].to_vec(),
        coefficient_names: names,
        unit_coefficients: fits
            .iter()
            .map(|f| UnitCoefficients {
                unit: ds.units()[f.unit].clone(),
                coefficients: f.fit.coefficients.iter().copied().collect(),
                std_errors: f.fit.std_errors.iter().copied().collect(),
            })
            .collect(),
        residuals: resid,
        rmse: (ssr / nxt as f64).sqrt(),
        nxt,
        n: fits.len(),
        units: fits.iter().map(|f| ds.units()[f.unit].clone()).collect(),
        cd: None,
    })
}
