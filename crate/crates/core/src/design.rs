//! Per-unit and pooled design assembly shared by the estimators.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::panel::{PanelColumn, PanelDataset, TimeSeries};
use crate::regress::{ols_with, OlsOptions, RegressionFit, SeKind};

/// A named regressor column.
#[derive(Debug, Clone)]
pub struct Term {
    pub name: String,
    pub column: PanelColumn,
}

impl Term {
    pub fn new(name: impl Into<String>, column: PanelColumn) -> Self {
        Self {
            name: name.into(),
            column,
        }
    }
}

/// Dependent column plus regressors; rows are the cells where every input is
/// available.
#[derive(Debug, Clone)]
pub struct TermSet {
    pub dependent: Term,
    pub terms: Vec<Term>,
    pub intercept: bool,
    pub trend: bool,
}

#[derive(Debug, Clone)]
pub struct UnitSample {
    pub unit: usize,
    pub times: Vec<usize>,
    pub y: Vec<f64>,
    /// One vector per design column (intercept and trend included).
    pub columns: Vec<Vec<f64>>,
}

impl UnitSample {
    pub fn nobs(&self) -> usize {
        self.y.len()
    }

    pub fn design(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.y.len(), self.columns.len(), |r, c| self.columns[c][r])
    }

    pub fn response(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.y)
    }
}

impl TermSet {
    pub fn n_units(&self) -> usize {
        self.dependent.column.n_units()
    }

    pub fn n_times(&self) -> usize {
        self.dependent.column.n_times()
    }

    /// Design column names in the order produced by [`Self::unit_sample`].
    pub fn names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.n_columns());
        if self.intercept {
            names.push("const".to_string());
        }
        names.extend(self.terms.iter().map(|t| t.name.clone()));
        if self.trend {
            names.push("trend".to_string());
        }
        names
    }

    pub fn n_columns(&self) -> usize {
        self.terms.len() + usize::from(self.intercept) + usize::from(self.trend)
    }

    pub fn available(&self, unit: usize, t: usize) -> bool {
        self.dependent.column.get(unit, t).is_some() && self.terms.iter().all(|term| term.column.get(unit, t).is_some())
    }

    pub fn usable_rows(&self, unit: usize) -> usize {
        (0..self.n_times()).filter(|&t| self.available(unit, t)).count()
    }

    pub fn unit_sample(&self, unit: usize) -> UnitSample {
        let times: Vec<usize> = (0..self.n_times()).filter(|&t| self.available(unit, t)).collect();
        let y = times
            .iter()
            .map(|&t| self.dependent.column.get(unit, t).unwrap_or(f64::NAN))
            .collect();
        let mut columns = Vec::with_capacity(self.n_columns());
        if self.intercept {
            columns.push(vec![1.0; times.len()]);
        }
        for term in &self.terms {
            columns.push(
                times
                    .iter()
                    .map(|&t| term.column.get(unit, t).unwrap_or(f64::NAN))
                    .collect(),
            );
        }
        if self.trend {
            columns.push(times.iter().map(|&t| t as f64).collect());
        }
        UnitSample {
            unit,
            times,
            y,
            columns,
        }
    }
}

/// Name for the `lag`-th lag of a base name (`L2.x`); `lag == 0` is the base.
pub fn lag_name(base: &str, lag: usize) -> String {
    if lag == 0 {
        base.to_string()
    } else {
        format!("L{lag}.{base}")
    }
}

pub fn lagged(column: &PanelColumn, lag: usize) -> Result<PanelColumn> {
    if lag == 0 {
        Ok(column.clone())
    } else {
        column.lag(lag)
    }
}

pub fn lagged_series(series: &TimeSeries, lag: usize) -> Result<TimeSeries> {
    if lag == 0 {
        Ok(series.clone())
    } else {
        series.lag(lag)
    }
}

/// Cross-section average terms `zbar_{t-l}`, `l = 0..=lags`, for each variable.
pub fn average_terms(ds: &PanelDataset, vars: &[&str], lags: usize) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    for var in vars {
        let avg = ds.cross_section_average(var)?;
        for l in 0..=lags {
            out.push(Term::new(
                lag_name(&format!("{var}_bar"), l),
                lagged_series(&avg, l)?.broadcast(ds.n_units()),
            ));
        }
    }
    Ok(out)
}

/// One unit's regression.
#[derive(Debug, Clone)]
pub struct UnitFit {
    pub unit: usize,
    pub times: Vec<usize>,
    pub fit: RegressionFit,
}

/// Units whose usable rows leave at least `min_df` residual degrees of freedom
/// beyond `params` unit-specific parameters.
pub fn surviving_units(set: &TermSet, params: usize, min_df: usize) -> Vec<usize> {
    (0..set.n_units())
        .filter(|&i| {
            let rows = set.usable_rows(i);
            let ok = rows > 0 && rows >= params + min_df;
            if !ok && rows > 0 {
                log::warn!("dropping unit {i}: {rows} usable rows for {params} unit parameters");
            }
            ok
        })
        .collect()
}

/// Independent OLS per unit, returned in unit order.
pub fn fit_units(set: &TermSet, units: &[usize]) -> Result<Vec<UnitFit>> {
    let names = set.names();
    units
        .par_iter()
        .map(|&i| {
            let sample = set.unit_sample(i);
            let fit = ols_with(
                &sample.response(),
                &sample.design(),
                Some(&names),
                OlsOptions {
                    se_kind: SeKind::RobustHc1,
                    absorbed: 0,
                },
            )?;
            Ok(UnitFit {
                unit: i,
                times: sample.times,
                fit,
            })
        })
        .collect()
}

/// Scatter per-unit residuals back onto the panel grid.
pub fn residual_panel(n_units: usize, n_times: usize, fits: &[(usize, &[usize], &DVector<f64>)]) -> PanelColumn {
    let mut col = PanelColumn::masked(n_units, n_times);
    for (unit, times, resid) in fits {
        for (&t, e) in times.iter().zip(resid.iter()) {
            col.set(*unit, t, Some(*e));
        }
    }
    col
}

/// Unweighted mean of per-unit vectors and the dispersion standard error
/// `sqrt(sum_i (b_i - mean)^2 / (N (N - 1)))`.
pub fn mean_group(unit_coefficients: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = unit_coefficients.len();
    if n < 2 {
        return Err(Error::Undefined(format!(
            "mean-group standard error needs at least 2 units, got {n}"
        )));
    }
    let k = unit_coefficients[0].len();
    if unit_coefficients.iter().any(|b| b.len() != k) {
        return Err(Error::Shape("unit coefficient vectors differ in length".into()));
    }
    let nf = n as f64;
    let mean: Vec<f64> = (0..k)
        .map(|j| {
            let b0 = unit_coefficients[0][j];
            b0 + unit_coefficients.iter().map(|b| b[j] - b0).sum::<f64>() / nf
        })
        .collect();
    let se = (0..k)
        .map(|j| {
            let ss: f64 = unit_coefficients.iter().map(|b| (b[j] - mean[j]).powi(2)).sum();
            (ss / (nf * (nf - 1.0))).sqrt()
        })
        .collect();
    Ok((mean, se))
}

/// Stacked rows of several unit samples.
#[derive(Debug, Clone)]
pub struct Stacked {
    pub units: Vec<usize>,
    pub times: Vec<usize>,
    pub y: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
    pub names: Vec<String>,
}

impl Stacked {
    pub fn from_samples(samples: Vec<UnitSample>, names: Vec<String>) -> Self {
        let k = names.len();
        let mut out = Stacked {
            units: Vec::new(),
            times: Vec::new(),
            y: Vec::new(),
            columns: vec![Vec::new(); k],
            names,
        };
        for s in samples {
            out.units.extend(std::iter::repeat_n(s.unit, s.times.len()));
            out.times.extend_from_slice(&s.times);
            out.y.extend_from_slice(&s.y);
            for (dst, src) in out.columns.iter_mut().zip(s.columns) {
                dst.extend(src);
            }
        }
        out
    }

    pub fn nobs(&self) -> usize {
        self.y.len()
    }

    /// Appends indicators for every period present in the sample except the
    /// earliest one.
    pub fn add_year_dummies(&mut self, years: &[i64]) {
        let mut present: Vec<usize> = self.times.clone();
        present.sort_unstable();
        present.dedup();
        for &t in present.iter().skip(1) {
            self.columns
                .push(self.times.iter().map(|&s| if s == t { 1.0 } else { 0.0 }).collect());
            self.names.push(format!("year_{}", years[t]));
        }
    }

    pub fn distinct_units(&self) -> usize {
        let mut u = self.units.clone();
        u.sort_unstable();
        u.dedup();
        u.len()
    }

    pub fn distinct_times(&self) -> usize {
        let mut t = self.times.clone();
        t.sort_unstable();
        t.dedup();
        t.len()
    }

    /// Sweeps out unit and period means from `y` and every column by
    /// alternating projections (exact in one pass on balanced samples).
    /// Returns the number of absorbed parameters.
    pub fn within_two_way(&mut self) -> usize {
        let units = self.units.clone();
        let times = self.times.clone();
        two_way_demean(&mut self.y, &units, &times);
        for col in &mut self.columns {
            two_way_demean(col, &units, &times);
        }
        self.distinct_units() + self.distinct_times() - 1
    }

    pub fn design(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.y.len(), self.columns.len(), |r, c| self.columns[c][r])
    }

    pub fn response(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.y)
    }
}

fn group_demean(v: &mut [f64], groups: &[usize], n_groups: usize) -> f64 {
    let mut sum = vec![0.0; n_groups];
    let mut count = vec![0usize; n_groups];
    for (x, &g) in v.iter().zip(groups) {
        sum[g] += x;
        count[g] += 1;
    }
    let mut max_shift: f64 = 0.0;
    for (x, &g) in v.iter_mut().zip(groups) {
        let m = sum[g] / count[g] as f64;
        *x -= m;
        max_shift = max_shift.max(m.abs());
    }
    max_shift
}

fn two_way_demean(v: &mut [f64], units: &[usize], times: &[usize]) {
    let nu = units.iter().max().map_or(0, |m| m + 1);
    let nt = times.iter().max().map_or(0, |m| m + 1);
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    for _ in 0..100_000 {
        let a = group_demean(v, units, nu);
        let b = group_demean(v, times, nt);
        if a.max(b) <= 1e-14 * scale {
            break;
        }
    }
}
