//! Cross-sectionally augmented panel unit root test (CIPS).
//!
//! Each unit runs the CADF regression
//!
//! ```text
//! D.y_it = a_i [+ d_i t] + b_i y_{i,t-1} + c_i ybar_{t-1} + e_i D.ybar_t
//!          + sum_{l=1..p} (h_il D.y_{i,t-l} + g_il D.ybar_{t-l}) + u_it
//! ```
//!
//! and CIPS is the mean of the (truncated) t-ratios on `y_{i,t-1}`. The null
//! is a unit root in every unit; small (very negative) values reject.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cips_table;
use crate::design::lag_name;
use crate::error::{invalid, Error, Result};
use crate::panel::{PanelColumn, PanelDataset};
use crate::regress::{ols_with, OlsOptions, SeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CipsCase {
    Intercept,
    InterceptTrend,
}

impl CipsCase {
    /// Truncation bounds `(-K1, K2)` for individual CADF t-ratios.
    pub fn truncation_bounds(self) -> (f64, f64) {
        match self {
            CipsCase::Intercept => (-6.19, 2.61),
            CipsCase::InterceptTrend => (-6.42, 1.70),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Reject,
    FailToReject,
}

/// Where the 5% critical value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalValues {
    /// Embedded table, interpolated in `(N, T)`.
    Table,
    /// Simulated under the null for the panel's own `(N, T)` and lag order.
    Simulate { reps: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CipsResult {
    pub statistic: f64,
    pub case: CipsCase,
    pub adf_lags: usize,
    pub critical_value_5pct: f64,
    pub decision_5pct: Decision,
    pub unit_t_ratios: Vec<f64>,
    /// Identifiers of units entering the statistic.
    pub units: Vec<usize>,
}

impl CipsResult {
    /// `I(0)` when the unit-root null is rejected, `I(1)` otherwise.
    pub fn integration_order(&self) -> &'static str {
        match self.decision_5pct {
            Decision::Reject => "I(0)",
            Decision::FailToReject => "I(1)",
        }
    }
}

fn regressor_count(case: CipsCase, adf_lags: usize) -> usize {
    4 + usize::from(case == CipsCase::InterceptTrend) + 2 * adf_lags
}

/// Per-unit CADF t-ratios (untruncated) with the units that had enough data.
pub fn cadf_t_ratios(col: &PanelColumn, case: CipsCase, adf_lags: usize) -> Result<(Vec<usize>, Vec<f64>)> {
    let ybar = col.cross_section_average();
    let dy = col.first_difference();
    let dybar = ybar.first_difference();
    let mut terms: Vec<(String, PanelColumn)> = vec![
        ("L1.y".into(), col.lag(1)?),
        ("L1.ybar".into(), ybar.lag(1)?.broadcast(col.n_units())),
        ("D.ybar".into(), dybar.broadcast(col.n_units())),
    ];
    for l in 1..=adf_lags {
        terms.push((lag_name("D.y", l), dy.lag(l)?));
        terms.push((lag_name("D.ybar", l), dybar.lag(l)?.broadcast(col.n_units())));
    }
    let trend = case == CipsCase::InterceptTrend;
    let mut names = vec!["const".to_string()];
    names.extend(terms.iter().map(|(n, _)| n.clone()));
    if trend {
        names.push("trend".into());
    }
    let needed = regressor_count(case, adf_lags) + 5;

    let per_unit: Vec<Option<Result<f64>>> = (0..col.n_units())
        .into_par_iter()
        .map(|i| {
            let rows: Vec<usize> = (0..col.n_times())
                .filter(|&t| dy.get(i, t).is_some() && terms.iter().all(|(_, c)| c.get(i, t).is_some()))
                .collect();
            if rows.len() < needed {
                return None;
            }
            let n = rows.len();
            let k = names.len();
            let y = nalgebra::DVector::from_iterator(n, rows.iter().map(|&t| dy.get(i, t).unwrap_or(0.0)));
            let x = nalgebra::DMatrix::from_fn(n, k, |r, c| {
                let t = rows[r];
                match c {
                    0 => 1.0,
                    c if c <= terms.len() => terms[c - 1].1.get(i, t).unwrap_or(0.0),
                    _ => t as f64,
                }
            });
            let opts = OlsOptions {
                se_kind: SeKind::Classical,
                absorbed: 0,
            };
            Some(ols_with(&y, &x, Some(&names), opts).map(|fit| fit.coefficients[1] / fit.std_errors[1]))
        })
        .collect();

    let mut units = Vec::new();
    let mut ratios = Vec::new();
    for (i, r) in per_unit.into_iter().enumerate() {
        if let Some(r) = r {
            ratios.push(r?);
            units.push(i);
        }
    }
    if units.is_empty() {
        return Err(Error::Undefined(format!(
            "CIPS: no unit has the {needed} usable periods the CADF regression needs"
        )));
    }
    Ok((units, ratios))
}

/// Mean of truncated CADF t-ratios.
pub fn cips_statistic(col: &PanelColumn, case: CipsCase, adf_lags: usize) -> Result<(Vec<usize>, Vec<f64>, f64)> {
    let (units, ratios) = cadf_t_ratios(col, case, adf_lags)?;
    let (lo, hi) = case.truncation_bounds();
    let stat = ratios.iter().map(|t| t.clamp(lo, hi)).sum::<f64>() / ratios.len() as f64;
    Ok((units, ratios, stat))
}

pub fn cips_test(ds: &PanelDataset, var: &str, case: CipsCase, adf_lags: usize) -> Result<CipsResult> {
    cips_test_column(ds.variable(var)?, case, adf_lags, CriticalValues::Table)
}

pub fn cips_test_column(
    col: &PanelColumn,
    case: CipsCase,
    adf_lags: usize,
    critical: CriticalValues,
) -> Result<CipsResult> {
    let (units, ratios, statistic) = cips_statistic(col, case, adf_lags)?;
    let n = units.len();
    let t_eff = units
        .iter()
        .map(|&i| col.span(i).map_or(0, |(a, b)| b - a + 1))
        .sum::<usize>() as f64
        / n as f64;
    let critical_value_5pct = match critical {
        CriticalValues::Table => cips_table::critical_value_5pct(case, n as f64, t_eff),
        CriticalValues::Simulate { reps, seed } => {
            simulate_critical_value(case, n, t_eff.round() as usize, adf_lags, reps, seed, 0.05)?
        }
    };
    let decision_5pct = if statistic < critical_value_5pct {
        Decision::Reject
    } else {
        Decision::FailToReject
    };
    Ok(CipsResult {
        statistic,
        case,
        adf_lags,
        critical_value_5pct,
        decision_5pct,
        unit_t_ratios: ratios,
        units,
    })
}

/// Independent Gaussian random walks, `n` units by `t` periods.
pub fn random_walk_panel(n: usize, t: usize, rng: &mut ChaCha8Rng) -> PanelColumn {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let mut level = 0.0;
            (0..t)
                .map(|_| {
                    let e: f64 = StandardNormal.sample(rng);
                    level += e;
                    level
                })
                .collect()
        })
        .collect();
    PanelColumn::from_values(&rows).expect("rectangular")
}

/// Lower-tail `level` quantile of CIPS under the unit-root null.
pub fn simulate_critical_value(
    case: CipsCase,
    n: usize,
    t: usize,
    adf_lags: usize,
    reps: usize,
    seed: u64,
    level: f64,
) -> Result<f64> {
    if reps < 20 {
        return Err(invalid(
            "at least 20 replications are needed to simulate a critical value",
        ));
    }
    if !(0.0..1.0).contains(&level) {
        return Err(invalid("quantile level must lie in (0, 1)"));
    }
    let mut stats = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let panel = random_walk_panel(n, t, &mut rng);
            cips_statistic(&panel, case, adf_lags).map(|(_, _, s)| s)
        })
        .collect::<Result<Vec<f64>>>()?;
    stats.sort_by(f64::total_cmp);
    let pos = level * (reps - 1) as f64;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    let hi = (lo + 1).min(reps - 1);
    Ok(stats[lo] * (1.0 - frac) + stats[hi] * frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statistic_is_mean_of_truncated_ratios() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let panel = random_walk_panel(8, 30, &mut rng);
        let (_, ratios, stat) = cips_statistic(&panel, CipsCase::Intercept, 1).unwrap();
        let (lo, hi) = CipsCase::Intercept.truncation_bounds();
        let mean = ratios.iter().map(|t| t.clamp(lo, hi)).sum::<f64>() / ratios.len() as f64;
        assert_eq!(stat, mean);
    }

    #[test]
    fn short_units_are_skipped_and_all_short_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let panel = random_walk_panel(4, 8, &mut rng);
        assert!(cips_statistic(&panel, CipsCase::Intercept, 0).is_err());
    }

    #[test]
    fn simulated_quantile_is_negative() {
        let cv = simulate_critical_value(CipsCase::Intercept, 10, 20, 0, 200, 11, 0.05).unwrap();
        assert!(cv < -1.5 && cv > -3.5, "{cv}");
    }
}
