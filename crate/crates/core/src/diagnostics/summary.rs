//! Descriptive statistics in levels, logs and log growth.

use crate::error::{Error, Result};
use crate::panel::PanelDataset;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation (`n - 1` divisor; 0 for a single value).
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn from_values(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        let sd = if n > 1 { (ss / (n - 1) as f64).sqrt() } else { 0.0 };
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        };
        Some(Stats {
            count: n,
            mean,
            median,
            sd,
            min: sorted[0],
            max: sorted[n - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub variable: String,
    pub levels: Stats,
    /// `None` when some value is not strictly positive.
    pub logs: Option<Stats>,
    /// First differences of logs.
    pub growth: Option<Stats>,
}

pub fn summary_stats(ds: &PanelDataset, var: &str) -> Result<SummaryStats> {
    let col = ds.variable(var)?;
    let levels: Vec<f64> = col.available_values().collect();
    let level_stats =
        Stats::from_values(&levels).ok_or_else(|| Error::Undefined(format!("`{var}` has no observations")))?;
    let (logs, growth) = if levels.iter().all(|v| *v > 0.0) {
        let logged = col.map(f64::ln);
        let log_values: Vec<f64> = logged.available_values().collect();
        let growth_values: Vec<f64> = logged.first_difference().available_values().collect();
        (Stats::from_values(&log_values), Stats::from_values(&growth_values))
    } else {
        (None, None)
    };
    Ok(SummaryStats {
        variable: var.to_string(),
        levels: level_stats,
        logs,
        growth,
    })
}
