//! Plain-text result tables in the layout of the estimation tables:
//! coefficients with stars, standard errors in parentheses, then the
//! diagnostic rows.

use std::fmt::Write as _;

use crate::diagnostics::cd::two_sided_normal_p;
use crate::diagnostics::{CdResult, CipsResult};
use crate::dynamic::DynamicResult;
use crate::statics::StaticResult;

const LABEL_WIDTH: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// Three decimals, as printed in the tables.
    #[default]
    Fixed,
    /// Shortest representation that round-trips.
    Full,
}

impl Precision {
    pub fn format(self, v: f64) -> String {
        if !v.is_finite() {
            return "n/a".into();
        }
        match self {
            Precision::Fixed => format!("{v:.3}"),
            Precision::Full => format!("{v}"),
        }
    }
}

/// `***` at 1%, `**` at 5%, `*` at 10%, using normal two-sided p-values.
pub fn stars(estimate: f64, se: f64) -> &'static str {
    if se.is_nan() || se <= 0.0 || !estimate.is_finite() {
        return "";
    }
    let p = two_sided_normal_p(estimate / se);
    if p < 0.01 {
        "***"
    } else if p < 0.05 {
        "**"
    } else if p < 0.10 {
        "*"
    } else {
        ""
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub rows: Vec<(String, String)>,
}

impl Table {
    fn new(title: String) -> Self {
        Table {
            title,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, label: &str, value: String) {
        self.rows.push((label.to_string(), value));
    }

    fn coefficient(&mut self, label: &str, value: f64, se: f64, prec: Precision) {
        self.push(label, format!("{}{}", prec.format(value), stars(value, se)));
        self.push("", format!("({})", prec.format(se)));
    }

    fn cd(&mut self, cd: Option<&CdResult>, prec: Precision) {
        let cell = match cd {
            Some(cd) if cd.rejects(0.05) => format!("{}†", prec.format(cd.statistic)),
            Some(cd) => prec.format(cd.statistic),
            None => "n/a".into(),
        };
        self.push("CD-test", cell);
    }

    fn footer(&mut self, rmse: f64, nxt: usize, n: usize, prec: Precision) {
        self.push("RMSE", prec.format(rmse));
        self.push("NXT", nxt.to_string());
        self.push("N", n.to_string());
    }

    /// Renders the table, preceded by `manifest` lines prefixed with `# `.
    pub fn render(&self, manifest: &[String]) -> String {
        let mut out = String::new();
        for line in manifest {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{:<LABEL_WIDTH$}{}", "", self.title);
        for (label, value) in &self.rows {
            let _ = writeln!(out, "{label:<LABEL_WIDTH$}{value}");
        }
        out
    }
}

/// Static-model column. `integration` is the CIPS result on the residuals.
pub fn static_table(res: &StaticResult, integration: Option<&CipsResult>, prec: Precision) -> Table {
    let title = if res.trend {
        format!("{} (trend)", res.estimator.label())
    } else {
        res.estimator.label().to_string()
    };
    let mut t = Table::new(title);
    for (k, name) in res.regressors.iter().enumerate() {
        t.coefficient(name, res.aggregate_coefficients[k], res.aggregate_se[k], prec);
    }
    t.cd(res.cd.as_ref(), prec);
    t.push(
        "Order of Integration",
        integration.map_or("n/a".into(), |c| c.integration_order().to_string()),
    );
    t.footer(res.rmse, res.nxt, res.n, prec);
    t
}

/// Dynamic-model column: long-run rows, then the cointegration coefficient.
pub fn dynamic_table(res: &DynamicResult, prec: Precision) -> Table {
    let mut title = format!("{} p={}", res.estimator.label(), res.p);
    if res.estimator.uses_averages() {
        let _ = write!(title, " cs_lags={}", res.cs_lags);
    }
    if res.trend {
        title.push_str(" (trend)");
    }
    let mut t = Table::new(title);
    t.push("Long-run estimates", String::new());
    for (name, est) in res.regressors.iter().zip(&res.long_run) {
        t.coefficient(name, est.value, est.se, prec);
    }
    match res.ec_coefficient {
        Some(ec) => t.coefficient("Cointegration coefficients", ec.value, ec.se, prec),
        None => t.push("Cointegration coefficients", "-".into()),
    }
    t.cd(res.cd.as_ref(), prec);
    t.footer(res.rmse, res.nxt, res.n, prec);
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_thresholds() {
        assert_eq!(stars(3.0, 1.0), "***");
        assert_eq!(stars(2.0, 1.0), "**");
        assert_eq!(stars(1.7, 1.0), "*");
        assert_eq!(stars(1.0, 1.0), "");
        assert_eq!(stars(1.0, 0.0), "");
    }

    #[test]
    fn precision_modes() {
        assert_eq!(Precision::Fixed.format(0.0904), "0.090");
        assert_eq!(Precision::Full.format(0.0904), "0.0904");
        assert_eq!(Precision::Fixed.format(f64::NAN), "n/a");
    }
}
