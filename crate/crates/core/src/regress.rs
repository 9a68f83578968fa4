//! Least squares with classical or HC1 sandwich covariance.
//!
//! The solver works from a Householder QR of the design; rank is checked
//! beforehand from the singular values. Every estimator in the crate funnels
//! its per-unit or pooled regressions through [`ols_with`].

use nalgebra::{DMatrix, DVector};

use crate::design::TermSet;
use crate::error::{Error, Result};
use crate::panel::PanelDataset;

/// Covariance flavour for reported standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeKind {
    Classical,
    /// White sandwich scaled by `n / (n - k)`.
    #[default]
    RobustHc1,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OlsOptions {
    pub se_kind: SeKind,
    /// Parameters partialled out before the call (fixed effects, unit-specific
    /// nuisance loadings). They count against residual degrees of freedom.
    pub absorbed: usize,
}

#[derive(Debug, Clone)]
pub struct RegressionFit {
    pub coefficients: DVector<f64>,
    pub std_errors: DVector<f64>,
    pub covariance: DMatrix<f64>,
    pub residuals: DVector<f64>,
    pub rmse: f64,
    pub nobs: usize,
    pub rank: usize,
    pub se_kind: SeKind,
}

impl RegressionFit {
    pub fn t_ratios(&self) -> DVector<f64> {
        self.coefficients.component_div(&self.std_errors)
    }

    pub fn ssr(&self) -> f64 {
        self.residuals.norm_squared()
    }
}

pub fn ols(y: &DVector<f64>, x: &DMatrix<f64>, se_kind: SeKind) -> Result<RegressionFit> {
    ols_with(y, x, None, OlsOptions { se_kind, absorbed: 0 })
}

/// OLS with optional column names (used in collinearity errors).
pub fn ols_with(
    y: &DVector<f64>,
    x: &DMatrix<f64>,
    names: Option<&[String]>,
    opts: OlsOptions,
) -> Result<RegressionFit> {
    let (n, k) = x.shape();
    if y.len() != n {
        return Err(Error::Shape(format!("y has {} rows, X has {n}", y.len())));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("design has no columns".into()));
    }
    let df = n.saturating_sub(k + opts.absorbed);
    if n <= k || df == 0 {
        return Err(Error::InsufficientObservations {
            nobs: n,
            ncols: k + opts.absorbed,
        });
    }
    if !y.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("dependent variable"));
    }
    if !x.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("design matrix"));
    }

    let rank = numerical_rank(x);
    if rank < k {
        let cols = collinear_columns(x);
        let label = |j: usize| match names {
            Some(ns) if j < ns.len() => ns[j].clone(),
            _ => format!("column {j}"),
        };
        return Err(Error::Collinear(cols.into_iter().map(label).collect()));
    }

    let qr = x.clone().qr();
    let q = qr.q();
    let r = qr.r();
    let qty = q.transpose() * y;
    let coefficients = r
        .solve_upper_triangular(&qty)
        .ok_or(Error::Collinear(vec!["triangular factor".into()]))?;
    let residuals = y - x * &coefficients;
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .ok_or(Error::Collinear(vec!["triangular factor".into()]))?;

    let ssr = residuals.norm_squared();
    let covariance = match opts.se_kind {
        SeKind::Classical => {
            let s2 = ssr / df as f64;
            &r_inv * r_inv.transpose() * s2
        }
        SeKind::RobustHc1 => {
            // (X'X)^-1 X' diag(e^2) X (X'X)^-1 = R^-1 (Q' diag(e^2) Q) R^-T
            let mut weighted = q.clone();
            for (mut row, e) in weighted.row_iter_mut().zip(residuals.iter()) {
                row *= e * e;
            }
            let meat = q.transpose() * weighted;
            let scale = n as f64 / df as f64;
            &r_inv * meat * r_inv.transpose() * scale
        }
    };
    let covariance = (&covariance + covariance.transpose()) * 0.5;
    let std_errors = covariance.diagonal().map(|v| v.max(0.0).sqrt());
    Ok(RegressionFit {
        coefficients,
        std_errors,
        covariance,
        rmse: (ssr / n as f64).sqrt(),
        residuals,
        nobs: n,
        rank,
        se_kind: opts.se_kind,
    })
}

fn rank_tolerance(x: &DMatrix<f64>, sigma_max: f64) -> f64 {
    let (n, k) = x.shape();
    f64::EPSILON * sigma_max * n.max(k) as f64
}

/// Number of singular values above `eps * sigma_max * max(n, k)`.
pub fn numerical_rank(x: &DMatrix<f64>) -> usize {
    let sv = x.clone().svd(false, false).singular_values;
    let sigma_max = sv.iter().cloned().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return 0;
    }
    let tol = rank_tolerance(x, sigma_max);
    sv.iter().filter(|&&s| s > tol).count()
}

/// Columns that add no rank when appended left to right.
fn collinear_columns(x: &DMatrix<f64>) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut dropped = Vec::new();
    for j in 0..x.ncols() {
        let mut trial = kept.clone();
        trial.push(j);
        let sub = x.select_columns(&trial);
        if numerical_rank(&sub) == trial.len() {
            kept = trial;
        } else {
            dropped.push(j);
        }
    }
    dropped
}

/// Matrix from column vectors of equal length.
pub fn design_from_columns(columns: &[Vec<f64>]) -> DMatrix<f64> {
    let n = columns.first().map_or(0, Vec::len);
    DMatrix::from_fn(n, columns.len(), |r, c| columns[c][r])
}

/// A model whose per-unit regression rows can be enumerated before fitting.
pub trait UnitDesign {
    /// Per-unit design over the dataset (dependent, regressors, deterministic terms).
    fn term_set(&self, ds: &PanelDataset) -> Result<TermSet>;

    /// Parameters estimated separately for every unit.
    fn unit_parameters(&self, set: &TermSet) -> usize;
}

/// Units whose usable span, after lags and differencing, leaves at least
/// `min_df` observations beyond the unit-specific parameter count.
pub fn drop_insufficient_units(ds: &PanelDataset, spec: &dyn UnitDesign, min_df: usize) -> Result<Vec<usize>> {
    if min_df == 0 {
        return Err(Error::InvalidArgument("min_df must be at least 1".into()));
    }
    let set = spec.term_set(ds)?;
    let units = crate::design::surviving_units(&set, spec.unit_parameters(&set), min_df);
    if units.is_empty() {
        return Err(Error::NoUsableUnits);
    }
    Ok(units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_fit_without_intercept() {
        let y = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let x = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, 3.0]);
        let fit = ols(&y, &x, SeKind::RobustHc1).unwrap();
        assert_abs_diff_eq!(fit.coefficients[0], 1.0, epsilon = 1e-12);
        assert!(fit.residuals.iter().all(|e| e.abs() < 1e-12));
        assert!(fit.rmse < 1e-12);
    }

    #[test]
    fn exact_line_with_intercept() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let y = DVector::from_iterator(5, xs.iter().map(|x| 3.0 + 2.0 * x));
        let x = design_from_columns(&[vec![1.0; 5], xs.to_vec()]);
        let fit = ols(&y, &x, SeKind::Classical).unwrap();
        assert_abs_diff_eq!(fit.coefficients[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.coefficients[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn three_point_closed_form() {
        // normal equations: [3 3; 3 5] b = [4; 7]  =>  b = (-1/6, 3/2)
        let y = DVector::from_vec(vec![0.0, 1.0, 3.0]);
        let x = design_from_columns(&[vec![1.0; 3], vec![0.0, 1.0, 2.0]]);
        let fit = ols(&y, &x, SeKind::RobustHc1).unwrap();
        assert_abs_diff_eq!(fit.coefficients[0], -1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.coefficients[1], 1.5, epsilon = 1e-12);
    }

    #[test]
    fn duplicated_column_is_named() {
        let y = DVector::from_vec(vec![1.0, 0.0, 2.0, 5.0]);
        let x = design_from_columns(&[vec![1.0; 4], vec![1.0, 2.0, 3.0, 4.0], vec![1.0, 2.0, 3.0, 4.0]]);
        let names: Vec<String> = ["const", "x", "x_copy"].iter().map(|s| s.to_string()).collect();
        match ols_with(&y, &x, Some(&names), OlsOptions::default()) {
            Err(Error::Collinear(cols)) => assert_eq!(cols, vec!["x_copy".to_string()]),
            other => panic!("expected collinearity error, got {other:?}"),
        }
    }

    #[test]
    fn too_few_rows() {
        let y = DVector::from_vec(vec![1.0, 2.0]);
        let x = design_from_columns(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(matches!(
            ols(&y, &x, SeKind::Classical),
            Err(Error::InsufficientObservations { .. })
        ));
    }

    #[test]
    fn hc1_matches_explicit_sandwich() {
        let xs = [0.3, -1.2, 2.2, 0.7, 1.9, -0.4, 3.1];
        let ys = [1.0, -0.5, 4.1, 1.0, 3.0, 0.9, 6.5];
        let x = design_from_columns(&[vec![1.0; 7], xs.to_vec()]);
        let y = DVector::from_vec(ys.to_vec());
        let fit = ols(&y, &x, SeKind::RobustHc1).unwrap();
        let xtx_inv = (x.transpose() * &x).try_inverse().unwrap();
        let mut meat = DMatrix::zeros(2, 2);
        for i in 0..7 {
            let row = x.row(i).transpose();
            meat += &row * row.transpose() * fit.residuals[i].powi(2);
        }
        let expected = &xtx_inv * meat * &xtx_inv * (7.0 / 5.0);
        for (a, b) in fit.covariance.iter().zip(expected.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }
}
