//! CD statistic for weak cross-section dependence.

use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::panel::PanelColumn;

/// Pairs overlapping on fewer periods are skipped.
pub const MIN_PAIR_OVERLAP: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CdResult {
    pub statistic: f64,
    /// Two-sided standard normal p-value.
    pub p_value: f64,
    /// Pairs entering the statistic.
    pub n_pairs: usize,
    /// Pairs skipped for short overlap or zero variance.
    pub skipped_pairs: usize,
    pub avg_overlap: f64,
    /// Units with at least one observation.
    pub n_units: usize,
}

impl CdResult {
    pub fn rejects(&self, level: f64) -> bool {
        self.p_value < level
    }
}

pub fn two_sided_normal_p(z: f64) -> f64 {
    let normal = Normal::standard();
    (2.0 * (1.0 - normal.cdf(z.abs()))).clamp(0.0, 1.0)
}

/// Correlation of two series over the periods where both are available,
/// each demeaned over that overlap. `None` if the overlap is shorter than
/// [`MIN_PAIR_OVERLAP`] or either series is constant on it.
fn pair_correlation(a: &[Option<f64>], b: &[Option<f64>]) -> Option<(f64, usize)> {
    let pairs: Vec<(f64, f64)> = a.iter().zip(b).filter_map(|(x, y)| Some(((*x)?, (*y)?))).collect();
    let t = pairs.len();
    if t < MIN_PAIR_OVERLAP {
        return None;
    }
    let tf = t as f64;
    let ma = pairs.iter().map(|p| p.0).sum::<f64>() / tf;
    let mb = pairs.iter().map(|p| p.1).sum::<f64>() / tf;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in &pairs {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa <= 0.0 || sbb <= 0.0 {
        return None;
    }
    Some(((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0), t))
}

/// `CD = sqrt(2 / (N (N - 1))) * sum_{i<j} sqrt(T_ij) rho_ij` over the
/// residual panel.
pub fn cd_test(residuals: &PanelColumn) -> Result<CdResult> {
    let units: Vec<usize> = (0..residuals.n_units())
        .filter(|&i| residuals.unit(i).iter().any(Option::is_some))
        .collect();
    let n = units.len();
    if n < 2 {
        return Err(Error::Undefined(format!("CD test needs at least 2 units, got {n}")));
    }
    // (sum sqrt(T) rho, used pairs, skipped pairs, total overlap) per row of
    // the pair triangle, reduced in unit order.
    let rows: Vec<(f64, usize, usize, usize)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let ua = residuals.unit(units[a]);
            let mut acc = (0.0, 0, 0, 0);
            for &ub in &units[a + 1..] {
                match pair_correlation(ua, residuals.unit(ub)) {
                    Some((rho, t)) => {
                        acc.0 += (t as f64).sqrt() * rho;
                        acc.1 += 1;
                        acc.3 += t;
                    }
                    None => acc.2 += 1,
                }
            }
            acc
        })
        .collect();
    let (sum, used, skipped, overlap) = rows.iter().fold((0.0, 0, 0, 0), |acc, r| {
        (acc.0 + r.0, acc.1 + r.1, acc.2 + r.2, acc.3 + r.3)
    });
    if used == 0 {
        return Err(Error::Undefined("CD test: no unit pair has a usable overlap".into()));
    }
    let nf = n as f64;
    let statistic = (2.0 / (nf * (nf - 1.0))).sqrt() * sum;
    Ok(CdResult {
        statistic,
        p_value: two_sided_normal_p(statistic),
        n_pairs: used,
        skipped_pairs: skipped,
        avg_overlap: overlap as f64 / used as f64,
        n_units: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_residuals() {
        let base: Vec<f64> = (0..25).map(|t| ((t * 37 % 11) as f64 - 5.0) * 0.3).collect();
        let col = PanelColumn::from_values(&[base.clone(), base.clone(), base]).unwrap();
        let r = cd_test(&col).unwrap();
        assert!((r.statistic - 75f64.sqrt()).abs() < 1e-9);
        assert_eq!(r.n_pairs, 3);
        assert_eq!(r.avg_overlap, 25.0);
    }

    #[test]
    fn anti_correlated_pair_is_negative() {
        let a: Vec<f64> = (0..10).map(|t| (t as f64).sin()).collect();
        let b: Vec<f64> = a.iter().map(|v| -2.0 * v + 1.0).collect();
        let r = cd_test(&PanelColumn::from_values(&[a, b]).unwrap()).unwrap();
        assert!((r.statistic + 10f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn short_overlaps_are_skipped() {
        let col = PanelColumn::from_rows(vec![
            vec![Some(1.0), Some(2.0), Some(0.5), None, None, None],
            vec![None, None, None, Some(1.0), Some(3.0), Some(2.0)],
            vec![Some(0.0), Some(1.0), Some(4.0), Some(2.0), Some(1.0), Some(0.0)],
        ])
        .unwrap();
        let r = cd_test(&col).unwrap();
        assert_eq!(r.n_pairs, 2);
        assert_eq!(r.skipped_pairs, 1);
    }

    #[test]
    fn needs_two_units_and_a_pair() {
        assert!(cd_test(&PanelColumn::from_values(&[vec![1.0, 2.0, 3.0]]).unwrap()).is_err());
        let disjoint = PanelColumn::from_rows(vec![
            vec![Some(1.0), Some(2.0), None, None],
            vec![None, None, Some(1.0), Some(2.0)],
        ])
        .unwrap();
        assert!(cd_test(&disjoint).is_err());
    }
}
