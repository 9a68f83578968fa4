//! 5% critical values of the truncated CIPS statistic with no augmentation
//! lags, generated by `examples/cips_critical_values.rs`.

use super::cips::CipsCase;

pub const N_GRID: [usize; 8] = [10, 15, 20, 30, 50, 70, 100, 200];
pub const T_GRID: [usize; 7] = [15, 20, 30, 50, 70, 100, 200];

// @generated rows: N, columns: T (2000 replications, seed 20070312)
pub const INTERCEPT_5PCT: [[f64; 7]; 8] = [
    [-2.38, -2.36, -2.35, -2.32, -2.33, -2.33, -2.32],
    [-2.26, -2.25, -2.25, -2.25, -2.25, -2.25, -2.25],
    [-2.23, -2.18, -2.22, -2.23, -2.19, -2.22, -2.20],
    [-2.18, -2.16, -2.14, -2.18, -2.15, -2.17, -2.16],
    [-2.11, -2.11, -2.11, -2.10, -2.10, -2.12, -2.11],
    [-2.08, -2.08, -2.08, -2.11, -2.10, -2.10, -2.10],
    [-2.06, -2.07, -2.07, -2.08, -2.07, -2.08, -2.09],
    [-2.04, -2.03, -2.06, -2.06, -2.07, -2.07, -2.07],
];
pub const TREND_5PCT: [[f64; 7]; 8] = [
    [-2.91, -2.86, -2.85, -2.85, -2.83, -2.85, -2.83],
    [-2.79, -2.80, -2.77, -2.74, -2.73, -2.76, -2.75],
    [-2.75, -2.74, -2.72, -2.70, -2.70, -2.73, -2.72],
    [-2.69, -2.68, -2.66, -2.66, -2.65, -2.65, -2.66],
    [-2.64, -2.63, -2.62, -2.62, -2.61, -2.61, -2.61],
    [-2.63, -2.60, -2.58, -2.58, -2.59, -2.59, -2.60],
    [-2.60, -2.58, -2.56, -2.56, -2.56, -2.57, -2.57],
    [-2.56, -2.55, -2.54, -2.54, -2.54, -2.54, -2.55],
];
// @end-generated

fn bracket(grid: &[usize], x: f64) -> (usize, usize, f64) {
    let last = grid.len() - 1;
    if x <= grid[0] as f64 {
        return (0, 0, 0.0);
    }
    if x >= grid[last] as f64 {
        return (last, last, 0.0);
    }
    let hi = grid.iter().position(|&g| g as f64 >= x).unwrap_or(last);
    let lo = hi - 1;
    let w = (x - grid[lo] as f64) / (grid[hi] - grid[lo]) as f64;
    (lo, hi, w)
}

/// Bilinear interpolation in `(N, T)`, clamped to the table edges.
pub fn critical_value_5pct(case: CipsCase, n: f64, t: f64) -> f64 {
    let table = match case {
        CipsCase::Intercept => &INTERCEPT_5PCT,
        CipsCase::InterceptTrend => &TREND_5PCT,
    };
    let (n0, n1, wn) = bracket(&N_GRID, n);
    let (t0, t1, wt) = bracket(&T_GRID, t);
    let row = |i: usize| table[i][t0] * (1.0 - wt) + table[i][t1] * wt;
    row(n0) * (1.0 - wn) + row(n1) * wn
}
