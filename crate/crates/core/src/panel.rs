//! Unbalanced panel data model and the column transforms every estimator
//! consumes.
//!
//! A [`PanelDataset`] is an `N x T` grid of units by (annual) time periods
//! holding any number of named [`PanelColumn`]s. A cell is either available
//! (`Some(value)`) or masked (`None`). All transforms are pure: they return
//! new columns and never mark a cell available when one of its inputs was
//! masked.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::construct::interpolate_gaps;
use crate::error::{invalid, Error, Result};

/// One named variable over the full `N x T` grid, stored unit-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelColumn {
    n_units: usize,
    n_times: usize,
    cells: Vec<Option<f64>>,
}

impl PanelColumn {
    pub fn masked(n_units: usize, n_times: usize) -> Self {
        Self {
            n_units,
            n_times,
            cells: vec![None; n_units * n_times],
        }
    }

    /// Fully available column filled with `value`.
    pub fn constant(n_units: usize, n_times: usize, value: f64) -> Self {
        Self {
            n_units,
            n_times,
            cells: vec![Some(value); n_units * n_times],
        }
    }

    /// Builds a column from one row of cells per unit.
    pub fn from_rows(rows: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let n_units = rows.len();
        let n_times = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_times) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        Ok(Self {
            n_units,
            n_times,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// Fully available column from dense per-unit rows.
    pub fn from_values(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().copied().map(Some).collect()).collect())
    }

    pub fn n_units(&self) -> usize {
        self.n_units
    }

    pub fn n_times(&self) -> usize {
        self.n_times
    }

    #[inline]
    pub fn get(&self, unit: usize, time: usize) -> Option<f64> {
        self.cells[unit * self.n_times + time]
    }

    #[inline]
    pub fn set(&mut self, unit: usize, time: usize, value: Option<f64>) {
        self.cells[unit * self.n_times + time] = value;
    }

    pub fn unit(&self, unit: usize) -> &[Option<f64>] {
        &self.cells[unit * self.n_times..(unit + 1) * self.n_times]
    }

    fn unit_mut(&mut self, unit: usize) -> &mut [Option<f64>] {
        &mut self.cells[unit * self.n_times..(unit + 1) * self.n_times]
    }

    pub fn cells(&self) -> &[Option<f64>] {
        &self.cells
    }

    /// Number of available cells.
    pub fn count_available(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Available values in unit-major order.
    pub fn available_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.cells.iter().filter_map(|c| *c)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            n_units: self.n_units,
            n_times: self.n_times,
            cells: self.cells.iter().map(|c| c.map(&f)).collect(),
        }
    }

    /// Cellwise binary operation; the result is masked wherever either input is.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            n_units: self.n_units,
            n_times: self.n_times,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| match (a, b) {
                    (Some(a), Some(b)) => Some(f(*a, *b)),
                    _ => None,
                })
                .collect(),
        })
    }

    pub(crate) fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n_units != other.n_units || self.n_times != other.n_times {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.n_units, self.n_times, other.n_units, other.n_times
            )));
        }
        Ok(())
    }

    /// Value at `(i, t)` becomes the value at `(i, t - lag)`; the first `lag`
    /// periods of every unit are masked.
    pub fn lag(&self, lag: usize) -> Result<Self> {
        if lag == 0 {
            return Err(invalid("lag order must be positive"));
        }
        let mut out = Self::masked(self.n_units, self.n_times);
        for i in 0..self.n_units {
            shift_into(self.unit(i), out.unit_mut(i), lag);
        }
        Ok(out)
    }

    pub fn first_difference(&self) -> Self {
        let mut out = Self::masked(self.n_units, self.n_times);
        for i in 0..self.n_units {
            diff_into(self.unit(i), out.unit_mut(i));
        }
        out
    }

    /// Equal-weight mean over the units available at each period.
    pub fn cross_section_average(&self) -> TimeSeries {
        let cells = (0..self.n_times)
            .map(|t| {
                let (sum, count) = (0..self.n_units)
                    .filter_map(|i| self.get(i, t))
                    .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
                (count > 0).then(|| sum / count as f64)
            })
            .collect();
        TimeSeries { cells }
    }

    /// Deviation of each cell from the cross-section average at its period.
    pub fn cs_demean(&self) -> Self {
        let avg = self.cross_section_average();
        let mut out = self.clone();
        for i in 0..self.n_units {
            for (t, cell) in out.unit_mut(i).iter_mut().enumerate() {
                *cell = match (*cell, avg.cells[t]) {
                    (Some(v), Some(a)) => Some(v - a),
                    _ => None,
                };
            }
        }
        out
    }

    /// Keeps only the listed units, in the given order.
    pub fn select_units(&self, units: &[usize]) -> Self {
        let mut cells = Vec::with_capacity(units.len() * self.n_times);
        for &i in units {
            cells.extend_from_slice(self.unit(i));
        }
        Self {
            n_units: units.len(),
            n_times: self.n_times,
            cells,
        }
    }

    /// Index range `[first, last]` of available cells for a unit.
    pub fn span(&self, unit: usize) -> Option<(usize, usize)> {
        let row = self.unit(unit);
        let first = row.iter().position(Option::is_some)?;
        let last = row.iter().rposition(Option::is_some)?;
        Some((first, last))
    }

    /// True when the unit's available cells form one unbroken window.
    pub fn is_contiguous(&self, unit: usize) -> bool {
        match self.span(unit) {
            None => true,
            Some((a, b)) => self.unit(unit)[a..=b].iter().all(Option::is_some),
        }
    }
}

/// A single series over the time index, e.g. a cross-section average.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    cells: Vec<Option<f64>>,
}

impl TimeSeries {
    pub fn new(cells: Vec<Option<f64>>) -> Self {
        Self { cells }
    }

    pub fn cells(&self) -> &[Option<f64>] {
        &self.cells
    }

    pub fn get(&self, t: usize) -> Option<f64> {
        self.cells[t]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn lag(&self, lag: usize) -> Result<Self> {
        if lag == 0 {
            return Err(invalid("lag order must be positive"));
        }
        let mut cells = vec![None; self.cells.len()];
        shift_into(&self.cells, &mut cells, lag);
        Ok(Self { cells })
    }

    pub fn first_difference(&self) -> Self {
        let mut cells = vec![None; self.cells.len()];
        diff_into(&self.cells, &mut cells);
        Self { cells }
    }

    /// Repeats the series for every unit, giving a panel column.
    pub fn broadcast(&self, n_units: usize) -> PanelColumn {
        let mut cells = Vec::with_capacity(n_units * self.cells.len());
        for _ in 0..n_units {
            cells.extend_from_slice(&self.cells);
        }
        PanelColumn {
            n_units,
            n_times: self.cells.len(),
            cells,
        }
    }
}

fn shift_into(src: &[Option<f64>], dst: &mut [Option<f64>], lag: usize) {
    if lag < src.len() {
        dst[lag..].copy_from_slice(&src[..src.len() - lag]);
    }
}

fn diff_into(src: &[Option<f64>], dst: &mut [Option<f64>]) {
    for t in 1..src.len() {
        dst[t] = match (src[t], src[t - 1]) {
            (Some(a), Some(b)) => Some(a - b),
            _ => None,
        };
    }
}

/// How a variable participates in a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Dependent,
    Regressor,
    Constructed,
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableRole {
    pub name: String,
    pub role: Role,
}

/// Checks that a role assignment names exactly one dependent variable.
pub fn validate_roles(roles: &[VariableRole]) -> Result<()> {
    match roles.iter().filter(|r| r.role == Role::Dependent).count() {
        1 => Ok(()),
        n => Err(invalid(format!("expected exactly one dependent variable, found {n}"))),
    }
}

/// Category used by [`PanelDataset::dummy_columns`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DummyKind {
    Year,
    Unit,
}

/// Named indicator columns.
#[derive(Debug, Clone)]
pub struct DummyColumns {
    pub names: Vec<String>,
    pub columns: Vec<PanelColumn>,
}

/// Unbalanced `N x T` panel of named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelDataset {
    units: Vec<String>,
    times: Vec<i64>,
    names: Vec<String>,
    columns: Vec<PanelColumn>,
}

impl PanelDataset {
    /// Empty dataset over the given units and consecutive years.
    pub fn new(units: Vec<String>, times: Vec<i64>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for u in &units {
            if !seen.insert(u.as_str()) {
                return Err(invalid(format!("duplicate unit identifier `{u}`")));
            }
        }
        if times.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(invalid("time index must increase in steps of one"));
        }
        Ok(Self {
            units,
            times,
            names: Vec::new(),
            columns: Vec::new(),
        })
    }

    /// Adds (or replaces) a variable.
    pub fn insert(&mut self, name: impl Into<String>, column: PanelColumn) -> Result<()> {
        if column.n_units() != self.n_units() || column.n_times() != self.n_times() {
            return Err(Error::Shape(format!(
                "column is {}x{}, panel is {}x{}",
                column.n_units(),
                column.n_times(),
                self.n_units(),
                self.n_times()
            )));
        }
        let name = name.into();
        match self.names.iter().position(|n| *n == name) {
            Some(k) => self.columns[k] = column,
            None => {
                self.names.push(name);
                self.columns.push(column);
            }
        }
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, column: PanelColumn) -> Result<Self> {
        self.insert(name, column)?;
        Ok(self)
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn times(&self) -> &[i64] {
        &self.times
    }

    pub fn n_units(&self) -> usize {
        self.units.len()
    }

    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn variable(&self, name: &str) -> Result<&PanelColumn> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|k| &self.columns[k])
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn has_variable(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn observation_count(&self, name: &str) -> Result<usize> {
        Ok(self.variable(name)?.count_available())
    }

    /// Available observations per variable, in column order.
    pub fn observation_counts(&self) -> Vec<(String, usize)> {
        self.names
            .iter()
            .zip(&self.columns)
            .map(|(n, c)| (n.clone(), c.count_available()))
            .collect()
    }

    pub fn unit_index(&self, id: &str) -> Option<usize> {
        self.units.iter().position(|u| u == id)
    }

    pub fn lag(&self, var: &str, lag: usize) -> Result<PanelColumn> {
        self.variable(var)?.lag(lag)
    }

    pub fn first_difference(&self, var: &str) -> Result<PanelColumn> {
        Ok(self.variable(var)?.first_difference())
    }

    pub fn cross_section_average(&self, var: &str) -> Result<TimeSeries> {
        Ok(self.variable(var)?.cross_section_average())
    }

    pub fn cs_demean(&self, var: &str) -> Result<PanelColumn> {
        Ok(self.variable(var)?.cs_demean())
    }

    /// Indicator columns for all categories except the earliest `drop`.
    pub fn dummy_columns(&self, kind: DummyKind, drop: usize) -> Result<DummyColumns> {
        if !(1..=2).contains(&drop) {
            return Err(invalid("dummy drop count must be 1 or 2"));
        }
        let categories = match kind {
            DummyKind::Year => self.n_times(),
            DummyKind::Unit => self.n_units(),
        };
        if drop >= categories {
            return Err(invalid(format!("cannot drop {drop} of {categories} categories")));
        }
        let (n, t) = (self.n_units(), self.n_times());
        let mut names = Vec::new();
        let mut columns = Vec::new();
        for k in drop..categories {
            let mut col = PanelColumn::constant(n, t, 0.0);
            match kind {
                DummyKind::Year => {
                    for i in 0..n {
                        col.set(i, k, Some(1.0));
                    }
                    names.push(format!("year_{}", self.times[k]));
                }
                DummyKind::Unit => {
                    for s in 0..t {
                        col.set(k, s, Some(1.0));
                    }
                    names.push(format!("unit_{}", self.units[k]));
                }
            }
            columns.push(col);
        }
        Ok(DummyColumns { names, columns })
    }

    /// Subset of units, in the given order.
    pub fn select_units(&self, units: &[usize]) -> Self {
        Self {
            units: units.iter().map(|&i| self.units[i].clone()).collect(),
            times: self.times.clone(),
            names: self.names.clone(),
            columns: self.columns.iter().map(|c| c.select_units(units)).collect(),
        }
    }

    /// Errors on the first unit whose observations of some variable have an
    /// interior gap.
    pub fn check_contiguous(&self) -> Result<()> {
        for (name, col) in self.names.iter().zip(&self.columns) {
            for i in 0..self.n_units() {
                if !col.is_contiguous(i) {
                    return Err(Error::InteriorGap {
                        unit: self.units[i].clone(),
                        variable: name.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Column mapping for delimited panel input.
#[derive(Debug, Clone)]
pub struct PanelSchema {
    pub unit_column: String,
    pub time_column: String,
    /// Variables to load; `None` loads every other column.
    pub variables: Option<Vec<String>>,
}

impl Default for PanelSchema {
    fn default() -> Self {
        Self {
            unit_column: "unit".into(),
            time_column: "year".into(),
            variables: None,
        }
    }
}

/// Treatment of interior gaps at load time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapPolicy {
    #[default]
    Reject,
    Interpolate,
}

/// Reads a comma-separated panel with a header row. Empty fields are missing;
/// lines starting with `#` are skipped.
pub fn load_panel<R: Read>(reader: R, schema: &PanelSchema, gaps: GapPolicy) -> Result<PanelDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let unit_col = find(&schema.unit_column)?;
    let time_col = find(&schema.time_column)?;
    let var_names: Vec<String> = match &schema.variables {
        Some(v) => v.clone(),
        None => headers
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != unit_col && *k != time_col)
            .map(|(_, h)| h.to_string())
            .collect(),
    };
    if var_names.is_empty() {
        return Err(invalid("no variable columns"));
    }
    let var_cols = var_names.iter().map(|v| find(v)).collect::<Result<Vec<_>>>()?;

    struct Row {
        unit: usize,
        year: i64,
        values: Vec<Option<f64>>,
    }
    let mut units: Vec<String> = Vec::new();
    let mut unit_lookup: HashMap<String, usize> = HashMap::new();
    let mut rows = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record?;
        let row_no = k + 1;
        let unit_id = record.get(unit_col).unwrap_or("").to_string();
        let year_raw = record.get(time_col).unwrap_or("");
        let year: i64 = year_raw.parse().map_err(|_| Error::NonNumeric {
            column: schema.time_column.clone(),
            value: year_raw.to_string(),
            row: row_no,
        })?;
        let unit = *unit_lookup.entry(unit_id.clone()).or_insert_with(|| {
            units.push(unit_id.clone());
            units.len() - 1
        });
        let values = var_cols
            .iter()
            .zip(&var_names)
            .map(|(&c, name)| {
                let raw = record.get(c).unwrap_or("");
                if raw.is_empty() {
                    return Ok(None);
                }
                match raw.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(Some(v)),
                    _ => Err(Error::NonNumeric {
                        column: name.clone(),
                        value: raw.to_string(),
                        row: row_no,
                    }),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(Row { unit, year, values });
    }
    if rows.is_empty() {
        return Err(Error::EmptyPanel);
    }
    let first = rows.iter().map(|r| r.year).min().unwrap_or(0);
    let last = rows.iter().map(|r| r.year).max().unwrap_or(0);
    let times: Vec<i64> = (first..=last).collect();
    let (n, t) = (units.len(), times.len());
    let mut columns = vec![PanelColumn::masked(n, t); var_names.len()];
    let mut seen = vec![false; n * t];
    for (k, row) in rows.iter().enumerate() {
        let s = (row.year - first) as usize;
        if std::mem::replace(&mut seen[row.unit * t + s], true) {
            return Err(Error::DuplicateRow {
                unit: units[row.unit].clone(),
                year: row.year,
                row: k + 1,
            });
        }
        for (col, v) in columns.iter_mut().zip(&row.values) {
            col.set(row.unit, s, *v);
        }
    }
    if columns.iter().all(|c| c.count_available() == 0) {
        return Err(Error::EmptyPanel);
    }
    if gaps == GapPolicy::Interpolate {
        for col in &mut columns {
            for i in 0..n {
                if !col.is_contiguous(i) {
                    let filled = interpolate_gaps(col.unit(i))?;
                    col.unit_mut(i).copy_from_slice(&filled);
                }
            }
        }
    }
    let mut ds = PanelDataset::new(units, times)?;
    for (name, col) in var_names.into_iter().zip(columns) {
        ds.insert(name, col)?;
    }
    ds.check_contiguous()?;
    for (name, count) in ds.observation_counts() {
        log::info!("loaded `{name}`: {count} observations");
    }
    Ok(ds)
}

pub fn read_panel_csv(path: impl AsRef<Path>, schema: &PanelSchema, gaps: GapPolicy) -> Result<PanelDataset> {
    let file = std::fs::File::open(path)?;
    load_panel(std::io::BufReader::new(file), schema, gaps)
}

/// Writes `unit,year,<vars...>`; rows with no available variable are omitted.
pub fn write_panel<W: Write>(ds: &PanelDataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["unit".to_string(), "year".to_string()];
    header.extend(ds.names.iter().cloned());
    w.write_record(&header)?;
    for (i, unit) in ds.units.iter().enumerate() {
        for (s, year) in ds.times.iter().enumerate() {
            if ds.columns.iter().all(|c| c.get(i, s).is_none()) {
                continue;
            }
            let mut record = vec![unit.clone(), year.to_string()];
            record.extend(
                ds.columns
                    .iter()
                    .map(|c| c.get(i, s).map(|v| v.to_string()).unwrap_or_default()),
            );
            w.write_record(&record)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[Option<f64>]) -> PanelColumn {
        PanelColumn::from_rows(vec![v.to_vec()]).unwrap()
    }

    #[test]
    fn lag_examples() {
        let x = series(&[Some(1.0), Some(2.0), Some(3.0)]);
        assert_eq!(x.lag(1).unwrap().unit(0), &[None, Some(1.0), Some(2.0)]);
        let short = series(&[Some(1.0), Some(2.0)]);
        assert_eq!(short.lag(2).unwrap().unit(0), &[None, None]);
        let y = series(&[Some(5.0), Some(6.0), Some(7.0), Some(8.0)]);
        assert_eq!(y.lag(3).unwrap().unit(0), &[None, None, None, Some(5.0)]);
        assert!(y.lag(0).is_err());
    }

    #[test]
    fn difference_examples() {
        let x = series(&[Some(1.0), Some(3.0), Some(6.0)]);
        assert_eq!(x.first_difference().unit(0), &[None, Some(2.0), Some(3.0)]);
        let c = series(&[Some(4.0); 4]);
        assert_eq!(c.first_difference().unit(0), &[None, Some(0.0), Some(0.0), Some(0.0)]);
        let gap = series(&[Some(1.0), Some(2.0), None, Some(5.0), Some(7.0)]);
        assert_eq!(
            gap.first_difference().unit(0),
            &[None, Some(1.0), None, None, Some(2.0)]
        );
    }

    #[test]
    fn cross_section_average_examples() {
        let c = PanelColumn::from_rows(vec![
            vec![Some(1.0), Some(1.0), None],
            vec![Some(2.0), None, None],
            vec![Some(3.0), Some(3.0), None],
        ])
        .unwrap();
        let avg = c.cross_section_average();
        assert_eq!(avg.cells(), &[Some(2.0), Some(2.0), None]);
    }

    #[test]
    fn demean_examples() {
        let c = PanelColumn::from_rows(vec![
            vec![Some(1.0), Some(7.0), Some(4.0)],
            vec![Some(2.0), None, Some(4.0)],
            vec![Some(3.0), None, Some(4.0)],
        ])
        .unwrap();
        let d = c.cs_demean();
        assert_eq!(d.get(0, 0), Some(-1.0));
        assert_eq!(d.get(1, 0), Some(0.0));
        assert_eq!(d.get(2, 0), Some(1.0));
        assert_eq!(d.get(0, 1), Some(0.0));
        assert_eq!(d.get(1, 1), None);
        assert!((0..3).all(|i| d.get(i, 2) == Some(0.0)));
    }

    fn toy_panel(n: usize, t: usize) -> PanelDataset {
        PanelDataset::new(
            (0..n).map(|i| format!("u{i}")).collect(),
            (2000..2000 + t as i64).collect(),
        )
        .unwrap()
    }

    #[test]
    fn dummy_column_counts() {
        let ds = toy_panel(3, 4);
        let year1 = ds.dummy_columns(DummyKind::Year, 1).unwrap();
        assert_eq!(year1.columns.len(), 3);
        assert_eq!(year1.names[0], "year_2001");
        assert_eq!(ds.dummy_columns(DummyKind::Year, 2).unwrap().columns.len(), 2);
        let units = ds.dummy_columns(DummyKind::Unit, 1).unwrap();
        assert_eq!(units.columns.len(), 2);
        assert_eq!(units.columns[0].get(1, 3), Some(1.0));
        assert_eq!(units.columns[0].get(0, 3), Some(0.0));
        assert!(toy_panel(2, 4).dummy_columns(DummyKind::Unit, 2).is_err());
        assert!(ds.dummy_columns(DummyKind::Year, 3).is_err());
    }

    #[test]
    fn load_simple_panel() {
        let text = "unit,year,x\na,2000,1\na,2001,2\na,2002,3\nb,2000,4\nb,2001,5\nb,2002,6\n";
        let ds = load_panel(text.as_bytes(), &PanelSchema::default(), GapPolicy::Reject).unwrap();
        assert_eq!(ds.n_units(), 2);
        assert_eq!(ds.n_times(), 3);
        assert_eq!(ds.observation_count("x").unwrap(), 6);
        assert_eq!(ds.variable("x").unwrap().get(1, 2), Some(6.0));
    }

    #[test]
    fn load_rejects_duplicates_and_garbage() {
        let dup = "unit,year,x\na,2000,1\na,2000,2\n";
        let err = load_panel(dup.as_bytes(), &PanelSchema::default(), GapPolicy::Reject).unwrap_err();
        match err {
            Error::DuplicateRow { unit, year, row } => {
                assert_eq!((unit.as_str(), year, row), ("a", 2000, 2));
            }
            other => panic!("unexpected {other}"),
        }
        let bad = "unit,year,x\na,2000,abc\n";
        assert!(matches!(
            load_panel(bad.as_bytes(), &PanelSchema::default(), GapPolicy::Reject),
            Err(Error::NonNumeric { .. })
        ));
        let empty = "unit,year,x\n";
        assert!(matches!(
            load_panel(empty.as_bytes(), &PanelSchema::default(), GapPolicy::Reject),
            Err(Error::EmptyPanel)
        ));
    }

    #[test]
    fn interior_gap_rejected_or_interpolated() {
        let text = "unit,year,x\na,2000,1\na,2001,\na,2002,3\n";
        assert!(matches!(
            load_panel(text.as_bytes(), &PanelSchema::default(), GapPolicy::Reject),
            Err(Error::InteriorGap { .. })
        ));
        let ds = load_panel(text.as_bytes(), &PanelSchema::default(), GapPolicy::Interpolate).unwrap();
        assert_eq!(ds.variable("x").unwrap().unit(0), &[Some(1.0), Some(2.0), Some(3.0)]);
    }

    #[test]
    fn write_then_load_is_identity() {
        let text = "unit,year,x,y\na,2000,1.5,\na,2001,2,0.25\nb,2001,-3,1e-9\n";
        let ds = load_panel(text.as_bytes(), &PanelSchema::default(), GapPolicy::Reject).unwrap();
        let mut buf = Vec::new();
        write_panel(&ds, &mut buf).unwrap();
        let back = load_panel(buf.as_slice(), &PanelSchema::default(), GapPolicy::Reject).unwrap();
        assert_eq!(ds, back);
    }

    #[test]
    fn roles_need_one_dependent() {
        let r = |name: &str, role| VariableRole {
            name: name.into(),
            role,
        };
        assert!(validate_roles(&[r("y", Role::Dependent), r("x", Role::Regressor)]).is_ok());
        assert!(validate_roles(&[r("x", Role::Regressor)]).is_err());
        assert!(validate_roles(&[r("y", Role::Dependent), r("z", Role::Dependent)]).is_err());
    }
}
