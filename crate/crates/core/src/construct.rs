//! Variable construction: TFP, perpetual-inventory R&D capital stocks,
//! trade-weighted foreign R&D and linear gap filling.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::panel::{PanelColumn, PanelDataset};

/// Log TFP from a Cobb-Douglas split: `ln Y - xi ln K - (1 - xi) ln L`.
pub fn tfp_share_based(y: f64, k: f64, l: f64, xi: f64) -> Result<f64> {
    if !(y > 0.0 && k > 0.0 && l > 0.0) {
        return Err(invalid("output, capital and labour must be positive"));
    }
    if !(xi > 0.0 && xi < 1.0) {
        return Err(invalid(format!("capital share must lie in (0, 1), got {xi}")));
    }
    Ok(y.ln() - xi * k.ln() - (1.0 - xi) * l.ln())
}

/// TFP growth factor: real GDP growth factor over the Tornqvist input
/// quantity index.
pub fn tornqvist_tfp_ratio(rgdp_ratio: f64, input_quantity_index: f64) -> Result<f64> {
    if !(rgdp_ratio > 0.0 && input_quantity_index > 0.0) {
        return Err(invalid("GDP ratio and input index must be positive"));
    }
    Ok(rgdp_ratio / input_quantity_index)
}

/// Chains period-on-period TFP growth factors into a level index that equals
/// `base_value` at the first available period. Cell `t` of `ratios` is the
/// factor from `t - 1` to `t`.
pub fn chain_index(ratios: &[Option<f64>], base_value: f64) -> Vec<Option<f64>> {
    let mut out = vec![None; ratios.len()];
    let mut level: Option<f64> = None;
    for t in 0..ratios.len() {
        level = match (level, ratios[t]) {
            (None, _) => Some(base_value),
            (Some(v), Some(r)) => Some(v * r),
            (Some(_), None) => None,
        };
        out[t] = level;
    }
    out
}

/// Perpetual-inventory stock. `rex[t]` is expenditure in period `t`; the
/// initial stock is `y0 * avg_rex_share / (delta + g)` and
/// `R_t = (1 - delta) R_{t-1} + rex[t]` for `t >= 1` (`rex[0]` is absorbed by
/// the steady-state initial condition).
pub fn perpetual_inventory(rex: &[f64], y0: f64, avg_rex_share: f64, delta: f64, g: f64) -> Result<Vec<f64>> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("depreciation rate must lie in (0, 1), got {delta}")));
    }
    if delta + g <= 0.0 {
        return Err(invalid(format!("delta + g must be positive, got {}", delta + g)));
    }
    if rex.iter().any(|r| *r < 0.0 || !r.is_finite()) {
        return Err(invalid("R&D expenditure must be finite and nonnegative"));
    }
    if rex.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(rex.len());
    out.push(y0 * avg_rex_share / (delta + g));
    for r in &rex[1..] {
        let prev = *out.last().unwrap_or(&0.0);
        out.push((1.0 - delta) * prev + r);
    }
    Ok(out)
}

/// Linear interpolation of interior gaps; leading and trailing gaps stay
/// masked.
pub fn interpolate_gaps(series: &[Option<f64>]) -> Result<Vec<Option<f64>>> {
    let observed: Vec<usize> = series.iter().enumerate().filter_map(|(t, v)| v.map(|_| t)).collect();
    if observed.len() < 2 {
        return Err(invalid(format!(
            "interpolation needs at least 2 observations, got {}",
            observed.len()
        )));
    }
    let mut out = series.to_vec();
    for w in observed.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 2 {
            continue;
        }
        let (va, vb) = (series[a].unwrap_or(0.0), series[b].unwrap_or(0.0));
        for (t, cell) in out.iter_mut().enumerate().take(b).skip(a + 1) {
            let w = (t - a) as f64 / (b - a) as f64;
            *cell = Some(va + w * (vb - va));
        }
    }
    Ok(out)
}

/// Mean annual growth rate `Y_t / Y_{t-1} - 1` over the years in `window`.
pub fn average_growth(gdp: &[Option<f64>], years: &[i64], window: (i64, i64)) -> Option<f64> {
    let rates: Vec<f64> = (1..gdp.len())
        .filter(|&t| years[t - 1] >= window.0 && years[t] <= window.1)
        .filter_map(|t| match (gdp[t], gdp[t - 1]) {
            (Some(a), Some(b)) if b > 0.0 => Some(a / b - 1.0),
            _ => None,
        })
        .collect();
    (!rates.is_empty()).then(|| rates.iter().sum::<f64>() / rates.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    /// Imports over partner GDP.
    Lp,
    /// Import shares summing to one.
    Ch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    #[serde(default = "default_delta")]
    pub delta_rd: f64,
    #[serde(default = "default_growth_window")]
    pub growth_window: (i64, i64),
    /// Used when `growth_window` holds no growth observation.
    #[serde(default = "default_fallback_window")]
    pub fallback_window: (i64, i64),
    #[serde(default = "default_scheme")]
    pub weight_scheme: WeightScheme,
    /// Partner units; `None` means every unit in the trade data.
    #[serde(default)]
    pub partner_set: Option<Vec<String>>,
    /// Optional column multiplying the expenditure share (GNP to GDP ratio).
    #[serde(default)]
    pub gnp_to_gdp: Option<String>,
}

fn default_delta() -> f64 {
    0.15
}

fn default_growth_window() -> (i64, i64) {
    (1981, 1990)
}

fn default_fallback_window() -> (i64, i64) {
    (1990, 2000)
}

fn default_scheme() -> WeightScheme {
    WeightScheme::Lp
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        Self {
            delta_rd: default_delta(),
            growth_window: default_growth_window(),
            fallback_window: default_fallback_window(),
            weight_scheme: default_scheme(),
            partner_set: None,
            gnp_to_gdp: None,
        }
    }
}

impl ConstructionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_rd > 0.0 && self.delta_rd < 1.0) {
            return Err(invalid("delta_rd must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// R&D capital stocks for every unit from GDP and the R&D expenditure share
/// of GDP. Units without a usable growth estimate stay masked.
pub fn rd_stock_panel(
    ds: &PanelDataset,
    gdp_var: &str,
    share_var: &str,
    cfg: &ConstructionConfig,
) -> Result<PanelColumn> {
    cfg.validate()?;
    let gdp = ds.variable(gdp_var)?;
    let mut share = ds.variable(share_var)?.clone();
    if let Some(ratio) = &cfg.gnp_to_gdp {
        share = share.zip_with(ds.variable(ratio)?, |s, r| s * r)?;
    }
    let years = ds.times();
    let rows: Vec<Result<Vec<Option<f64>>>> = (0..ds.n_units())
        .into_par_iter()
        .map(|i| {
            let mut out = vec![None; ds.n_times()];
            let both: Vec<usize> = (0..ds.n_times())
                .filter(|&t| gdp.get(i, t).is_some() && share.get(i, t).is_some())
                .collect();
            let Some(&start) = both.first() else {
                return Ok(out);
            };
            let end = (start..ds.n_times())
                .take_while(|&t| gdp.get(i, t).is_some() && share.get(i, t).is_some())
                .last()
                .unwrap_or(start);
            let g = average_growth(gdp.unit(i), years, cfg.growth_window)
                .or_else(|| average_growth(gdp.unit(i), years, cfg.fallback_window));
            let Some(g) = g else {
                log::warn!(
                    "unit `{}`: no GDP growth in either window, stock left missing",
                    ds.units()[i]
                );
                return Ok(out);
            };
            let shares: Vec<f64> = both.iter().filter_map(|&t| share.get(i, t)).collect();
            let avg_share = shares.iter().sum::<f64>() / shares.len() as f64;
            let rex: Vec<f64> = (start..=end)
                .map(|t| share.get(i, t).unwrap_or(0.0) * gdp.get(i, t).unwrap_or(0.0))
                .collect();
            let y0 = gdp.get(i, start).unwrap_or(0.0);
            let stock = perpetual_inventory(&rex, y0, avg_share, cfg.delta_rd, g)?;
            for (t, v) in (start..=end).zip(stock) {
                out[t] = Some(v);
            }
            Ok(out)
        })
        .collect();
    PanelColumn::from_rows(rows.into_iter().collect::<Result<Vec<_>>>()?)
}

/// One bilateral import flow.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct TradeRecord {
    pub importer: String,
    pub partner: String,
    pub year: i64,
    pub imports: f64,
    pub partner_gdp: f64,
}

/// Bilateral imports indexed by `(importer, year)`.
#[derive(Debug, Clone, Default)]
pub struct TradeMatrix {
    records: Vec<TradeRecord>,
    index: HashMap<(String, i64), Vec<usize>>,
}

impl TradeMatrix {
    pub fn new(records: Vec<TradeRecord>) -> Result<Self> {
        let mut index: HashMap<(String, i64), Vec<usize>> = HashMap::new();
        for (k, r) in records.iter().enumerate() {
            if r.importer == r.partner {
                return Err(invalid(format!("self-pair for `{}` in {}", r.importer, r.year)));
            }
            if !(r.imports.is_finite() && r.imports >= 0.0) {
                return Err(invalid(format!(
                    "imports of `{}` from `{}` in {} must be nonnegative",
                    r.importer, r.partner, r.year
                )));
            }
            index.entry((r.importer.clone(), r.year)).or_default().push(k);
        }
        for rows in index.values_mut() {
            rows.sort_by(|&a, &b| records[a].partner.cmp(&records[b].partner));
            if rows.windows(2).any(|w| records[w[0]].partner == records[w[1]].partner) {
                let r = &records[rows[0]];
                return Err(invalid(format!(
                    "duplicate partner rows for `{}` in {}",
                    r.importer, r.year
                )));
            }
        }
        Ok(Self { records, index })
    }

    /// Reads `importer,partner,year,imports,partner_gdp`.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let records = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<TradeRecord>, _>>()?;
        Self::new(records)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_reader(std::io::BufReader::new(std::fs::File::open(path)?))
    }

    /// Flows of `importer` in `year` from partners in `partners` (all when
    /// `None`), ordered by partner identifier.
    pub fn flows<'a>(
        &'a self,
        importer: &str,
        year: i64,
        partners: Option<&'a [String]>,
    ) -> impl Iterator<Item = &'a TradeRecord> + 'a {
        self.index
            .get(&(importer.to_string(), year))
            .into_iter()
            .flatten()
            .map(move |&k| &self.records[k])
            .filter(move |r| partners.is_none_or(|p| p.contains(&r.partner)))
    }

    /// Copy with every import value multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.records
                .iter()
                .map(|r| TradeRecord {
                    imports: r.imports * factor,
                    ..r.clone()
                })
                .collect(),
        )
    }

    pub fn records(&self) -> &[TradeRecord] {
        &self.records
    }
}

/// Weighted partner aggregate and the partners skipped for missing stocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForeignRd {
    pub value: f64,
    pub partners_used: usize,
    pub partners_skipped: usize,
}

fn partner_stocks<'a>(
    trade: &'a TradeMatrix,
    ds: &'a PanelDataset,
    stocks: &'a PanelColumn,
    importer: &str,
    year: i64,
    partners: Option<&'a [String]>,
) -> Result<(Vec<(&'a TradeRecord, f64)>, usize)> {
    let t = ds
        .times()
        .iter()
        .position(|&y| y == year)
        .ok_or_else(|| invalid(format!("year {year} outside the panel")))?;
    let mut used = Vec::new();
    let mut skipped = 0;
    for r in trade.flows(importer, year, partners) {
        match ds.unit_index(&r.partner).and_then(|c| stocks.get(c, t)) {
            Some(s) => used.push((r, s)),
            None => skipped += 1,
        }
    }
    if used.is_empty() {
        return Err(Error::Undefined(format!(
            "no partner of `{importer}` has an R&D stock in {year}"
        )));
    }
    Ok((used, skipped))
}

/// `sum_c (M_ic / Y_c) R_c` over partners with an available stock.
pub fn lp_foreign_rd(
    trade: &TradeMatrix,
    ds: &PanelDataset,
    stock_var: &str,
    importer: &str,
    year: i64,
    partners: Option<&[String]>,
) -> Result<ForeignRd> {
    let stocks = ds.variable(stock_var)?;
    let (used, skipped) = partner_stocks(trade, ds, stocks, importer, year, partners)?;
    let mut value = 0.0;
    for (r, s) in &used {
        if r.imports > 0.0 {
            if r.partner_gdp.is_nan() || r.partner_gdp <= 0.0 {
                return Err(invalid(format!(
                    "GDP of partner `{}` in {year} must be positive",
                    r.partner
                )));
            }
            value += r.imports / r.partner_gdp * s;
        }
    }
    Ok(ForeignRd {
        value,
        partners_used: used.len(),
        partners_skipped: skipped,
    })
}

/// Import-share weighted average of partner stocks; weights are renormalized
/// over partners with an available stock.
pub fn ch_foreign_rd(
    trade: &TradeMatrix,
    ds: &PanelDataset,
    stock_var: &str,
    importer: &str,
    year: i64,
    partners: Option<&[String]>,
) -> Result<ForeignRd> {
    let stocks = ds.variable(stock_var)?;
    let (used, skipped) = partner_stocks(trade, ds, stocks, importer, year, partners)?;
    let weights = ch_weights(&used.iter().map(|(r, _)| r.imports).collect::<Vec<_>>())
        .ok_or_else(|| Error::Undefined(format!("`{importer}` has zero total imports in {year}")))?;
    Ok(ForeignRd {
        value: weights.iter().zip(&used).map(|(w, (_, s))| w * s).sum(),
        partners_used: used.len(),
        partners_skipped: skipped,
    })
}

/// Import shares; `None` when total imports are zero.
pub fn ch_weights(imports: &[f64]) -> Option<Vec<f64>> {
    let total: f64 = imports.iter().sum();
    (total > 0.0).then(|| imports.iter().map(|m| m / total).collect())
}

/// Foreign R&D for every `(unit, year)` of the panel; cells whose aggregate is
/// undefined stay masked.
pub fn foreign_rd_panel(
    trade: &TradeMatrix,
    ds: &PanelDataset,
    stock_var: &str,
    cfg: &ConstructionConfig,
) -> Result<PanelColumn> {
    ds.variable(stock_var)?;
    let partners = cfg.partner_set.as_deref();
    let rows: Vec<Result<Vec<Option<f64>>>> = ds
        .units()
        .par_iter()
        .map(|unit| {
            ds.times()
                .iter()
                .map(|&year| {
                    let r = match cfg.weight_scheme {
                        WeightScheme::Lp => lp_foreign_rd(trade, ds, stock_var, unit, year, partners),
                        WeightScheme::Ch => ch_foreign_rd(trade, ds, stock_var, unit, year, partners),
                    };
                    match r {
                        Ok(v) => Ok(Some(v.value)),
                        Err(Error::Undefined(_)) => Ok(None),
                        Err(e) => Err(e),
                    }
                })
                .collect()
        })
        .collect();
    PanelColumn::from_rows(rows.into_iter().collect::<Result<Vec<_>>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn share_based_tfp() {
        assert_eq!(tfp_share_based(1.0, 1.0, 1.0, 0.3).unwrap(), 0.0);
        assert!((tfp_share_based(std::f64::consts::E, 1.0, 1.0, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!((tfp_share_based(4.0, 2.0, 2.0, 0.3).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(tfp_share_based(0.0, 1.0, 1.0, 0.3).is_err());
        assert!(tfp_share_based(1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn tornqvist_ratio() {
        assert_eq!(tornqvist_tfp_ratio(1.03, 1.0).unwrap(), 1.03);
        assert_eq!(tornqvist_tfp_ratio(1.07, 1.07).unwrap(), 1.0);
        assert!((tornqvist_tfp_ratio(1.04, 1.02).unwrap() - 1.0196078431372548).abs() < 1e-15);
        assert!(tornqvist_tfp_ratio(-1.0, 1.0).is_err());
    }

    #[test]
    fn chained_index() {
        let idx = chain_index(&[None, Some(1.1), Some(0.5)], 1.0);
        assert_eq!(idx[0], Some(1.0));
        assert!((idx[2].unwrap() - 0.55).abs() < 1e-15);
    }

    #[test]
    fn perpetual_inventory_steps() {
        let s = perpetual_inventory(&[0.0, 3.0], 100.0, 0.02, 0.15, 0.05).unwrap();
        assert!((s[0] - 10.0).abs() < 1e-12);
        assert!((s[1] - 11.5).abs() < 1e-12);
        let decay = perpetual_inventory(&[0.0; 5], 100.0, 0.02, 0.15, 0.05).unwrap();
        for w in decay.windows(2) {
            assert!((w[1] - 0.85 * w[0]).abs() < 1e-12);
        }
        assert!(perpetual_inventory(&[1.0], 1.0, 0.1, 0.15, -0.2).is_err());
        assert!(perpetual_inventory(&[-1.0], 1.0, 0.1, 0.15, 0.0).is_err());
    }

    #[test]
    fn gap_filling() {
        assert_eq!(
            interpolate_gaps(&[Some(1.0), None, Some(3.0)]).unwrap(),
            vec![Some(1.0), Some(2.0), Some(3.0)]
        );
        assert_eq!(
            interpolate_gaps(&[None, Some(2.0), Some(4.0)]).unwrap(),
            vec![None, Some(2.0), Some(4.0)]
        );
        let filled = interpolate_gaps(&[Some(0.0), None, None, Some(3.0)]).unwrap();
        for (a, b) in filled.iter().zip([0.0, 1.0, 2.0, 3.0]) {
            assert!((a.unwrap() - b).abs() < 1e-15);
        }
        assert!(interpolate_gaps(&[Some(1.0), None]).is_err());
    }

    #[test]
    fn growth_window_fallback() {
        let years: Vec<i64> = (1989..1995).collect();
        let gdp = [None, None, Some(100.0), Some(110.0), Some(121.0), None];
        assert_eq!(average_growth(&gdp, &years, (1981, 1990)), None);
        let g = average_growth(&gdp, &years, (1990, 2000)).unwrap();
        assert!((g - 0.1).abs() < 1e-12);
    }

    fn stocks_panel() -> PanelDataset {
        PanelDataset::new(vec!["A".into(), "B".into(), "C".into()], vec![2000])
            .unwrap()
            .with(
                "rd",
                PanelColumn::from_values(&[vec![1.0], vec![20.0], vec![40.0]]).unwrap(),
            )
            .unwrap()
    }

    fn flow(partner: &str, imports: f64, gdp: f64) -> TradeRecord {
        TradeRecord {
            importer: "A".into(),
            partner: partner.into(),
            year: 2000,
            imports,
            partner_gdp: gdp,
        }
    }

    #[test]
    fn lp_examples() {
        let ds = stocks_panel();
        let one = TradeMatrix::new(vec![flow("B", 10.0, 40.0)]).unwrap();
        // M/Y = 0.25, R = 20 -> 5
        assert_eq!(lp_foreign_rd(&one, &ds, "rd", "A", 2000, None).unwrap().value, 5.0);
        let zero = TradeMatrix::new(vec![flow("B", 0.0, 40.0), flow("C", 0.0, 10.0)]).unwrap();
        assert_eq!(lp_foreign_rd(&zero, &ds, "rd", "A", 2000, None).unwrap().value, 0.0);
        let two = TradeMatrix::new(vec![flow("B", 1.0, 10.0), flow("C", 1.0, 20.0)]).unwrap();
        // 0.1 * 20 + 0.05 * 40
        assert!((lp_foreign_rd(&two, &ds, "rd", "A", 2000, None).unwrap().value - 4.0).abs() < 1e-12);
    }

    #[test]
    fn ch_examples() {
        let ds = PanelDataset::new(vec!["A".into(), "B".into(), "C".into()], vec![2000])
            .unwrap()
            .with(
                "rd",
                PanelColumn::from_values(&[vec![1.0], vec![10.0], vec![20.0]]).unwrap(),
            )
            .unwrap();
        let equal = TradeMatrix::new(vec![flow("B", 5.0, 1.0), flow("C", 5.0, 1.0)]).unwrap();
        assert_eq!(ch_foreign_rd(&equal, &ds, "rd", "A", 2000, None).unwrap().value, 15.0);
        let single = TradeMatrix::new(vec![flow("C", 2.0, 1.0)]).unwrap();
        assert_eq!(ch_foreign_rd(&single, &ds, "rd", "A", 2000, None).unwrap().value, 20.0);
        let uneven = TradeMatrix::new(vec![flow("B", 3.0, 1.0), flow("C", 1.0, 1.0)]).unwrap();
        assert!((ch_foreign_rd(&uneven, &ds, "rd", "A", 2000, None).unwrap().value - 12.5).abs() < 1e-12);
        let none = TradeMatrix::new(vec![flow("B", 0.0, 1.0)]).unwrap();
        assert!(ch_foreign_rd(&none, &ds, "rd", "A", 2000, None).is_err());
    }

    #[test]
    fn missing_partner_stocks_are_skipped() {
        let ds = PanelDataset::new(vec!["A".into(), "B".into(), "C".into()], vec![2000])
            .unwrap()
            .with(
                "rd",
                PanelColumn::from_rows(vec![vec![Some(1.0)], vec![None], vec![Some(8.0)]]).unwrap(),
            )
            .unwrap();
        let trade = TradeMatrix::new(vec![flow("B", 1.0, 1.0), flow("C", 1.0, 2.0)]).unwrap();
        let r = lp_foreign_rd(&trade, &ds, "rd", "A", 2000, None).unwrap();
        assert_eq!((r.value, r.partners_used, r.partners_skipped), (4.0, 1, 1));
        let only_b = vec!["B".to_string()];
        assert!(lp_foreign_rd(&trade, &ds, "rd", "A", 2000, Some(&only_b)).is_err());
    }

    #[test]
    fn trade_matrix_invariants() {
        assert!(TradeMatrix::new(vec![flow("A", 1.0, 1.0)]).is_err());
        assert!(TradeMatrix::new(vec![flow("B", -1.0, 1.0)]).is_err());
        let csv = "importer,partner,year,imports,partner_gdp\nA,B,2000,3.5,100\nA,C,2000,1,50\n";
        let t = TradeMatrix::from_reader(csv.as_bytes()).unwrap();
        assert_eq!(t.flows("A", 2000, None).count(), 2);
    }

    #[test]
    fn stock_panel_from_shares() {
        let years: Vec<i64> = (1980..1984).collect();
        let gdp = vec![100.0, 110.0, 121.0, 133.1];
        let ds = PanelDataset::new(vec!["A".into()], years)
            .unwrap()
            .with("gdp", PanelColumn::from_values(std::slice::from_ref(&gdp)).unwrap())
            .unwrap()
            .with("gerd", PanelColumn::from_values(&[vec![0.02; 4]]).unwrap())
            .unwrap();
        let cfg = ConstructionConfig::default();
        let stock = rd_stock_panel(&ds, "gdp", "gerd", &cfg).unwrap();
        // g = 0.10 from 1981..1983; R0 = 100 * 0.02 / 0.25 = 8
        assert!((stock.get(0, 0).unwrap() - 8.0).abs() < 1e-9);
        let r1 = 0.85 * 8.0 + 0.02 * 110.0;
        assert!((stock.get(0, 1).unwrap() - r1).abs() < 1e-9);
    }
}
