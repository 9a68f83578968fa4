//! Flat TOML run configurations.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use ccepanel::construct::{ConstructionConfig, WeightScheme};
use ccepanel::diagnostics::CipsCase;
use ccepanel::dynamic::{DynamicEstimator, DynamicSpec};
use ccepanel::mcsim::{ExperimentEstimator, FactorDGPConfig};
use ccepanel::statics::{StaticEstimator, StaticSpec};
use ccepanel::{GapPolicy, PanelSchema};
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// Raw bytes of a config file with its parsed table.
pub struct ConfigFile {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
    pub table: toml::Table,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).with_context(|| format!("reading config {}", path.display()))?;
        let text = std::str::from_utf8(&bytes).context("config is not UTF-8")?;
        let table: toml::Table = text
            .parse()
            .with_context(|| format!("parsing config {}", path.display()))?;
        for (key, value) in &table {
            if value.is_table() {
                bail!("config key `{key}`: nested tables are not supported");
            }
        }
        Ok(ConfigFile {
            path: path.to_path_buf(),
            bytes,
            table,
        })
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T> {
        toml::Value::Table(self.table.clone())
            .try_into()
            .with_context(|| format!("invalid config {}", self.path.display()))
    }
}

fn default_unit() -> String {
    "unit".into()
}

fn default_year() -> String {
    "year".into()
}

fn default_true() -> bool {
    true
}

fn default_case() -> CipsCase {
    CipsCase::Intercept
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Static(StaticEstimator),
    Dynamic(DynamicEstimator),
}

pub fn parse_model(name: &str) -> Result<Model> {
    let value = toml::Value::String(name.to_string());
    if let Ok(e) = value.clone().try_into::<StaticEstimator>() {
        return Ok(Model::Static(e));
    }
    if let Ok(e) = value.try_into::<DynamicEstimator>() {
        return Ok(Model::Dynamic(e));
    }
    Err(anyhow!(
        "unknown model `{name}` (expected pols, fe2, fd, ccep, mg, cdmg, ccemg, ardl_pols, ardl_fe2, ardl_mg, cs_ardl or cs_dlmg)"
    ))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateConfig {
    pub dependent: String,
    pub regressors: Vec<String>,
    pub model: String,
    #[serde(default)]
    pub trend: bool,
    #[serde(default = "default_true")]
    pub include_intercept: bool,
    /// Autoregressive order of dynamic models.
    pub p: Option<usize>,
    pub cs_lags: Option<usize>,
    pub min_df: Option<usize>,
    #[serde(default = "default_unit")]
    pub unit_column: String,
    #[serde(default = "default_year")]
    pub time_column: String,
    #[serde(default)]
    pub interpolate: bool,
    /// Deterministic case of the residual unit root test.
    #[serde(default = "default_case")]
    pub cips_case: CipsCase,
    #[serde(default)]
    pub cips_lags: usize,
}

pub enum ModelSpec {
    Static(StaticSpec),
    Dynamic(DynamicSpec),
}

impl EstimateConfig {
    pub fn schema(&self) -> PanelSchema {
        schema(&self.unit_column, &self.time_column)
    }

    pub fn gaps(&self) -> GapPolicy {
        gaps(self.interpolate)
    }

    pub fn spec(&self) -> Result<ModelSpec> {
        let regs: Vec<&str> = self.regressors.iter().map(String::as_str).collect();
        match parse_model(&self.model)? {
            Model::Static(e) => {
                if self.p.is_some() || self.cs_lags.is_some() {
                    bail!("`p` and `cs_lags` apply to dynamic models only");
                }
                let mut spec = StaticSpec::new(&self.dependent, &regs, e).with_trend(self.trend);
                spec.include_intercept = self.include_intercept;
                if let Some(d) = self.min_df {
                    spec.min_df = d;
                }
                spec.validate()?;
                Ok(ModelSpec::Static(spec))
            }
            Model::Dynamic(e) => {
                let p = self
                    .p
                    .ok_or_else(|| anyhow!("dynamic model `{}` needs `p`", self.model))?;
                let mut spec = DynamicSpec::new(&self.dependent, &regs, p, e).with_trend(self.trend);
                if let Some(c) = self.cs_lags {
                    spec = spec.with_cs_lags(c);
                }
                if let Some(d) = self.min_df {
                    spec.min_df = d;
                }
                spec.validate()?;
                Ok(ModelSpec::Dynamic(spec))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructKind {
    RdStock,
    ForeignRd,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructConfig {
    pub kind: ConstructKind,
    pub output_variable: String,
    /// GDP column (`rd_stock`).
    pub gdp: Option<String>,
    /// R&D expenditure share of GDP column (`rd_stock`).
    pub share: Option<String>,
    /// Domestic R&D stock column (`foreign_rd`).
    pub stock: Option<String>,
    /// Bilateral trade file (`foreign_rd`).
    pub trade: Option<PathBuf>,
    pub delta_rd: Option<f64>,
    pub growth_window: Option<(i64, i64)>,
    pub fallback_window: Option<(i64, i64)>,
    pub weight_scheme: Option<WeightScheme>,
    pub partner_set: Option<Vec<String>>,
    pub gnp_to_gdp: Option<String>,
    #[serde(default = "default_unit")]
    pub unit_column: String,
    #[serde(default = "default_year")]
    pub time_column: String,
    #[serde(default)]
    pub interpolate: bool,
}

impl ConstructConfig {
    pub fn schema(&self) -> PanelSchema {
        schema(&self.unit_column, &self.time_column)
    }

    pub fn gaps(&self) -> GapPolicy {
        gaps(self.interpolate)
    }

    pub fn construction(&self) -> ConstructionConfig {
        let d = ConstructionConfig::default();
        ConstructionConfig {
            delta_rd: self.delta_rd.unwrap_or(d.delta_rd),
            growth_window: self.growth_window.unwrap_or(d.growth_window),
            fallback_window: self.fallback_window.unwrap_or(d.fallback_window),
            weight_scheme: self.weight_scheme.unwrap_or(d.weight_scheme),
            partner_set: self.partner_set.clone(),
            gnp_to_gdp: self.gnp_to_gdp.clone(),
        }
    }

    pub fn required<'a>(&self, field: &'a Option<String>, key: &str) -> Result<&'a str> {
        field
            .as_deref()
            .ok_or_else(|| anyhow!("construct kind {:?} needs `{key}`", self.kind))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummarizeConfig {
    pub variables: Option<Vec<String>>,
    #[serde(default = "default_unit")]
    pub unit_column: String,
    #[serde(default = "default_year")]
    pub time_column: String,
    #[serde(default)]
    pub interpolate: bool,
}

impl Default for SummarizeConfig {
    fn default() -> Self {
        SummarizeConfig {
            variables: None,
            unit_column: default_unit(),
            time_column: default_year(),
            interpolate: false,
        }
    }
}

impl SummarizeConfig {
    pub fn schema(&self) -> PanelSchema {
        schema(&self.unit_column, &self.time_column)
    }

    pub fn gaps(&self) -> GapPolicy {
        gaps(self.interpolate)
    }
}

/// Keys of a simulate config that are not DGP parameters.
const RUN_KEYS: [&str; 3] = ["replications", "estimators", "p"];

pub struct SimulateConfig {
    pub dgp: FactorDGPConfig,
    pub replications: usize,
    pub estimators: Vec<ExperimentEstimator>,
}

impl SimulateConfig {
    pub fn from_table(table: &toml::Table) -> Result<Self> {
        let mut dgp_table = table.clone();
        let mut run = toml::Table::new();
        for key in RUN_KEYS {
            if let Some(v) = dgp_table.remove(key) {
                run.insert(key.to_string(), v);
            }
        }
        let dgp: FactorDGPConfig = toml::Value::Table(dgp_table)
            .try_into()
            .context("invalid DGP parameters")?;
        let replications = match run.get("replications") {
            Some(v) => v
                .as_integer()
                .filter(|r| *r > 0)
                .ok_or_else(|| anyhow!("`replications` must be a positive integer"))? as usize,
            None => 100,
        };
        let p = match run.get("p") {
            Some(v) => v
                .as_integer()
                .filter(|p| *p > 0)
                .ok_or_else(|| anyhow!("`p` must be a positive integer"))? as usize,
            None => 1,
        };
        let names: Vec<String> = match run.get("estimators") {
            Some(v) => v
                .clone()
                .try_into()
                .context("`estimators` must be a list of model names")?,
            None => vec!["fe2".into(), "mg".into(), "ccemg".into()],
        };
        if names.is_empty() {
            bail!("`estimators` is empty");
        }
        let estimators = names
            .iter()
            .map(|n| {
                Ok(match parse_model(n)? {
                    Model::Static(e) => ExperimentEstimator::static_on_dgp(e),
                    Model::Dynamic(e) => ExperimentEstimator::dynamic_on_dgp(e, p),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimulateConfig {
            dgp,
            replications,
            estimators,
        })
    }
}

fn schema(unit: &str, time: &str) -> PanelSchema {
    PanelSchema {
        unit_column: unit.to_string(),
        time_column: time.to_string(),
        variables: None,
    }
}

fn gaps(interpolate: bool) -> GapPolicy {
    if interpolate {
        GapPolicy::Interpolate
    } else {
        GapPolicy::Reject
    }
}
