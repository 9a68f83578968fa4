use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use ccepanel::construct::{foreign_rd_panel, rd_stock_panel, TradeMatrix};
use ccepanel::diagnostics::{cd_test, cips_test_column, summary_stats, CipsCase, CriticalValues, Stats};
use ccepanel::dynamic::fit_dynamic;
use ccepanel::mcsim::run_experiment;
use ccepanel::panel::write_panel;
use ccepanel::statics::fit_static;
use ccepanel::table::{dynamic_table, static_table, Precision};
use ccepanel::{read_panel_csv, GapPolicy, PanelDataset, PanelSchema};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

mod config;

use config::{ConfigFile, ConstructConfig, ConstructKind, EstimateConfig, ModelSpec, SimulateConfig, SummarizeConfig};

const SIMULATED_CV_REPS: usize = 1000;
const DEFAULT_CV_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "ccepanel",
    version,
    about = "Panel estimation under multifactor error structures"
)]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Panel CSV with unit and year columns.
    #[arg(long)]
    input: PathBuf,
    /// Output file (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a static or dynamic model and print its result table.
    Estimate {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        config: PathBuf,
        /// Print all digits instead of three decimals.
        #[arg(long)]
        full_precision: bool,
        /// Simulate CIPS critical values for the residual panel instead of interpolating the table.
        #[arg(long)]
        simulate_critical_values: bool,
        /// Seed for simulated critical values.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cross-section dependence or panel unit root test on one column.
    Test {
        #[arg(value_enum)]
        test: TestKind,
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        column: String,
        #[arg(long, value_enum, default_value = "intercept")]
        case: CaseArg,
        /// Augmentation lags of the CADF regressions.
        #[arg(long, default_value_t = 0)]
        lags: usize,
        #[arg(long)]
        simulate_critical_values: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "unit")]
        unit_column: String,
        #[arg(long, default_value = "year")]
        time_column: String,
        #[arg(long)]
        full_precision: bool,
    },
    /// Build R&D stocks or foreign R&D and append them to the panel.
    Construct {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a Monte Carlo experiment on the factor DGP.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Descriptive statistics in levels, logs and growth rates.
    Summarize {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated variables (default: all).
        #[arg(long, value_delimiter = ',')]
        variables: Option<Vec<String>>,
        #[arg(long)]
        full_precision: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TestKind {
    Cd,
    Cips,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Intercept,
    Trend,
}

impl From<CaseArg> for CipsCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Intercept => CipsCase::Intercept,
            CaseArg::Trend => CipsCase::InterceptTrend,
        }
    }
}

fn precision(full: bool) -> Precision {
    if full {
        Precision::Full
    } else {
        Precision::Fixed
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Header lines written (with a `# ` prefix) at the top of every output.
struct Manifest {
    lines: Vec<String>,
}

impl Manifest {
    fn new(command: &str) -> Self {
        Manifest {
            lines: vec![format!("ccepanel {} {command}", env!("CARGO_PKG_VERSION"))],
        }
    }

    fn file(&mut self, role: &str, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.lines
            .push(format!("{role}: {} sha256={}", path.display(), sha256_hex(&bytes)));
        Ok(())
    }

    fn config(&mut self, cfg: &ConfigFile) {
        self.lines.push(format!(
            "config: {} sha256={}",
            cfg.path.display(),
            sha256_hex(&cfg.bytes)
        ));
    }

    fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn render(&self) -> String {
        self.lines.iter().map(|l| format!("# {l}\n")).collect()
    }
}

fn require_exists(paths: &[&Path]) -> Result<()> {
    for p in paths {
        if !p.exists() {
            bail!("{}: no such file", p.display());
        }
    }
    Ok(())
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn load(path: &Path, schema: &PanelSchema, gaps: GapPolicy) -> Result<PanelDataset> {
    read_panel_csv(path, schema, gaps).with_context(|| format!("loading {}", path.display()))
}

fn estimate(io: &Io, config: &Path, full: bool, simulate_cv: bool, seed: Option<u64>) -> Result<()> {
    require_exists(&[&io.input, config])?;
    let file = ConfigFile::read(config)?;
    let cfg: EstimateConfig = file.parse()?;
    let spec = cfg.spec()?;
    let mut manifest = Manifest::new("estimate");
    manifest.file("input", &io.input)?;
    manifest.config(&file);
    let critical = if simulate_cv {
        let seed = seed.unwrap_or(DEFAULT_CV_SEED);
        manifest.push(format!("seed: {seed}"));
        CriticalValues::Simulate {
            reps: SIMULATED_CV_REPS,
            seed,
        }
    } else {
        CriticalValues::Table
    };
    let ds = load(&io.input, &cfg.schema(), cfg.gaps())?;
    let prec = precision(full);
    let table = match spec {
        ModelSpec::Static(spec) => {
            let res = fit_static(&ds, &spec)?;
            let cips = match cips_test_column(&res.residuals, cfg.cips_case, cfg.cips_lags, critical) {
                Ok(c) => Some(c),
                Err(e) => {
                    log::warn!("residual unit root test unavailable: {e}");
                    None
                }
            };
            static_table(&res, cips.as_ref(), prec)
        }
        ModelSpec::Dynamic(spec) => dynamic_table(&fit_dynamic(&ds, &spec)?, prec),
    };
    emit(io.output.as_deref(), &table.render(&manifest.lines))
}

#[allow(clippy::too_many_arguments)]
fn test(
    kind: TestKind,
    io: &Io,
    column: &str,
    case: CipsCase,
    lags: usize,
    simulate_cv: bool,
    seed: Option<u64>,
    schema: PanelSchema,
    full: bool,
) -> Result<()> {
    require_exists(&[&io.input])?;
    let mut manifest = Manifest::new("test");
    manifest.file("input", &io.input)?;
    manifest.push(format!("column: {column}"));
    let ds = load(&io.input, &schema, GapPolicy::Reject)?;
    let col = ds.variable(column)?;
    let prec = precision(full);
    let mut body = String::new();
    match kind {
        TestKind::Cd => {
            manifest.push("test: cd");
            let cd = cd_test(col)?;
            body += &format!("CD statistic,{}\n", prec.format(cd.statistic));
            body += &format!("p-value,{}\n", prec.format(cd.p_value));
            body += &format!("reject at 5%,{}\n", cd.rejects(0.05));
            body += &format!("pairs,{}\n", cd.n_pairs);
            body += &format!("skipped pairs,{}\n", cd.skipped_pairs);
            body += &format!("units,{}\n", cd.n_units);
        }
        TestKind::Cips => {
            manifest.push(format!("test: cips case={case:?} lags={lags}"));
            let critical = if simulate_cv {
                let seed = seed.unwrap_or(DEFAULT_CV_SEED);
                manifest.push(format!("seed: {seed}"));
                CriticalValues::Simulate {
                    reps: SIMULATED_CV_REPS,
                    seed,
                }
            } else {
                CriticalValues::Table
            };
            let res = cips_test_column(col, case, lags, critical)?;
            body += &format!("CIPS statistic,{}\n", prec.format(res.statistic));
            body += &format!("5% critical value,{}\n", prec.format(res.critical_value_5pct));
            body += &format!("order of integration,{}\n", res.integration_order());
            body += &format!("units,{}\n", res.units.len());
        }
    }
    emit(io.output.as_deref(), &(manifest.render() + &body))
}

fn construct(io: &Io, config: &Path) -> Result<()> {
    require_exists(&[&io.input, config])?;
    let file = ConfigFile::read(config)?;
    let cfg: ConstructConfig = file.parse()?;
    if let Some(trade) = &cfg.trade {
        require_exists(&[trade])?;
    }
    let mut manifest = Manifest::new("construct");
    manifest.file("input", &io.input)?;
    manifest.config(&file);
    let mut ds = load(&io.input, &cfg.schema(), cfg.gaps())?;
    let cc = cfg.construction();
    let column = match cfg.kind {
        ConstructKind::RdStock => {
            let gdp = cfg.required(&cfg.gdp, "gdp")?;
            let share = cfg.required(&cfg.share, "share")?;
            rd_stock_panel(&ds, gdp, share, &cc)?
        }
        ConstructKind::ForeignRd => {
            let stock = cfg.required(&cfg.stock, "stock")?;
            let Some(trade_path) = &cfg.trade else {
                bail!("construct kind ForeignRd needs `trade`");
            };
            manifest.file("trade", trade_path)?;
            let trade =
                TradeMatrix::from_path(trade_path).with_context(|| format!("loading {}", trade_path.display()))?;
            foreign_rd_panel(&trade, &ds, stock, &cc)?
        }
    };
    ds.insert(cfg.output_variable.clone(), column)?;
    let mut buf = manifest.render().into_bytes();
    write_panel(&ds, &mut buf)?;
    emit(io.output.as_deref(), &String::from_utf8(buf)?)
}

fn simulate(config: &Path, output: Option<&Path>, seed: Option<u64>) -> Result<()> {
    require_exists(&[config])?;
    let file = ConfigFile::read(config)?;
    let mut cfg = SimulateConfig::from_table(&file.table)?;
    if let Some(s) = seed {
        cfg.dgp.seed = s;
    }
    let mut manifest = Manifest::new("simulate");
    manifest.config(&file);
    manifest.push(format!("seed: {}", cfg.dgp.seed));
    manifest.push(format!("replications: {}", cfg.replications));
    for line in cfg.dgp.echo() {
        manifest.push(line);
    }
    let report = run_experiment(&cfg.dgp, &cfg.estimators, cfg.replications)?;
    emit(output, &(manifest.render() + &report.to_delimited()))?;
    if output.is_some() {
        print!("{}", report.summary());
    }
    Ok(())
}

fn stats_row(variable: &str, transform: &str, s: &Stats, prec: Precision) -> String {
    format!(
        "{:<16}{:<10}{:>8}{:>12}{:>12}{:>12}{:>12}{:>12}\n",
        variable,
        transform,
        s.count,
        prec.format(s.mean),
        prec.format(s.median),
        prec.format(s.sd),
        prec.format(s.min),
        prec.format(s.max)
    )
}

fn summarize(io: &Io, config: Option<&Path>, variables: Option<Vec<String>>, full: bool) -> Result<()> {
    require_exists(&[&io.input])?;
    let mut manifest = Manifest::new("summarize");
    manifest.file("input", &io.input)?;
    let cfg = match config {
        Some(path) => {
            require_exists(&[path])?;
            let file = ConfigFile::read(path)?;
            manifest.config(&file);
            file.parse()?
        }
        None => SummarizeConfig::default(),
    };
    let ds = load(&io.input, &cfg.schema(), cfg.gaps())?;
    let vars = variables
        .or(cfg.variables.clone())
        .unwrap_or_else(|| ds.variable_names().to_vec());
    let prec = precision(full);
    let mut body = format!(
        "{:<16}{:<10}{:>8}{:>12}{:>12}{:>12}{:>12}{:>12}\n",
        "variable", "transform", "obs", "mean", "median", "sd", "min", "max"
    );
    for v in &vars {
        let s = summary_stats(&ds, v)?;
        body += &stats_row(v, "level", &s.levels, prec);
        if let Some(l) = &s.logs {
            body += &stats_row(v, "log", l, prec);
        }
        if let Some(g) = &s.growth {
            body += &stats_row(v, "growth", g, prec);
        }
    }
    let total: usize = vars
        .iter()
        .map(|v| ds.observation_count(v))
        .sum::<ccepanel::Result<usize>>()?;
    body += &format!("Total Obs {total}\n");
    emit(io.output.as_deref(), &(manifest.render() + &body))
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Estimate {
            io,
            config,
            full_precision,
            simulate_critical_values,
            seed,
        } => estimate(&io, &config, full_precision, simulate_critical_values, seed),
        Command::Test {
            test: kind,
            io,
            column,
            case,
            lags,
            simulate_critical_values,
            seed,
            unit_column,
            time_column,
            full_precision,
        } => {
            let schema = PanelSchema {
                unit_column,
                time_column,
                variables: None,
            };
            test(
                kind,
                &io,
                &column,
                case.into(),
                lags,
                simulate_critical_values,
                seed,
                schema,
                full_precision,
            )
        }
        Command::Construct { io, config } => construct(&io, &config),
        Command::Simulate { config, output, seed } => simulate(&config, output.as_deref(), seed),
        Command::Summarize {
            io,
            config,
            variables,
            full_precision,
        } => summarize(&io, config.as_deref(), variables, full_precision),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
