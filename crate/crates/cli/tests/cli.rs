use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccepanel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn estimate(config: &str, extra: &[&str]) -> String {
    let input = data("panel.csv");
    let cfg = data(config);
    let mut args = vec![
        "estimate",
        "--input",
        input.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    stdout(&run(&args))
}

#[test]
fn static_table_matches_golden() {
    let out = estimate("ccemg_trend.toml", &[]);
    assert_eq!(body(&out), golden("ccemg_trend.txt"));
    let labels: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l[..28].trim_end())
        .collect();
    assert_eq!(
        labels,
        [
            "rd",
            "",
            "rf",
            "",
            "CD-test",
            "Order of Integration",
            "RMSE",
            "NXT",
            "N"
        ]
    );
}

#[test]
fn dynamic_tables_match_golden() {
    assert_eq!(body(&estimate("cs_ardl.toml", &[])), golden("cs_ardl.txt"));
    assert_eq!(body(&estimate("cs_dlmg.toml", &[])), golden("cs_dlmg.txt"));
}

#[test]
fn manifest_echo_leads_the_output() {
    let out = estimate("ccemg_trend.toml", &[]);
    let head: Vec<&str> = out.lines().take_while(|l| l.starts_with('#')).collect();
    assert!(head[0].starts_with("# ccepanel "));
    assert!(head.iter().any(|l| l.starts_with("# input: ") && l.contains("sha256=")));
    assert!(head
        .iter()
        .any(|l| l.starts_with("# config: ") && l.contains("sha256=")));
}

#[test]
fn full_precision_prints_more_digits() {
    let out = estimate("ccemg_trend.toml", &["--full-precision"]);
    let rmse = body(&out).lines().find(|l| l.starts_with("RMSE")).unwrap().to_string();
    let digits = rmse.split('.').nth(1).unwrap().len();
    assert!(digits > 3, "{rmse}");
}

#[test]
fn simulate_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = data("simulate.toml");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    stdout(&run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        a.to_str().unwrap(),
    ]));
    stdout(&run(&[
        "--threads",
        "1",
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        b.to_str().unwrap(),
    ]));
    let ra = std::fs::read(&a).unwrap();
    assert_eq!(ra, std::fs::read(&b).unwrap());
    let text = String::from_utf8(ra).unwrap();
    assert!(text.contains("# seed: 7"));
    assert!(text.contains("estimator,coefficient,truth"));
}

#[test]
fn simulate_seed_flag_overrides_config() {
    let cfg = data("simulate.toml");
    let a = stdout(&run(&["simulate", "--config", cfg.to_str().unwrap(), "--seed", "8"]));
    let b = stdout(&run(&["simulate", "--config", cfg.to_str().unwrap()]));
    assert!(a.contains("# seed: 8"));
    assert_ne!(body(&a), body(&b));
}

#[test]
fn cd_test_on_anti_correlated_pair_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.csv");
    let mut csv = String::from("unit,year,e\n");
    let t = 10;
    for s in 0..t {
        let v = (s as f64 * 1.7).sin() + 0.1 * s as f64;
        csv += &format!("a,{},{}\n", 2000 + s, v);
        csv += &format!("b,{},{}\n", 2000 + s, -v);
    }
    std::fs::write(&path, csv).unwrap();
    let out = stdout(&run(&[
        "test",
        "cd",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "e",
        "--full-precision",
    ]));
    let stat: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("CD statistic,"))
        .unwrap()
        .parse()
        .unwrap();
    // rho = -1 for the only pair: CD = sqrt(2T / (N (N - 1))) * rho = -sqrt(T).
    assert!((stat + (t as f64).sqrt()).abs() < 1e-10, "{stat}");
}

#[test]
fn cips_test_reports_an_order() {
    let input = data("panel.csv");
    let out = stdout(&run(&[
        "test",
        "cips",
        "--input",
        input.to_str().unwrap(),
        "--column",
        "rd",
    ]));
    assert!(out.contains("order of integration,I("));
    assert!(out.contains("# test: cips"));
}

#[test]
fn construct_output_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("with_stock.csv");
    let input = data("panel.csv");
    let cfg = data("rd_stock.toml");
    stdout(&run(&[
        "construct",
        "--input",
        input.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]));
    let ds = ccepanel::read_panel_csv(&out, &Default::default(), Default::default()).unwrap();
    assert_eq!(ds.observation_count("rd_stock").unwrap(), 300);
    let summary = stdout(&run(&[
        "summarize",
        "--input",
        out.to_str().unwrap(),
        "--variables",
        "rd_stock",
    ]));
    assert!(summary.contains("Total Obs 300"));
}

#[test]
fn construct_foreign_rd_from_trade_file() {
    let dir = tempfile::tempdir().unwrap();
    let stocks = dir.path().join("stocks.csv");
    let input = data("panel.csv");
    stdout(&run(&[
        "construct",
        "--input",
        input.to_str().unwrap(),
        "--config",
        data("rd_stock.toml").to_str().unwrap(),
        "--output",
        stocks.to_str().unwrap(),
    ]));
    let cfg = dir.path().join("foreign.toml");
    std::fs::write(
        &cfg,
        format!(
            "kind = \"foreign_rd\"\noutput_variable = \"foreign\"\nstock = \"rd_stock\"\ntrade = {:?}\nweight_scheme = \"ch\"\n",
            data("trade.csv").to_str().unwrap()
        ),
    )
    .unwrap();
    let out = stdout(&run(&[
        "construct",
        "--input",
        stocks.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
    ]));
    assert!(out.lines().any(|l| l.starts_with("# trade: ")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("unit,year,") && l.ends_with(",foreign")));
}

#[test]
fn failures_exit_nonzero_with_a_diagnostic() {
    let input = data("panel.csv");
    let input = input.to_str().unwrap();

    let missing = run(&[
        "estimate",
        "--input",
        "no/such.csv",
        "--config",
        data("cs_ardl.toml").to_str().unwrap(),
    ]);
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("no such file"));

    let unknown_flag = run(&["estimate", "--input", input, "--bogus"]);
    assert!(!unknown_flag.status.success());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "dependent = \"tfp\"\nregressors = [\"rd\"]\nmodel = \"ccemg\"\nlags = 2\n",
    )
    .unwrap();
    let out = run(&["estimate", "--input", input, "--config", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("lags"));

    std::fs::write(
        &bad,
        "dependent = \"tfp\"\nregressors = [\"rd\"]\nmodel = \"ccemg\"\ntrend = \"yes\"\n",
    )
    .unwrap();
    assert!(!run(&["estimate", "--input", input, "--config", bad.to_str().unwrap()])
        .status
        .success());

    std::fs::write(&bad, "dependent = \"tfp\"\nregressors = [\"nope\"]\nmodel = \"mg\"\n").unwrap();
    let out = run(&["estimate", "--input", input, "--config", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));

    std::fs::write(
        &bad,
        "dependent = \"tfp\"\nregressors = [\"rd\"]\nmodel = \"cs_ardl\"\n",
    )
    .unwrap();
    let out = run(&["estimate", "--input", input, "--config", bad.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("needs `p`"));
}
