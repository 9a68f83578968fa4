//! Regenerates the embedded CIPS critical value table.
//!
//! `cargo run --release --example cips_critical_values -- [reps] [--write]`

use ccepanel::diagnostics::cips::{simulate_critical_value, CipsCase};
use ccepanel::diagnostics::cips_table::{N_GRID, T_GRID};

const SEED: u64 = 20_070_312;
const TABLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/src/diagnostics/cips_table.rs");

fn table(case: CipsCase, reps: usize) -> Vec<Vec<f64>> {
    N_GRID
        .iter()
        .map(|&n| {
            T_GRID
                .iter()
                .map(|&t| {
                    let seed = SEED ^ ((n as u64) << 32) ^ ((t as u64) << 16) ^ (case as u64);
                    simulate_critical_value(case, n, t, 0, reps, seed, 0.05).expect("simulation")
                })
                .collect()
        })
        .collect()
}

fn render(name: &str, rows: &[Vec<f64>]) -> String {
    let mut out = format!("pub const {name}: [[f64; 7]; 8] = [\n");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.2}")).collect();
        out += &format!("    [{}],\n", cells.join(", "));
    }
    out + "];\n"
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let reps = args.iter().find_map(|a| a.parse().ok()).unwrap_or(2000);
    let write = args.iter().any(|a| a == "--write");
    let body = format!(
        "// @generated rows: N, columns: T ({reps} replications, seed {SEED})\n{}{}// @end-generated",
        render("INTERCEPT_5PCT", &table(CipsCase::Intercept, reps)),
        render("TREND_5PCT", &table(CipsCase::InterceptTrend, reps)),
    );
    if write {
        let src = std::fs::read_to_string(TABLE).expect("read table");
        let start = src.find("// @generated").expect("start marker");
        let end = src.find("// @end-generated").expect("end marker") + "// @end-generated".len();
        std::fs::write(TABLE, format!("{}{}{}", &src[..start], body, &src[end..])).expect("write table");
    } else {
        println!("{body}");
    }
}
