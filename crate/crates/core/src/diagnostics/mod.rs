//! Residual and variable diagnostics.

pub mod cd;
pub mod cips;
pub mod cips_table;
pub mod summary;

pub use cd::{cd_test, CdResult};
pub use cips::{cips_test, cips_test_column, CipsCase, CipsResult, CriticalValues, Decision};
pub use summary::{summary_stats, Stats, SummaryStats};
