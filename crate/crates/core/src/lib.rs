//! Panel estimators with common correlated effects, cross-section dependence
//! and unit root diagnostics, variable construction and Monte Carlo tools.

pub mod construct;
pub mod design;
pub mod diagnostics;
pub mod dynamic;
pub mod error;
pub mod mcsim;
pub mod panel;
pub mod regress;
pub mod statics;
pub mod table;

pub use error::{Error, Result};
pub use panel::{load_panel, read_panel_csv, GapPolicy, PanelColumn, PanelDataset, PanelSchema};
