use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("missing column `{0}` in input")]
    MissingColumn(String),

    #[error("duplicate observation for unit `{unit}`, year {year} (data row {row})")]
    DuplicateRow { unit: String, year: i64, row: usize },

    #[error("non-numeric value `{value}` in column `{column}` (data row {row})")]
    NonNumeric { column: String, value: String, row: usize },

    #[error("panel has no observations")]
    EmptyPanel,

    #[error("unit `{unit}` has an interior gap in `{variable}`; interpolate before loading")]
    InteriorGap { unit: String, variable: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("design is rank deficient; collinear columns: {}", .0.join(", "))]
    Collinear(Vec<String>),

    #[error("insufficient observations: {nobs} rows for {ncols} columns")]
    InsufficientObservations { nobs: usize, ncols: usize },

    #[error("no unit has enough observations for this specification")]
    NoUsableUnits,

    #[error("long-run coefficients undefined: |lambda| = {lambda:e} is numerically zero")]
    LongRunUndefined { lambda: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Undefined(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
