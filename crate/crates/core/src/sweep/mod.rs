//! Deterministic batch evaluation over parameter grids.

mod extrema;
mod grid;
mod maximum;
mod output;
mod run;

use thiserror::Error;

use crate::error::RouterError;

pub use extrema::{find_extrema, Extremum, ExtremumGroup, ExtremumKind, ExtremumReport, FixedValue, GroupStatus};
pub use grid::{Axis, AxisParam, GridSpec, PortSelection, SweepGrid};
pub use maximum::{max_transfer, MaxTransfer, SupPoint, MAX_REFINEMENTS};
pub use output::{
    check_conservation, coefficient_columns, columns, format_value, write_csv, write_json, CONSERVATION_TOL,
};
pub use run::{run_sweep, RowStatus, SweepRow, SweepTable};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    Invalid(String),
    #[error(transparent)]
    Router(#[from] RouterError),
    #[error("row {row} violates conservation (residual {residual:e})")]
    Conservation { row: usize, residual: f64 },
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}
