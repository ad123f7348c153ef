use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::SweepGrid;
use super::SweepError;
use crate::error::RouterError;
use crate::kinematics::Kinematics;
use crate::scattering::{coefficients, CoefficientSet, Port, ScatteringQuery};

/// Outcome of one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RowStatus {
    #[serde(rename = "ok")]
    Ok,
    /// The energy lies outside the band of CRW-b.
    #[serde(rename = "skipped: evanescent")]
    SkippedEvanescent,
    /// The energy sits on a band edge of CRW-b (zero group velocity).
    #[serde(rename = "skipped: band edge")]
    SkippedBandEdge,
}

impl RowStatus {
    pub fn label(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::SkippedEvanescent => "skipped: evanescent",
            RowStatus::SkippedBandEdge => "skipped: band edge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Axis values in grid order.
    pub point: Vec<f64>,
    pub status: RowStatus,
    pub from_a: Option<CoefficientSet>,
    pub from_b: Option<CoefficientSet>,
}

impl SweepRow {
    pub fn coefficients(&self) -> impl Iterator<Item = &CoefficientSet> {
        self.from_a.iter().chain(self.from_b.iter())
    }

    /// Largest conservation residual of the row; 0 for skipped rows.
    pub fn residual(&self) -> f64 {
        self.coefficients().map(CoefficientSet::residual).fold(0.0, f64::max)
    }

    /// Looks up a coefficient by its column name (`T_a`, `R_a`, `T_ba`, `R_b`, `T_ab`).
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.coefficients().flat_map(|c| c.entries()).find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

/// All rows of a sweep in lexicographic axis order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub grid: SweepGrid,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn evaluated(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.status == RowStatus::Ok)
    }

    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(SweepRow::residual).fold(0.0, f64::max)
    }
}

pub(super) fn evaluate(grid: &SweepGrid, point: Vec<f64>) -> Result<SweepRow, SweepError> {
    let (params, k_a) = grid.apply(&point);
    let params = params.validate()?;
    let skipped = |status| SweepRow { point: point.clone(), status, from_a: None, from_b: None };
    let kin = match Kinematics::from_k(&params, k_a) {
        Ok(kin) => kin,
        Err(RouterError::ChannelBEvanescent { .. }) => return Ok(skipped(RowStatus::SkippedEvanescent)),
        Err(e) => return Err(e.into()),
    };
    if kin.v_b <= 0.0 {
        return Ok(skipped(RowStatus::SkippedBandEdge));
    }
    let mut row = SweepRow { point, status: RowStatus::Ok, from_a: None, from_b: None };
    for &port in grid.port.ports() {
        let amps = ScatteringQuery::new(port, kin).amplitudes(&params)?;
        let c = coefficients(&kin, &amps);
        match port {
            Port::FromA => row.from_a = Some(c),
            Port::FromB => row.from_b = Some(c),
        }
    }
    Ok(row)
}

/// Evaluates every grid point on a pool of `threads` workers (0 = one per
/// core). Rows come back in lexicographic axis order whatever the pool size.
pub fn run_sweep(grid: &SweepGrid, threads: usize) -> Result<SweepTable, SweepError> {
    grid.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| SweepError::Invalid(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| {
        (0..grid.len()).into_par_iter().map(|r| evaluate(grid, grid.point(r))).collect::<Result<Vec<_>, _>>()
    })?;
    Ok(SweepTable { grid: grid.clone(), rows })
}
