use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use super::grid::AxisParam;
use super::output::coefficient_columns;
use super::run::SweepTable;
use super::SweepError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

/// A local extremum refined by the parabola through the bracketing triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub kind: ExtremumKind,
    pub location: f64,
    pub value: f64,
    /// The grid point at the centre of the bracketing triple.
    pub grid_location: f64,
    pub grid_value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupStatus {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "no interior extremum")]
    NoInteriorExtremum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedValue {
    pub param: AxisParam,
    pub value: f64,
}

/// Extrema along the scan axis with every other axis held fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremumGroup {
    pub n_junction: u32,
    pub fixed: Vec<FixedValue>,
    pub status: GroupStatus,
    pub extrema: Vec<Extremum>,
}

impl ExtremumGroup {
    /// The interior maximum with the largest refined value.
    pub fn argmax(&self) -> Option<&Extremum> {
        self.extrema.iter().filter(|e| e.kind == ExtremumKind::Maximum).max_by(|a, b| a.value.total_cmp(&b.value))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremumReport {
    pub coefficient: String,
    pub scan_axis: AxisParam,
    pub step: f64,
    pub groups: Vec<ExtremumGroup>,
}

/// Vertex offset (in steps) and value of the parabola through three equally
/// spaced samples.
fn vertex(y0: f64, y1: f64, y2: f64) -> (f64, f64) {
    let curvature = y0 - 2.0 * y1 + y2;
    if curvature == 0.0 {
        return (0.0, y1);
    }
    let offset = (0.5 * (y0 - y2) / curvature).clamp(-0.5, 0.5);
    (offset, y1 - 0.25 * (y0 - y2) * offset)
}

fn scan(xs: &[f64], ys: &[Option<f64>], step: f64) -> Vec<Extremum> {
    let mut found = Vec::new();
    for i in 1..xs.len().saturating_sub(1) {
        let (Some(y0), Some(y1), Some(y2)) = (ys[i - 1], ys[i], ys[i + 1]) else {
            continue;
        };
        let kind = if y0 < y1 && y1 >= y2 {
            ExtremumKind::Maximum
        } else if y0 > y1 && y1 <= y2 {
            ExtremumKind::Minimum
        } else {
            continue;
        };
        let (offset, value) = vertex(y0, y1, y2);
        found.push(Extremum { kind, location: xs[i] + offset * step, value, grid_location: xs[i], grid_value: y1 });
    }
    found
}

/// Locates interior extrema of `coefficient` along `scan_axis`, one group per
/// combination of the remaining axes (and so per value of N).
pub fn find_extrema(table: &SweepTable, coefficient: &str, scan_axis: AxisParam) -> Result<ExtremumReport, SweepError> {
    let grid = &table.grid;
    if !coefficient_columns(grid.port).contains(&coefficient) {
        return Err(SweepError::Invalid(format!(
            "coefficient `{coefficient}` is not produced by a {:?} sweep",
            grid.port
        )));
    }
    let scan_pos = grid
        .axes
        .iter()
        .position(|a| a.param == scan_axis)
        .ok_or_else(|| SweepError::Invalid(format!("scan axis {scan_axis} is not an axis of the sweep")))?;
    let scan = &grid.axes[scan_pos];
    let n_scan = scan.count;
    let xs = scan.values();

    // Rows are lexicographic, so the scan index of row r is indices(r)[scan_pos]
    // and groups appear in lexicographic order of the remaining axes.
    let mut groups: Vec<(Vec<usize>, Vec<Option<f64>>)> = Vec::new();
    let mut slots: HashMap<Vec<usize>, usize> = HashMap::new();
    for (r, row) in table.rows.iter().enumerate() {
        let mut idx = grid.indices(r);
        let i = idx.remove(scan_pos);
        let slot = *slots.entry(idx.clone()).or_insert_with(|| {
            groups.push((idx, vec![None; n_scan]));
            groups.len() - 1
        });
        groups[slot].1[i] = row.coefficient(coefficient);
    }

    let others: Vec<_> = grid.axes.iter().enumerate().filter(|(p, _)| *p != scan_pos).map(|(_, a)| a).collect();
    let report_groups = groups
        .into_iter()
        .map(|(key, ys)| {
            let fixed: Vec<FixedValue> =
                others.iter().zip(&key).map(|(a, &i)| FixedValue { param: a.param, value: a.value(i) }).collect();
            let n_junction =
                fixed.iter().find(|f| f.param == AxisParam::NJunction).map_or(grid.base.n_junction, |f| f.value as u32);
            let extrema = self::scan(&xs, &ys, scan.step());
            let status = if extrema.is_empty() { GroupStatus::NoInteriorExtremum } else { GroupStatus::Ok };
            ExtremumGroup { n_junction, fixed, status, extrema }
        })
        .collect();
    Ok(ExtremumReport { coefficient: coefficient.to_string(), scan_axis, step: scan.step(), groups: report_groups })
}
