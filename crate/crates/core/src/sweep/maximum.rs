use serde::{Deserialize, Serialize};

use super::grid::{Axis, AxisParam, PortSelection, SweepGrid};
use super::run::run_sweep;
use super::SweepError;
use crate::params::RouterParams;

/// Zoom passes allowed after the initial grid.
pub const MAX_REFINEMENTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupPoint {
    pub value: f64,
    pub params: RouterParams,
    pub k_a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxTransfer {
    /// Largest T_b^a found, with the parameters that reach it.
    pub transfer_ba: Option<SupPoint>,
    /// Largest T_a^b found.
    pub transfer_ab: Option<SupPoint>,
    pub refinements: usize,
}

fn best(grid: &SweepGrid, column: &str, threads: usize) -> Result<Option<(SupPoint, Vec<f64>)>, SweepError> {
    let table = run_sweep(grid, threads)?;
    let mut top: Option<(f64, usize)> = None;
    for (i, row) in table.rows.iter().enumerate() {
        if let Some(v) = row.coefficient(column) {
            if top.is_none_or(|(t, _)| v > t) {
                top = Some((v, i));
            }
        }
    }
    Ok(top.map(|(value, i)| {
        let point = table.rows[i].point.clone();
        let (params, k_a) = grid.apply(&point);
        (SupPoint { value, params, k_a }, point)
    }))
}

/// A grid one step either side of `point` on every continuous axis, clipped
/// to the original ranges, with N frozen at its best value.
fn zoom(original: &SweepGrid, current: &SweepGrid, point: &[f64]) -> Option<SweepGrid> {
    let mut base = current.base;
    let mut axes = Vec::new();
    for (axis, &x) in current.axes.iter().zip(point) {
        if axis.param == AxisParam::NJunction {
            base.n_junction = x as u32;
            continue;
        }
        let outer = original.axes.iter().find(|a| a.param == axis.param).unwrap_or(axis);
        let h = axis.step();
        let count = axis.count | 1;
        axes.push(Axis::new(axis.param, (x - h).max(outer.min), (x + h).min(outer.max), count));
    }
    (!axes.is_empty()).then_some(SweepGrid { base, k_a: current.k_a, axes, port: current.port })
}

fn refine(grid: &SweepGrid, column: &str, refinements: usize, threads: usize) -> Result<Option<SupPoint>, SweepError> {
    let Some((mut top, mut point)) = best(grid, column, threads)? else {
        return Ok(None);
    };
    let mut current = grid.clone();
    for _ in 0..refinements {
        let Some(next) = zoom(grid, &current, &point) else { break };
        if let Some((candidate, p)) = best(&next, column, threads)? {
            if candidate.value > top.value {
                top = candidate;
            }
            point = p;
        }
        current = next;
    }
    Ok(Some(top))
}

/// Suprema of both transfer probabilities over the grid, each refined by up
/// to `refinements` (at most 3) zoom passes around its best grid point.
pub fn max_transfer(grid: &SweepGrid, refinements: usize, threads: usize) -> Result<MaxTransfer, SweepError> {
    grid.validate()?;
    let refinements = refinements.min(MAX_REFINEMENTS);
    let with_port = |port| SweepGrid { port, ..grid.clone() };
    Ok(MaxTransfer {
        transfer_ba: refine(&with_port(PortSelection::FromA), "T_ba", refinements, threads)?,
        transfer_ab: refine(&with_port(PortSelection::FromB), "T_ab", refinements, threads)?,
        refinements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn decoupled_plane_transfers_nothing() {
        let grid = SweepGrid {
            base: RouterParams::figure_base(),
            k_a: FRAC_PI_4,
            axes: vec![
                Axis::new(AxisParam::GA, 0.0, 0.0, 2),
                Axis::new(AxisParam::GB, 0.2, 8.0, 10),
                Axis::new(AxisParam::GC, 0.2, 8.0, 10),
            ],
            port: PortSelection::Both,
        };
        let m = max_transfer(&grid, 3, 1).unwrap();
        assert_eq!(m.transfer_ba.unwrap().value, 0.0);
        assert_eq!(m.transfer_ab.unwrap().value, 0.0);
    }

    #[test]
    fn refinement_never_loses_the_grid_maximum() {
        let grid = SweepGrid::couplings_cube(RouterParams::figure_base(), FRAC_PI_4, 0.2, 8.0, 8, PortSelection::FromA);
        let coarse = max_transfer(&grid, 0, 1).unwrap();
        let fine = max_transfer(&grid, 3, 1).unwrap();
        assert!(fine.transfer_ba.unwrap().value >= coarse.transfer_ba.unwrap().value);
        assert!(fine.transfer_ab.unwrap().value >= coarse.transfer_ab.unwrap().value);
    }
}
