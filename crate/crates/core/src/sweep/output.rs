use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::io::Write;

use super::grid::{PortSelection, SweepGrid};
use super::run::{SweepRow, SweepTable};
use super::SweepError;

/// Largest conservation residual a written row may carry.
pub const CONSERVATION_TOL: f64 = 1e-12;

/// Coefficient column names for a port selection.
pub fn coefficient_columns(port: PortSelection) -> &'static [&'static str] {
    match port {
        PortSelection::FromA => &["T_a", "R_a", "T_ba"],
        PortSelection::FromB => &["R_b", "T_ab"],
        PortSelection::Both => &["T_a", "R_a", "T_ba", "R_b", "T_ab"],
    }
}

/// Full column list: axes, coefficients, residual, status.
pub fn columns(grid: &SweepGrid) -> Vec<String> {
    let mut cols: Vec<String> = grid.axes.iter().map(|a| a.param.name().to_string()).collect();
    cols.extend(coefficient_columns(grid.port).iter().map(|c| c.to_string()));
    cols.push("residual".into());
    cols.push("status".into());
    cols
}

/// Fails on the first row whose probabilities do not sum to one.
pub fn check_conservation(table: &SweepTable) -> Result<(), SweepError> {
    for (row, r) in table.rows.iter().enumerate() {
        let residual = r.residual();
        if !(residual <= CONSERVATION_TOL) {
            return Err(SweepError::Conservation { row, residual });
        }
    }
    Ok(())
}

/// IEEE-754 doubles with 17 significant digits.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(table: &SweepTable, mut out: W) -> Result<(), SweepError> {
    check_conservation(table)?;
    writeln!(out, "{}", columns(&table.grid).join(","))?;
    let names = coefficient_columns(table.grid.port);
    for row in &table.rows {
        let mut cells: Vec<String> = row.point.iter().map(|&x| format_value(x)).collect();
        for name in names {
            cells.push(row.coefficient(name).map(format_value).unwrap_or_default());
        }
        cells.push(if row.from_a.is_some() || row.from_b.is_some() {
            format_value(row.residual())
        } else {
            String::new()
        });
        cells.push(row.status.label().to_string());
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Metadata<'a> {
    artifact: &'static str,
    version: &'static str,
    base: &'a crate::params::RouterParams,
    grid: &'a SweepGrid,
    columns: Vec<String>,
}

struct Record<'a> {
    grid: &'a SweepGrid,
    row: &'a SweepRow,
}

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (axis, x) in self.grid.axes.iter().zip(&self.row.point) {
            map.serialize_entry(axis.param.name(), x)?;
        }
        map.serialize_entry("status", &self.row.status)?;
        if let Some(c) = &self.row.from_a {
            map.serialize_entry("from_a", c)?;
        }
        if let Some(c) = &self.row.from_b {
            map.serialize_entry("from_b", c)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct Document<'a> {
    metadata: Metadata<'a>,
    records: Vec<Record<'a>>,
}

pub fn write_json<W: Write>(table: &SweepTable, mut out: W) -> Result<(), SweepError> {
    check_conservation(table)?;
    let doc = Document {
        metadata: Metadata {
            artifact: "tbulge",
            version: env!("CARGO_PKG_VERSION"),
            base: &table.grid.base,
            grid: &table.grid,
            columns: columns(&table.grid),
        },
        records: table.rows.iter().map(|row| Record { grid: &table.grid, row }).collect(),
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RouterParams;
    use crate::scattering::CoefficientSet;
    use crate::sweep::{run_sweep, Axis, AxisParam};
    use std::f64::consts::FRAC_PI_4;

    fn table() -> SweepTable {
        let grid = SweepGrid {
            base: RouterParams::figure_base(),
            k_a: FRAC_PI_4,
            axes: vec![Axis::new(AxisParam::GA, 0.5, 2.0, 2), Axis::new(AxisParam::GB, 1.0, 2.0, 3)],
            port: PortSelection::Both,
        };
        run_sweep(&grid, 1).unwrap()
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&table(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "g_a,g_b,T_a,R_a,T_ba,R_b,T_ab,residual,status");
        assert_eq!(lines.len(), 7);
        let cells: Vec<_> = lines[1].split(',').collect();
        assert_eq!(cells[0], "5.0000000000000000e-1");
        assert_eq!(cells.last(), Some(&"ok"));
        // Values parse back to the same doubles.
        let t = table();
        let back: f64 = cells[2].parse().unwrap();
        assert_eq!(back, t.rows[0].coefficient("T_a").unwrap());
    }

    #[test]
    fn json_round_trips_values() {
        let t = table();
        let mut buf = Vec::new();
        write_json(&t, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["metadata"]["base"]["g_c"], serde_json::json!(RouterParams::figure_base().g_c));
        let rec = &v["records"][4];
        assert_eq!(rec["g_a"], serde_json::json!(2.0));
        let c: CoefficientSet = serde_json::from_value(rec["from_a"].clone()).unwrap();
        assert_eq!(Some(c), t.rows[4].from_a);
    }

    #[test]
    fn conservation_is_enforced_at_write_time() {
        let mut t = table();
        t.rows[2].from_a = Some(CoefficientSet::from_a(0.5, 0.5, 0.1, 0.1));
        let err = write_csv(&t, Vec::new()).unwrap_err();
        assert!(matches!(err, SweepError::Conservation { row: 2, .. }));
        assert!(write_json(&t, Vec::new()).is_err());
    }
}
