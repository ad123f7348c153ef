use serde::{Deserialize, Serialize};

use super::LatticeSolution;
use crate::scattering::CoefficientSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyEntry {
    pub name: String,
    pub reference: f64,
    pub candidate: f64,
    pub abs_diff: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub tolerance: f64,
    pub entries: Vec<DiscrepancyEntry>,
}

impl DiscrepancyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn worst(&self) -> f64 {
        self.entries.iter().map(|e| e.abs_diff).fold(0.0, f64::max)
    }

    pub fn failing(&self) -> impl Iterator<Item = &DiscrepancyEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

/// Entry-by-entry comparison of two coefficient sets for the same port.
///
/// A port mismatch yields a single failing entry named `port`.
pub fn compare_coefficients(
    reference: &CoefficientSet,
    candidate: &CoefficientSet,
    tolerance: f64,
) -> DiscrepancyReport {
    if reference.port() != candidate.port() {
        return DiscrepancyReport {
            tolerance,
            entries: vec![DiscrepancyEntry {
                name: "port".into(),
                reference: f64::NAN,
                candidate: f64::NAN,
                abs_diff: f64::INFINITY,
                pass: false,
            }],
        };
    }
    let entries = reference
        .entries()
        .into_iter()
        .zip(candidate.entries())
        .map(|((name, a), (_, b))| {
            let abs_diff = (a - b).abs();
            DiscrepancyEntry {
                name: name.to_string(),
                reference: a,
                candidate: b,
                abs_diff,
                pass: abs_diff <= tolerance,
            }
        })
        .collect();
    DiscrepancyReport { tolerance, entries }
}

/// Closed form versus oracle, at the tolerance of the oracle's mode.
pub fn compare(closed: &CoefficientSet, oracle: &LatticeSolution) -> DiscrepancyReport {
    let tolerance = match oracle.mode {
        super::OracleMode::FrequencyDomain => super::FREQUENCY_TOLERANCE,
        super::OracleMode::Wavepacket => super::WAVEPACKET_TOLERANCE,
    };
    compare_coefficients(closed, &oracle.coefficients, tolerance)
}
