//! Independent lattice ground truth.
//!
//! The oracle keeps the full single-excitation Hamiltonian on a truncated
//! lattice, emitter levels included, and never uses the effective couplings
//! or the plane-wave ansatz of [`crate::scattering`]. Coefficients are read
//! off as probability currents (frequency domain) or region populations
//! (time domain).

mod compare;
mod frequency;
mod hamiltonian;
mod solver;
mod wavepacket;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::error::RouterError;
use crate::kinematics::Kinematics;
use crate::scattering::{ChannelAmplitudes, CoefficientSet, Port};

pub use compare::{compare, compare_coefficients, DiscrepancyEntry, DiscrepancyReport};
pub use frequency::solve_frequency_domain;
pub use hamiltonian::{assemble_hamiltonian, LatticeLayout, SparseOperator};
pub use solver::BorderedSolver;
pub use wavepacket::propagate_wavepacket;

pub const FREQUENCY_TOLERANCE: f64 = 1e-10;
pub const WAVEPACKET_TOLERANCE: f64 = 2e-2;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Router(#[from] RouterError),
    #[error("invalid oracle configuration: {0}")]
    Config(String),
    #[error("operator is not a bordered tridiagonal matrix: {0}")]
    Structure(String),
    #[error("lattice system is singular (zero pivot at row {row})")]
    Singular { row: usize },
    #[error("lattice solve failed for {params}: {source}")]
    SolveFailed { params: String, source: Box<OracleError> },
    #[error("phase fit inconsistent in region {region}: spread {spread:e} exceeds 1e-8")]
    FitInconsistent { region: &'static str, spread: f64 },
    #[error("wavepacket reached a truncated end of the lattice at t = {time}")]
    PacketReachedBoundary { time: f64 },
    #[error("populations not stationary by max_time = {max_time}")]
    NonStationary { max_time: f64 },
    #[error("norm drift {drift:e} exceeds tolerance {tolerance:e}")]
    NormDrift { drift: f64, tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    FrequencyDomain,
    Wavepacket,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavepacketConfig {
    /// Expected incident wavenumber on the launch channel; a query with a
    /// different wavenumber is rejected.
    #[serde(default)]
    pub k_center: Option<f64>,
    /// Standard deviation of |φ(k)|² of the initial packet.
    pub sigma_k: f64,
    /// Distance of the initial packet centre from the junction, in sites.
    pub launch_offset: usize,
    pub max_time: f64,
    pub norm_tol: f64,
    /// Crank–Nicolson steps per unit time; derived from the hoppings when absent.
    #[serde(default)]
    pub steps_per_unit: Option<u32>,
}

impl Default for WavepacketConfig {
    fn default() -> Self {
        Self {
            k_center: None,
            sigma_k: 0.02 * PI,
            launch_offset: 200,
            max_time: 5000.0,
            norm_tol: 1e-8,
            steps_per_unit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub half_len_a: usize,
    pub len_b: usize,
    pub mode: OracleMode,
    #[serde(default)]
    pub wavepacket: Option<WavepacketConfig>,
}

impl LatticeConfig {
    pub fn frequency_domain(half_len_a: usize, len_b: usize) -> Self {
        Self { half_len_a, len_b, mode: OracleMode::FrequencyDomain, wavepacket: None }
    }

    pub fn wavepacket(half_len_a: usize, len_b: usize, packet: WavepacketConfig) -> Self {
        Self { half_len_a, len_b, mode: OracleMode::Wavepacket, wavepacket: Some(packet) }
    }

    /// A wavepacket lattice long enough that the fastest outgoing wave cannot
    /// reach an end before a packet incident on `port` has fully scattered.
    pub fn for_packet(kin: &Kinematics, port: Port, packet: WavepacketConfig) -> Self {
        let v_in = match port {
            Port::FromA => kin.v_a,
            Port::FromB => kin.v_b,
        };
        let width = 1.0 / (2.0 * packet.sigma_k);
        let offset = packet.launch_offset as f64;
        let t_min = (offset + 10.0 * width) / v_in;
        let reach = |v: f64| (1.5 * v * t_min + offset + 12.0 * width).ceil() as usize;
        Self::wavepacket(reach(kin.v_a).max(1500), reach(kin.v_b).max(1500), packet)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.half_len_a < 20 || self.len_b < 20 {
            return Err(OracleError::Config(format!(
                "half_len_a and len_b must be >= 20 (got {} and {})",
                self.half_len_a, self.len_b
            )));
        }
        if self.mode == OracleMode::Wavepacket && self.wavepacket.is_none() {
            return Err(OracleError::Config("wavepacket mode needs a `wavepacket` block".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> f64 {
        match self.mode {
            OracleMode::FrequencyDomain => FREQUENCY_TOLERANCE,
            OracleMode::Wavepacket => WAVEPACKET_TOLERANCE,
        }
    }
}

/// Norms that certify a frequency-domain solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualNorms {
    /// max |(E − H − Σ) ψ_sc − source|.
    pub linear: f64,
    /// Largest deviation of a single-site amplitude estimate from its fit.
    pub fit_spread: f64,
    /// |U_e δ_e − g_c U_f|.
    pub upper_level: f64,
    /// |U_f Δ − δ_e (g_a U_0^a + g_b U_N^b)|.
    pub emitter_elimination: f64,
    /// |t_l^a − t_r^a| for incidence from CRW-b, zero otherwise.
    pub left_right_asymmetry: f64,
}

/// Probability in each region of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionPopulations {
    /// CRW-a, u < 0.
    pub left: f64,
    /// CRW-a, u > 0.
    pub right: f64,
    /// CRW-b, v > N.
    pub b_beyond: f64,
    /// u = 0 and the standing-wave segment 1 ≤ v ≤ N.
    pub junction: f64,
    /// |f⟩ and |e⟩.
    pub atomic: f64,
}

impl RegionPopulations {
    pub fn total(&self) -> f64 {
        self.left + self.right + self.b_beyond + self.junction + self.atomic
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketRun {
    pub final_time: f64,
    pub steps: usize,
    pub time_step: f64,
    pub max_norm_drift: f64,
    pub populations: RegionPopulations,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSolution {
    pub port: Port,
    pub mode: OracleMode,
    #[serde(skip)]
    pub layout: Option<LatticeLayout>,
    /// Total field over the basis, |f⟩ and |e⟩ last.
    pub state: Vec<Complex64>,
    pub amplitudes: Option<ChannelAmplitudes>,
    pub coefficients: CoefficientSet,
    pub residuals: Option<ResidualNorms>,
    pub packet: Option<PacketRun>,
}

impl LatticeSolution {
    /// Emitter amplitudes (U_f, U_e).
    pub fn atomic(&self) -> (Complex64, Complex64) {
        let n = self.state.len();
        (self.state[n - 2], self.state[n - 1])
    }
}
