//! Closed-form single-photon scattering at the T-bulge junction.
//!
//! Matching the plane-wave ansatz in both waveguides to the junction rows of
//! the eigenvalue problem leaves three unknowns per incidence port: the
//! emitter amplitude U_f, the outgoing amplitude in CRW-a (t or t^a), and the
//! amplitude A of the standing wave `A sin(k_b v)` on cavities 1..=N.
//! The |f⟩ row is kept in the form `P U_f = Q (g_a U_0^a + g_b U_N^b)` with
//!
//! * `P = Δ`, `Q = δ_e` when g_c ≠ 0,
//! * `P = E − ω_f − ω_c`, `Q = 1` when g_c = 0,
//!
//! so neither δ_e = 0 nor Δ = 0 is ever divided by.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RouterError};
use crate::kinematics::Kinematics;
use crate::linalg::solve_small;
use crate::params::RouterParams;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Waveguide the photon is launched from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Port {
    /// Rightward plane wave e^{i k_a u} in the infinite waveguide.
    FromA,
    /// Plane wave e^{−i k_b v} travelling toward the junction in the semi-infinite waveguide.
    FromB,
}

impl Port {
    pub fn label(self) -> &'static str {
        match self {
            Port::FromA => "a",
            Port::FromB => "b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringQuery {
    pub port: Port,
    pub kinematics: Kinematics,
}

impl ScatteringQuery {
    pub fn new(port: Port, kinematics: Kinematics) -> Self {
        Self { port, kinematics }
    }

    pub fn amplitudes(&self, params: &RouterParams) -> Result<AmplitudeSet> {
        match self.port {
            Port::FromA => amplitudes_from_a(params, &self.kinematics),
            Port::FromB => amplitudes_from_b(params, &self.kinematics),
        }
    }
}

/// Asymptotic amplitudes of the channel waves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "port", rename_all = "snake_case")]
pub enum ChannelAmplitudes {
    FromA {
        t: Complex64,
        r: Complex64,
        t_b: Complex64,
    },
    /// `t_a` is shared by the left- and right-going waves in CRW-a.
    FromB {
        r_b: Complex64,
        t_a: Complex64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSet {
    #[serde(flatten)]
    pub channel: ChannelAmplitudes,
    /// Amplitude A of the standing wave A sin(k_b v) on 1 ≤ v ≤ N.
    pub standing_a: Complex64,
    pub u_f: Complex64,
    pub u_e: Complex64,
}

impl AmplitudeSet {
    pub fn port(&self) -> Port {
        match self.channel {
            ChannelAmplitudes::FromA { .. } => Port::FromA,
            ChannelAmplitudes::FromB { .. } => Port::FromB,
        }
    }
}

/// Flux-normalised scattering probabilities.
///
/// Transfer coefficients carry the group-velocity ratio of the two
/// waveguides; the bare `|t|²` forms are kept alongside as `*_unweighted`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "port", rename_all = "snake_case")]
pub enum CoefficientSet {
    FromA { t_a_coeff: f64, r_a_coeff: f64, transfer_ba: f64, transfer_ba_unweighted: f64, conservation_residual: f64 },
    FromB { r_b_coeff: f64, transfer_ab: f64, transfer_ab_unweighted: f64, conservation_residual: f64 },
}

impl CoefficientSet {
    pub fn from_a(t_a_coeff: f64, r_a_coeff: f64, transfer_ba: f64, transfer_ba_unweighted: f64) -> Self {
        let conservation_residual = (t_a_coeff + r_a_coeff + transfer_ba - 1.0).abs();
        CoefficientSet::FromA { t_a_coeff, r_a_coeff, transfer_ba, transfer_ba_unweighted, conservation_residual }
    }

    pub fn from_b(r_b_coeff: f64, transfer_ab: f64, transfer_ab_unweighted: f64) -> Self {
        let conservation_residual = (r_b_coeff + transfer_ab - 1.0).abs();
        CoefficientSet::FromB { r_b_coeff, transfer_ab, transfer_ab_unweighted, conservation_residual }
    }

    pub fn port(&self) -> Port {
        match self {
            CoefficientSet::FromA { .. } => Port::FromA,
            CoefficientSet::FromB { .. } => Port::FromB,
        }
    }

    /// The probabilities that partition unity, in canonical order.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        match *self {
            CoefficientSet::FromA { t_a_coeff, r_a_coeff, transfer_ba, .. } => {
                vec![("T_a", t_a_coeff), ("R_a", r_a_coeff), ("T_ba", transfer_ba)]
            }
            CoefficientSet::FromB { r_b_coeff, transfer_ab, .. } => {
                vec![("R_b", r_b_coeff), ("T_ab", transfer_ab)]
            }
        }
    }

    pub fn residual(&self) -> f64 {
        match *self {
            CoefficientSet::FromA { conservation_residual, .. }
            | CoefficientSet::FromB { conservation_residual, .. } => conservation_residual,
        }
    }

    /// Weighted transfer probability into the other waveguide.
    pub fn transfer(&self) -> f64 {
        match *self {
            CoefficientSet::FromA { transfer_ba, .. } => transfer_ba,
            CoefficientSet::FromB { transfer_ab, .. } => transfer_ab,
        }
    }
}

/// `sin(k_b N)`, snapped to zero when it is below the rounding noise of its argument.
pub fn standing_sine(k_b: f64, n_junction: u32) -> f64 {
    let theta = k_b * f64::from(n_junction);
    let s = theta.sin();
    if s.abs() <= 8.0 * f64::EPSILON * theta.abs().max(1.0) {
        0.0
    } else {
        s
    }
}

struct JunctionSolution {
    u_f: Complex64,
    /// t for incidence from CRW-a, t^a for incidence from CRW-b.
    u_zero: Complex64,
    standing_a: Complex64,
}

fn solve_junction(params: &RouterParams, kin: &Kinematics, port: Port) -> Result<JunctionSolution> {
    kin.ensure_propagating()?;
    let dressed = kin.energy - params.omega_f - params.omega_c;
    let (p, q) =
        if params.g_c != 0.0 { (kin.delta_e * dressed - params.g_c * params.g_c, kin.delta_e) } else { (dressed, 1.0) };
    let theta = kin.k_b * f64::from(params.n_junction);
    let s = standing_sine(kin.k_b, params.n_junction);
    let c = 0.5 * kin.v_b * Complex64::from_polar(1.0, -theta);
    let z = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);

    // Unknowns (U_f, U_0^a, A). Rows: site u = 0, site v = N, emitter |f⟩.
    let matrix = [
        [re(params.g_a), -I * kin.v_a, z],
        [re(params.g_b), z, c],
        [re(p), re(-q * params.g_a), re(-q * params.g_b * s)],
    ];
    let rhs = match port {
        Port::FromA => [-I * kin.v_a, z, z],
        Port::FromB => [z, -2.0 * I * c, z],
    };
    let [u_f, u_zero, standing_a] = solve_small(matrix, rhs);
    Ok(JunctionSolution { u_f, u_zero, standing_a })
}

fn upper_level(params: &RouterParams, kin: &Kinematics, u_f: Complex64, u0: Complex64, un: Complex64) -> Complex64 {
    if params.g_c == 0.0 {
        Complex64::new(0.0, 0.0)
    } else if kin.delta_e.abs() >= params.g_c {
        params.g_c * u_f / kin.delta_e
    } else {
        let dressed = kin.energy - params.omega_f - params.omega_c;
        (dressed * u_f - params.g_a * u0 - params.g_b * un) / params.g_c
    }
}

/// Amplitudes t, r, t^b for a photon incident from the infinite waveguide.
pub fn amplitudes_from_a(params: &RouterParams, kin: &Kinematics) -> Result<AmplitudeSet> {
    let sol = solve_junction(params, kin, Port::FromA)?;
    let theta = kin.k_b * f64::from(params.n_junction);
    let s = standing_sine(kin.k_b, params.n_junction);
    let t = sol.u_zero;
    let r = t - ONE;
    let u_n = sol.standing_a * s;
    let t_b = u_n * Complex64::from_polar(1.0, -theta);
    Ok(AmplitudeSet {
        channel: ChannelAmplitudes::FromA { t, r, t_b },
        standing_a: sol.standing_a,
        u_f: sol.u_f,
        u_e: upper_level(params, kin, sol.u_f, t, u_n),
    })
}

/// Amplitudes r^b, t^a for a photon incident from the semi-infinite waveguide.
pub fn amplitudes_from_b(params: &RouterParams, kin: &Kinematics) -> Result<AmplitudeSet> {
    let sol = solve_junction(params, kin, Port::FromB)?;
    let theta = kin.k_b * f64::from(params.n_junction);
    let s = standing_sine(kin.k_b, params.n_junction);
    let back = Complex64::from_polar(1.0, -theta);
    let u_n = sol.standing_a * s;
    // Continuity at v = N: A sin(k_b N) = e^{−iθ} + r^b e^{iθ}.
    let r_b = (u_n - back) * back;
    Ok(AmplitudeSet {
        channel: ChannelAmplitudes::FromB { r_b, t_a: sol.u_zero },
        standing_a: sol.standing_a,
        u_f: sol.u_f,
        u_e: upper_level(params, kin, sol.u_f, sol.u_zero, u_n),
    })
}

pub fn coefficients(kin: &Kinematics, amps: &AmplitudeSet) -> CoefficientSet {
    match amps.channel {
        ChannelAmplitudes::FromA { t, r, t_b } => {
            let bare = t_b.norm_sqr();
            CoefficientSet::from_a(t.norm_sqr(), r.norm_sqr(), kin.v_b / kin.v_a * bare, bare)
        }
        ChannelAmplitudes::FromB { r_b, t_a } => {
            let bare = 2.0 * t_a.norm_sqr();
            CoefficientSet::from_b(r_b.norm_sqr(), kin.v_a / kin.v_b * bare, bare)
        }
    }
}

/// Convenience wrapper: kinematics from k_a, amplitudes and coefficients for one port.
pub fn scatter(params: &RouterParams, k_a: f64, port: Port) -> Result<(Kinematics, AmplitudeSet, CoefficientSet)> {
    let kin = Kinematics::from_k(params, k_a)?;
    let amps = ScatteringQuery::new(port, kin).amplitudes(params)?;
    let coeffs = coefficients(&kin, &amps);
    Ok((kin, amps, coeffs))
}

/// A cavity of either waveguide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    /// Cavity u ∈ ℤ of the infinite waveguide.
    A(i64),
    /// Cavity v ≥ 1 of the semi-infinite waveguide.
    B(i64),
}

/// Evaluates the stationary amplitude U_u^a or U_v^b of the scattering state.
pub fn wavefunction(params: &RouterParams, kin: &Kinematics, amps: &AmplitudeSet, site: Site) -> Result<Complex64> {
    let plane = |k: f64, n: i64| Complex64::from_polar(1.0, k * n as f64);
    let n_junction = i64::from(params.n_junction);
    match site {
        Site::B(v) if v < 1 => Err(RouterError::InvalidSite),
        Site::B(v) if v <= n_junction => Ok(amps.standing_a * (kin.k_b * v as f64).sin()),
        Site::B(v) => Ok(match amps.channel {
            ChannelAmplitudes::FromA { t_b, .. } => t_b * plane(kin.k_b, v),
            ChannelAmplitudes::FromB { r_b, .. } => plane(kin.k_b, -v) + r_b * plane(kin.k_b, v),
        }),
        Site::A(u) => Ok(match amps.channel {
            ChannelAmplitudes::FromA { r, .. } if u < 0 => plane(kin.k_a, u) + r * plane(kin.k_a, -u),
            ChannelAmplitudes::FromA { t, .. } => t * plane(kin.k_a, u),
            ChannelAmplitudes::FromB { t_a, .. } => t_a * plane(kin.k_a, u.abs()),
        }),
    }
}
