//! Closed-form coefficients seen by a narrow-band packet.
//!
//! A Gaussian packet with |φ(k)|² of width σ_k samples the plane-wave
//! coefficients over a band of wavenumbers around its centre. These helpers
//! average the closed form over that band and measure how much the
//! coefficients vary across it.

use crate::error::Result;
use crate::kinematics::Kinematics;
use crate::params::RouterParams;
use crate::scattering::{coefficients, CoefficientSet, Port, ScatteringQuery};

/// Half-width of the quadrature window in units of σ_k.
const WINDOW: f64 = 6.0;
const NODES: usize = 1200;

/// Kinematics for incidence on `port` with wavenumber `k` on that channel.
fn kinematics_on_port(params: &RouterParams, port: Port, k: f64) -> Result<Kinematics> {
    match port {
        Port::FromA => Kinematics::from_k(params, k),
        Port::FromB => {
            let energy = params.omega_c + params.omega_b - 2.0 * params.xi_b * k.cos();
            Kinematics::from_energy(params, energy)
        }
    }
}

fn coefficients_at(params: &RouterParams, port: Port, k: f64) -> Result<CoefficientSet> {
    let kin = kinematics_on_port(params, port, k)?;
    kin.ensure_propagating()?;
    let amps = ScatteringQuery::new(port, kin).amplitudes(params)?;
    Ok(coefficients(&kin, &amps))
}

fn incident_k(kin: &Kinematics, port: Port) -> f64 {
    match port {
        Port::FromA => kin.k_a,
        Port::FromB => kin.k_b,
    }
}

/// Coefficients averaged over a Gaussian |φ(k)|² of standard deviation
/// `sigma_k` centred on the incident wavenumber of `kin`.
pub fn packet_averaged(params: &RouterParams, kin: &Kinematics, port: Port, sigma_k: f64) -> Result<CoefficientSet> {
    let k0 = incident_k(kin, port);
    let h = 2.0 * WINDOW * sigma_k / NODES as f64;
    let mut total = [0.0; 4];
    let mut weight_sum = 0.0;
    for i in 0..=NODES {
        let k = k0 - WINDOW * sigma_k + i as f64 * h;
        // Simpson weights.
        let simpson = if i == 0 || i == NODES {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let w = simpson * (-0.5 * ((k - k0) / sigma_k).powi(2)).exp();
        let c = coefficients_at(params, port, k)?;
        for (acc, value) in total.iter_mut().zip(raw_entries(&c)) {
            *acc += w * value;
        }
        weight_sum += w;
    }
    let avg: Vec<f64> = total.iter().map(|t| t / weight_sum).collect();
    Ok(match port {
        Port::FromA => CoefficientSet::from_a(avg[0], avg[1], avg[2], avg[3]),
        Port::FromB => CoefficientSet::from_b(avg[0], avg[1], avg[2]),
    })
}

fn raw_entries(c: &CoefficientSet) -> Vec<f64> {
    match *c {
        CoefficientSet::FromA { t_a_coeff, r_a_coeff, transfer_ba, transfer_ba_unweighted, .. } => {
            vec![t_a_coeff, r_a_coeff, transfer_ba, transfer_ba_unweighted]
        }
        CoefficientSet::FromB { r_b_coeff, transfer_ab, transfer_ab_unweighted, .. } => {
            vec![r_b_coeff, transfer_ab, transfer_ab_unweighted, 0.0]
        }
    }
}

/// Largest change of any flux-normalised coefficient over |k − k0| ≤ 3σ_k.
pub fn band_variation(params: &RouterParams, kin: &Kinematics, port: Port, sigma_k: f64) -> Result<f64> {
    let k0 = incident_k(kin, port);
    let centre = coefficients_at(params, port, k0)?;
    let steps = 240;
    let mut worst = 0.0f64;
    for i in 0..=steps {
        let k = k0 - 3.0 * sigma_k + 6.0 * sigma_k * i as f64 / steps as f64;
        let c = coefficients_at(params, port, k)?;
        for ((_, a), (_, b)) in c.entries().iter().zip(centre.entries()) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}
