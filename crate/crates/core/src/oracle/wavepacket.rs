use num_complex::Complex64;
use std::f64::consts::PI;

use super::hamiltonian::{assemble_hamiltonian, LatticeLayout};
use super::solver::BorderedSolver;
use super::{LatticeConfig, LatticeSolution, OracleError, OracleMode, PacketRun, RegionPopulations};
use crate::params::RouterParams;
use crate::scattering::{CoefficientSet, Port, ScatteringQuery};

/// Sites at each truncated end that must stay empty.
const END_WINDOW: usize = 10;
const END_POPULATION_LIMIT: f64 = 1e-10;
const STATIONARY_CHANGE: f64 = 1e-6;

fn populations(layout: &LatticeLayout, psi: &[Complex64]) -> RegionPopulations {
    let l = layout.half_len_a as i64;
    let n = layout.n_junction;
    let sum = |range: &mut dyn Iterator<Item = usize>| range.map(|i| psi[i].norm_sqr()).sum::<f64>();
    RegionPopulations {
        left: sum(&mut (-l..0).map(|u| layout.a(u))),
        right: sum(&mut (1..=l).map(|u| layout.a(u))),
        b_beyond: sum(&mut (n + 1..=layout.b_last()).map(|v| layout.b(v))),
        junction: psi[layout.a(0)].norm_sqr() + sum(&mut (1..=n).map(|v| layout.b(v))),
        atomic: psi[layout.f()].norm_sqr() + psi[layout.e()].norm_sqr(),
    }
}

fn end_population(layout: &LatticeLayout, psi: &[Complex64]) -> f64 {
    let l = layout.half_len_a as i64;
    let w = END_WINDOW as i64;
    let last = layout.b_last();
    let a_ends = (-l..-l + w).chain(l - w + 1..=l).map(|u| psi[layout.a(u)].norm_sqr());
    let b_end = (last + 1 - END_WINDOW..=last).map(|v| psi[layout.b(v)].norm_sqr());
    a_ends.chain(b_end).sum()
}

/// Launches a Gaussian packet at the junction and evolves it with the
/// Crank–Nicolson propagator `(1 + iτH/2)⁻¹ (1 − iτH/2)`, which is unitary for
/// any step τ and shares its eigenvectors with H, so asymptotic region
/// populations do not depend on the step.
pub fn propagate_wavepacket(
    params: &RouterParams,
    cfg: &LatticeConfig,
    query: &ScatteringQuery,
) -> Result<LatticeSolution, OracleError> {
    let params = params.validate()?;
    cfg.validate()?;
    if cfg.mode != OracleMode::Wavepacket {
        return Err(OracleError::Config("wavepacket propagation requires mode wavepacket".into()));
    }
    let packet = cfg.wavepacket.unwrap_or_default();
    let kin = query.kinematics;
    kin.ensure_propagating()?;
    let (k0, v0) = match query.port {
        Port::FromA => (kin.k_a, kin.v_a),
        Port::FromB => (kin.k_b, kin.v_b),
    };
    if let Some(kc) = packet.k_center {
        if (kc - k0).abs() > 1e-12 {
            return Err(OracleError::Config(format!("k_center = {kc} does not match the queried wavenumber {k0}")));
        }
    }
    let sigma = packet.sigma_k;
    if !(sigma > 0.0 && k0 - 3.0 * sigma > 0.0 && k0 + 3.0 * sigma < PI) {
        return Err(OracleError::Config(format!("packet k = {k0} ± 3·{sigma} does not fit inside the band (0, pi)")));
    }

    let layout = LatticeLayout::new(cfg.half_len_a, params.n_junction, cfg.len_b);
    let mut psi = vec![Complex64::new(0.0, 0.0); layout.dim()];
    let offset = packet.launch_offset as f64;
    let envelope = |x: f64| (-(x * sigma).powi(2)).exp();
    match query.port {
        Port::FromA => {
            for u in layout.a_range() {
                let x = u as f64 + offset;
                psi[layout.a(u)] = envelope(x) * Complex64::from_polar(1.0, k0 * x);
            }
        }
        Port::FromB => {
            let centre = (layout.n_junction + packet.launch_offset) as f64;
            for v in 1..=layout.b_last() {
                let x = v as f64 - centre;
                psi[layout.b(v)] = envelope(x) * Complex64::from_polar(1.0, -k0 * x);
            }
        }
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|z| *z /= norm);
    if end_population(&layout, &psi) > END_POPULATION_LIMIT {
        return Err(OracleError::Config("lattice too short for the launched packet".into()));
    }
    let initial = populations(&layout, &psi);
    if initial.junction + initial.atomic > END_POPULATION_LIMIT {
        return Err(OracleError::Config("launch offset puts the packet on the junction".into()));
    }

    let steps_per_unit =
        packet.steps_per_unit.unwrap_or_else(|| (2.0 * params.xi_a.max(params.xi_b)).ceil().max(4.0) as u32);
    let dt = 1.0 / f64::from(steps_per_unit);
    let half = Complex64::new(0.0, 0.5 * dt);
    let hamiltonian = assemble_hamiltonian(&params, &layout);
    let one = Complex64::new(1.0, 0.0);
    let implicit = hamiltonian.affine(one - half * kin.energy, half);
    let explicit = hamiltonian.affine(one + half * kin.energy, -half);
    let solver = BorderedSolver::factor(&implicit, layout.chain_len())?;

    let width = 1.0 / (2.0 * sigma);
    let t_min = (offset + 10.0 * width) / v0;
    let mut time = 0.0;
    let mut steps = 0usize;
    let mut max_drift = 0.0f64;
    let mut previous = initial;
    let current = loop {
        for _ in 0..steps_per_unit {
            psi = solver.solve(&explicit.matvec(&psi));
        }
        steps += steps_per_unit as usize;
        time += 1.0;

        let drift = (psi.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs();
        max_drift = max_drift.max(drift);
        if drift > packet.norm_tol {
            return Err(OracleError::NormDrift { drift, tolerance: packet.norm_tol });
        }
        if end_population(&layout, &psi) > END_POPULATION_LIMIT {
            return Err(OracleError::PacketReachedBoundary { time });
        }
        let pops = populations(&layout, &psi);
        let change = (pops.left - previous.left)
            .abs()
            .max((pops.right - previous.right).abs())
            .max((pops.b_beyond - previous.b_beyond).abs());
        previous = pops;
        if time >= t_min && change < STATIONARY_CHANGE && pops.junction + pops.atomic < STATIONARY_CHANGE {
            break pops;
        }
        if time >= packet.max_time {
            return Err(OracleError::NonStationary { max_time: packet.max_time });
        }
    };

    let coefficients = match query.port {
        Port::FromA => {
            CoefficientSet::from_a(current.right, current.left, current.b_beyond, current.b_beyond * kin.v_a / kin.v_b)
        }
        Port::FromB => {
            let into_a = current.left + current.right;
            CoefficientSet::from_b(current.b_beyond, into_a, into_a * kin.v_b / kin.v_a)
        }
    };

    Ok(LatticeSolution {
        port: query.port,
        mode: OracleMode::Wavepacket,
        layout: Some(layout),
        state: psi,
        amplitudes: None,
        coefficients,
        residuals: None,
        packet: Some(PacketRun {
            final_time: time,
            steps,
            time_step: dt,
            max_norm_drift: max_drift,
            populations: current,
        }),
    })
}
