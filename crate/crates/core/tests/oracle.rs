use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use tbulge_core::oracle::{
    assemble_hamiltonian, compare, compare_coefficients, propagate_wavepacket, solve_frequency_domain, LatticeConfig,
    LatticeLayout, WavepacketConfig,
};
use tbulge_core::sampling::{sample, TupleSpace};
use tbulge_core::scattering::{coefficients, scatter, CoefficientSet};
use tbulge_core::spectral::{band_variation, packet_averaged};
use tbulge_core::{Kinematics, Port, RouterParams, ScatteringQuery};

fn unit_params() -> RouterParams {
    RouterParams {
        omega_a: 1.0,
        omega_b: 1.0,
        omega_c: 1.0,
        omega_e: 5.0,
        omega_f: 1.0,
        xi_a: 1.0,
        xi_b: 1.0,
        g_a: 1.0,
        g_b: 1.0,
        g_c: 0.0,
        n_junction: 1,
    }
}

fn closed(p: &RouterParams, k: f64, port: Port) -> CoefficientSet {
    scatter(p, k, port).unwrap().2
}

fn freq(p: &RouterParams, k: f64, port: Port, len: usize) -> tbulge_core::oracle::LatticeSolution {
    let kin = Kinematics::from_k(p, k).unwrap();
    solve_frequency_domain(p, &LatticeConfig::frequency_domain(len, len), &ScatteringQuery::new(port, kin)).unwrap()
}

#[test]
fn a_block_spectrum_lies_in_its_band() {
    // Gershgorin discs of the CRW-a rows.
    let p = unit_params();
    let layout = LatticeLayout::new(30, 1, 30);
    let h = assemble_hamiltonian(&p, &layout);
    let (lo, hi) = (p.omega_a + p.omega_c - 2.0 * p.xi_a, p.omega_a + p.omega_c + 2.0 * p.xi_a);
    for u in layout.a_range().filter(|u| *u != 0) {
        let row = h.row(layout.a(u));
        let centre = h.get(layout.a(u), layout.a(u)).re;
        let radius: f64 = row.iter().filter(|(c, _)| *c != layout.a(u)).map(|(_, v)| v.norm()).sum();
        assert!(centre - radius >= lo - 1e-15 && centre + radius <= hi + 1e-15);
    }
}

#[test]
fn frequency_domain_matches_closed_form_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base = RouterParams::figure_base();
    for i in 0..300 {
        let tuple = sample(&mut rng, &base, &TupleSpace::broad()).unwrap();
        for port in [Port::FromA, Port::FromB] {
            let cf = closed(&tuple.params, tuple.k_a, port);
            let sol = freq(&tuple.params, tuple.k_a, port, 60);
            let report = compare(&cf, &sol);
            assert!(report.all_pass(), "tuple {i} {port:?}: {report:?} {tuple:?}");
        }
    }
}

#[test]
fn elimination_identities_hold_on_the_lattice() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let base = RouterParams::figure_base();
    for _ in 0..100 {
        let tuple = sample(&mut rng, &base, &TupleSpace::broad()).unwrap();
        let sol = freq(&tuple.params, tuple.k_a, Port::FromA, 40);
        let res = sol.residuals.unwrap();
        assert!(res.upper_level < 1e-10, "{res:?}");
        assert!(res.emitter_elimination < 1e-10, "{res:?}");
        assert!(res.linear < 1e-10, "{res:?}");
    }
}

#[test]
fn truncation_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = RouterParams::figure_base();
    for _ in 0..30 {
        let tuple = sample(&mut rng, &base, &TupleSpace::broad()).unwrap();
        for port in [Port::FromA, Port::FromB] {
            let short = freq(&tuple.params, tuple.k_a, port, 40).coefficients;
            let long = freq(&tuple.params, tuple.k_a, port, 80).coefficients;
            assert!(compare_coefficients(&short, &long, 1e-10).all_pass());
        }
    }
}

#[test]
fn oracle_atomic_amplitudes_match_closed_form() {
    let p = RouterParams { g_c: 1.3, n_junction: 4, xi_b: 1.4, ..unit_params() };
    let k = 1.2;
    let (kin, amps, _) = scatter(&p, k, Port::FromB).unwrap();
    let sol = freq(&p, k, Port::FromB, 50);
    let (u_f, u_e) = sol.atomic();
    assert!((u_f - amps.u_f).norm() < 1e-10);
    assert!((u_e - amps.u_e).norm() < 1e-10);
    let layout = sol.layout.unwrap();
    // Standing wave at v = N − 1.
    let v = p.n_junction as i64 - 1;
    let closed = tbulge_core::scattering::wavefunction(&p, &kin, &amps, tbulge_core::Site::B(v)).unwrap();
    assert!((sol.state[layout.b(v as usize)] - closed).norm() < 1e-10);
}

#[test]
fn unweighted_transfer_is_caught_when_velocities_differ() {
    let p = RouterParams { xi_b: 1.7, omega_b: 0.6, g_c: 0.8, ..unit_params() };
    let k = 1.0;
    let (kin, amps, cf) = scatter(&p, k, Port::FromA).unwrap();
    assert!((kin.v_a - kin.v_b).abs() > 0.1);
    let CoefficientSet::FromA { t_a_coeff, r_a_coeff, transfer_ba_unweighted, .. } = coefficients(&kin, &amps) else {
        unreachable!()
    };
    let naive = CoefficientSet::from_a(t_a_coeff, r_a_coeff, transfer_ba_unweighted, transfer_ba_unweighted);
    let sol = freq(&p, k, Port::FromA, 50);
    assert!(compare(&cf, &sol).all_pass());
    let report = compare(&naive, &sol);
    let failing: Vec<_> = report.failing().map(|e| e.name.as_str()).collect();
    assert_eq!(failing, ["T_ba"]);
}

fn packet_cfg(len: usize, sigma_k: f64) -> LatticeConfig {
    LatticeConfig::wavepacket(len, len, WavepacketConfig { sigma_k, launch_offset: 200, ..Default::default() })
}

#[test]
fn wavepacket_resonant_emitter() {
    let p = unit_params();
    let kin = Kinematics::from_k(&p, FRAC_PI_2).unwrap();
    let sol = propagate_wavepacket(&p, &packet_cfg(1500, 0.02 * PI), &ScatteringQuery::new(Port::FromA, kin)).unwrap();
    let report = compare(&closed(&p, FRAC_PI_2, Port::FromA), &sol);
    assert!(report.all_pass(), "{report:?}");
    assert!(sol.packet.unwrap().max_norm_drift < 1e-8);
}

#[test]
fn wavepacket_and_frequency_domain_agree() {
    let p = RouterParams { g_a: 1.0, g_b: 1.5, g_c: 2.0, ..unit_params() };
    let kin = Kinematics::from_k(&p, 1.9).unwrap();
    for port in [Port::FromA, Port::FromB] {
        assert!(band_variation(&p, &kin, port, 0.02 * PI).unwrap() < 1e-2);
        let query = ScatteringQuery::new(port, kin);
        let packet = propagate_wavepacket(&p, &packet_cfg(1500, 0.02 * PI), &query).unwrap();
        let stationary = solve_frequency_domain(&p, &LatticeConfig::frequency_domain(100, 100), &query).unwrap();
        let report = compare_coefficients(&stationary.coefficients, &packet.coefficients, 2e-2);
        assert!(report.all_pass(), "{port:?} {report:?}");
    }
}

#[test]
fn wavepacket_resolves_a_sharp_feature_as_its_spectral_average() {
    // A Fano dip lies inside the packet bandwidth, so the packet sees the
    // closed form averaged over |φ(k)|² rather than its value at k0.
    let p = RouterParams::figure_base().with_couplings(1.5, 2.5, 3.0);
    let kin = Kinematics::from_k(&p, FRAC_PI_4 + 0.3).unwrap();
    for port in [Port::FromA, Port::FromB] {
        let query = ScatteringQuery::new(port, kin);
        let packet = propagate_wavepacket(&p, &packet_cfg(1500, 0.02 * PI), &query).unwrap();
        let averaged = packet_averaged(&p, &kin, port, 0.02 * PI).unwrap();
        let report = compare_coefficients(&averaged, &packet.coefficients, 1e-4);
        assert!(report.all_pass(), "{port:?} {report:?}");
    }
    let point = closed(&p, FRAC_PI_4 + 0.3, Port::FromA);
    let averaged = packet_averaged(&p, &kin, Port::FromA, 0.02 * PI).unwrap();
    assert!(!compare_coefficients(&point, &averaged, 2e-2).all_pass());
}

#[test]
fn wavepacket_step_halving() {
    let p = RouterParams { g_c: 1.0, n_junction: 2, ..unit_params() };
    let kin = Kinematics::from_k(&p, 1.1).unwrap();
    let query = ScatteringQuery::new(Port::FromA, kin);
    let run = |spu| {
        let mut cfg = packet_cfg(1200, 0.02 * PI);
        cfg.wavepacket.as_mut().unwrap().steps_per_unit = Some(spu);
        propagate_wavepacket(&p, &cfg, &query).unwrap().coefficients
    };
    let report = compare_coefficients(&run(4), &run(8), 1e-6);
    assert!(report.all_pass(), "{report:?}");
}

#[test]
fn wavepacket_node_blocking() {
    // k_b = π/2 with N = 2 puts a node of the standing wave at the junction.
    // Transfer grows as (k − k0)² off the node, so the packet must be narrow.
    let p = RouterParams { omega_f: 3.0, g_a: 2.0, g_b: 0.5, g_c: 1.0, n_junction: 2, ..unit_params() };
    let kin = Kinematics::from_k(&p, FRAC_PI_2).unwrap();
    assert!(closed(&p, FRAC_PI_2, Port::FromA).transfer() < 1e-24);
    let sigma = 0.002 * PI;
    let cfg = LatticeConfig::wavepacket(
        1700,
        1700,
        WavepacketConfig { sigma_k: sigma, launch_offset: 650, ..Default::default() },
    );
    let sol = propagate_wavepacket(&p, &cfg, &ScatteringQuery::new(Port::FromA, kin)).unwrap();
    let b = sol.packet.unwrap().populations.b_beyond;
    assert!(b < 1e-4, "b population {b}");
    let averaged = packet_averaged(&p, &kin, Port::FromA, sigma).unwrap().transfer();
    assert!((b - averaged).abs() < 1e-6, "{b} vs {averaged}");
}
