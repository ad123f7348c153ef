use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tbulge_core::published;
use tbulge_core::sampling::{sample, TupleSpace};
use tbulge_core::scattering::{amplitudes_from_a, amplitudes_from_b};
use tbulge_core::{ChannelAmplitudes, Complex64, Kinematics, RouterParams};

fn tuples(seed: u64, n: usize) -> Vec<(RouterParams, Kinematics)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = RouterParams::figure_base();
    let mut out = Vec::new();
    while out.len() < n {
        let t = sample(&mut rng, &base, &TupleSpace::broad()).unwrap();
        let kin = t.kinematics();
        // Stay away from the points where the fractions divide by ~0.
        if kin.delta_e.abs() > 1e-2 && t.params.g_a > 1e-2 && t.params.g_b > 1e-2 {
            out.push((t.params, kin));
        }
    }
    out
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

#[test]
fn fractions_match_the_linear_system_from_a() {
    for (p, kin) in tuples(21, 2000) {
        let ChannelAmplitudes::FromA { t, r, t_b } = amplitudes_from_a(&p, &kin).unwrap().channel else {
            unreachable!()
        };
        let tol = 1e-10;
        assert!(close(published::reflection_from_a(&p, &kin).unwrap(), r, tol), "{p:?}");
        assert!(close(published::transfer_from_a(&p, &kin).unwrap(), t_b, tol), "{p:?}");
        assert!(close(published::transmission_from_a(&p, &kin).unwrap(), t, tol), "{p:?}");
    }
}

#[test]
fn fractions_match_the_linear_system_from_b() {
    for (p, kin) in tuples(22, 2000) {
        let ChannelAmplitudes::FromB { r_b, t_a } = amplitudes_from_b(&p, &kin).unwrap().channel else {
            unreachable!()
        };
        let tol = 1e-10;
        assert!(close(published::reflection_from_b(&p, &kin).unwrap(), r_b, tol), "{p:?}");
        assert!(close(published::transfer_from_b(&p, &kin).unwrap(), t_a, tol), "{p:?}");
    }
}

#[test]
fn printed_transmission_differs_only_off_equal_velocities() {
    // Equal hoppings and band centres give v_a = v_b, where the printed form is −t.
    let p = RouterParams::figure_base();
    let kin = Kinematics::from_k(&p, 1.1).unwrap();
    let printed = published::transmission_from_a_as_printed(&p, &kin).unwrap();
    let derived = published::transmission_from_a(&p, &kin).unwrap();
    assert!((printed + derived).norm() < 1e-12);

    let p = RouterParams { xi_b: 1.3, omega_b: 0.9, ..RouterParams::figure_base() };
    let kin = Kinematics::from_k(&p, 1.1).unwrap();
    assert!((kin.v_a - kin.v_b).abs() > 0.1);
    let printed = published::transmission_from_a_as_printed(&p, &kin).unwrap();
    let derived = published::transmission_from_a(&p, &kin).unwrap();
    assert!((printed.norm() - derived.norm()).abs() > 1e-3, "{printed} {derived}");
    let r = published::reflection_from_a(&p, &kin).unwrap();
    assert!((derived - (1.0 + r)).norm() < 1e-12);
}

#[test]
fn fractions_are_undefined_where_they_divide_by_zero() {
    let p = RouterParams::figure_base().with_couplings(0.0, 2.0, 1.0);
    let kin = Kinematics::from_k(&p, 1.0).unwrap();
    assert!(published::reflection_from_a(&p, &kin).is_none());
    let p = RouterParams::figure_base();
    let kin = Kinematics::from_energy(&p, p.omega_e).unwrap();
    assert!(published::transfer_from_b(&p, &kin).is_none());
}
