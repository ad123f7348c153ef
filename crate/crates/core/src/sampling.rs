//! Seeded sampling of valid (parameters, wavenumber) tuples.

use rand::Rng;
use std::f64::consts::PI;

use crate::kinematics::Kinematics;
use crate::params::RouterParams;

/// Ranges that random tuples are drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TupleSpace {
    pub coupling: (f64, f64),
    pub k_a: (f64, f64),
    pub n_junction: (u32, u32),
    /// Draw hoppings and frequencies too (ξ_a ≠ ξ_b in general). Otherwise
    /// the base frequencies and hoppings are kept.
    pub randomize_band: bool,
}

impl TupleSpace {
    /// Couplings in [0, 8], k_a in (0.1, π − 0.1), N in 1..=8, random bands.
    pub fn broad() -> Self {
        Self { coupling: (0.0, 8.0), k_a: (0.1, PI - 0.1), n_junction: (1, 8), randomize_band: true }
    }

    /// Same as [`TupleSpace::broad`] but keeps the base frequencies.
    pub fn couplings_only() -> Self {
        Self { randomize_band: false, ..Self::broad() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tuple {
    pub params: RouterParams,
    pub k_a: f64,
}

impl Tuple {
    pub fn kinematics(&self) -> Kinematics {
        Kinematics::from_k(&self.params, self.k_a).expect("sampled tuples propagate in both channels")
    }
}

/// Draws one tuple with both channels propagating; `None` if the base band
/// structure leaves no overlap after many attempts.
pub fn sample<R: Rng>(rng: &mut R, base: &RouterParams, space: &TupleSpace) -> Option<Tuple> {
    for _ in 0..1000 {
        let mut params = *base;
        params.g_a = rng.gen_range(space.coupling.0..=space.coupling.1);
        params.g_b = rng.gen_range(space.coupling.0..=space.coupling.1);
        params.g_c = rng.gen_range(space.coupling.0..=space.coupling.1);
        params.n_junction = rng.gen_range(space.n_junction.0..=space.n_junction.1);
        let k_a = rng.gen_range(space.k_a.0..space.k_a.1);
        if space.randomize_band {
            params.xi_a = rng.gen_range(0.5..3.0);
            params.xi_b = rng.gen_range(0.5..3.0);
            params.omega_a = rng.gen_range(-2.0..2.0);
            params.omega_c = rng.gen_range(0.0..3.0);
            params.omega_e = rng.gen_range(-3.0..6.0);
            params.omega_f = rng.gen_range(-3.0..6.0);
            // Place band b so that the energy lands at a random k_b inside it.
            let energy = params.omega_c + params.omega_a - 2.0 * params.xi_a * k_a.cos();
            let k_b = rng.gen_range(space.k_a.0..space.k_a.1);
            params.omega_b = energy - params.omega_c + 2.0 * params.xi_b * k_b.cos();
        }
        if params.validate().is_ok() && Kinematics::from_k(&params, k_a).is_ok_and(|k| k.v_b > 0.0) {
            return Some(Tuple { params, k_a });
        }
    }
    None
}
