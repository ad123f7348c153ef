//! Effective junction couplings obtained by eliminating the emitter amplitudes.
//!
//! With U_e = g_c U_f / δ_e the |f⟩ row becomes
//! `Δ U_f = δ_e (g_a U_0^a + g_b U_N^b)`, `Δ = δ_e (E − ω_f − ω_c) − g_c²`,
//! which feeds back into the two waveguides as
//! `V_a U_0^a + G U_N^b` (site u = 0) and `V_b U_N^b + G U_0^a` (site v = N).

use serde::{Deserialize, Serialize};

use crate::kinematics::Kinematics;
use crate::params::RouterParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveCouplings {
    /// Δ = δ_e (E − ω_f − ω_c) − g_c².
    pub delta_poly: f64,
    /// B̃ = g_c² − δ_e (E − ω_f − ω_c) = −Δ.
    pub b_tilde: f64,
    /// `None` at a dressed resonance (Δ = 0 up to rounding), where G and V diverge.
    pub potentials: Option<JunctionPotentials>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JunctionPotentials {
    /// G = g_a g_b δ_e / Δ.
    pub big_g: f64,
    pub v_pot_a: f64,
    pub v_pot_b: f64,
}

impl EffectiveCouplings {
    pub fn evaluate(params: &RouterParams, kin: &Kinematics) -> Self {
        let dressed = kin.energy - params.omega_f - params.omega_c;
        let g_c2 = params.g_c * params.g_c;
        let delta_poly = kin.delta_e * dressed - g_c2;
        let b_tilde = g_c2 - kin.delta_e * dressed;
        // Below this, Δ is indistinguishable from rounding noise in its own terms.
        let noise = 8.0
            * f64::EPSILON
            * (kin.delta_e.abs() * (kin.energy.abs() + params.omega_f.abs() + params.omega_c.abs()) + g_c2);
        let potentials = (delta_poly.abs() > noise).then(|| {
            let scale = kin.delta_e / delta_poly;
            JunctionPotentials {
                big_g: params.g_a * params.g_b * scale,
                v_pot_a: params.g_a * params.g_a * scale,
                v_pot_b: params.g_b * params.g_b * scale,
            }
        });
        Self { delta_poly, b_tilde, potentials }
    }

    pub fn at_pole(&self) -> bool {
        self.potentials.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn unit_params(g_c: f64) -> RouterParams {
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
            g_c,
            n_junction: 1,
        }
    }

    #[test]
    fn hand_evaluated_point() {
        let p = unit_params(1.0);
        let kin = Kinematics::from_k(&p, FRAC_PI_2).unwrap();
        let c = EffectiveCouplings::evaluate(&p, &kin);
        assert!((c.delta_poly + 1.0).abs() < 1e-15);
        let pot = c.potentials.unwrap();
        assert!((pot.v_pot_a - 3.0).abs() < 1e-14);
        assert!((pot.v_pot_b - 3.0).abs() < 1e-14);
        assert!((pot.big_g - 3.0).abs() < 1e-14);
    }

    #[test]
    fn dressed_resonance_is_flagged() {
        let p = unit_params(0.0);
        let kin = Kinematics::from_k(&p, FRAC_PI_2).unwrap();
        let c = EffectiveCouplings::evaluate(&p, &kin);
        assert!(c.delta_poly.abs() < 1e-15);
        assert_eq!(c.b_tilde, -c.delta_poly);
        assert!(c.at_pole());
    }

    proptest::proptest! {
        #[test]
        fn algebraic_identities(
            k in 0.05f64..3.09,
            g_a in 0.0f64..8.0,
            g_b in 0.0f64..8.0,
            g_c in 0.0f64..8.0,
            omega_e in -3.0f64..6.0,
            omega_f in -3.0f64..6.0,
        ) {
            let p = RouterParams { g_a, g_b, g_c, omega_e, omega_f, ..unit_params(0.0) };
            let kin = Kinematics::from_k(&p, k).unwrap();
            let c = EffectiveCouplings::evaluate(&p, &kin);
            proptest::prop_assert_eq!(c.b_tilde + c.delta_poly, 0.0);
            if let Some(pot) = c.potentials {
                let lhs = pot.big_g * pot.big_g;
                let rhs = pot.v_pot_a * pot.v_pot_b;
                proptest::prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1e-300));
            }
        }
    }
}
