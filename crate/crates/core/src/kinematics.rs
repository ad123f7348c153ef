//! Dispersion relations and group velocities of the two waveguides.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Result, RouterError};
use crate::params::RouterParams;

/// On-shell kinematics of a single-photon eigenstate.
///
/// Both bands satisfy `E = ω_c + ω_d − 2 ξ_d cos k_d` for the same energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    pub energy: f64,
    pub k_a: f64,
    pub k_b: f64,
    pub v_a: f64,
    pub v_b: f64,
    /// δ_e = E − ω_e.
    pub delta_e: f64,
}

impl Kinematics {
    /// Kinematics for a photon of wavenumber `k_a` in CRW-a.
    pub fn from_k(params: &RouterParams, k_a: f64) -> Result<Self> {
        if !(k_a > 0.0 && k_a < PI) {
            return Err(RouterError::WavenumberOutOfBand(k_a));
        }
        let energy = params.omega_c + params.omega_a - 2.0 * params.xi_a * k_a.cos();
        let k_b = band_wavenumber(params.omega_c + params.omega_b, params.xi_b, energy)
            .map_err(|argument| RouterError::ChannelBEvanescent { energy, argument })?;
        Ok(Self::assemble(params, energy, k_a, k_b))
    }

    /// Kinematics for a photon of total energy `energy`; both channels must propagate.
    pub fn from_energy(params: &RouterParams, energy: f64) -> Result<Self> {
        let k_a = band_wavenumber(params.omega_c + params.omega_a, params.xi_a, energy)
            .map_err(|_| RouterError::ChannelAEvanescent { energy })?;
        let k_b = band_wavenumber(params.omega_c + params.omega_b, params.xi_b, energy)
            .map_err(|argument| RouterError::ChannelBEvanescent { energy, argument })?;
        Ok(Self::assemble(params, energy, k_a, k_b))
    }

    fn assemble(params: &RouterParams, energy: f64, k_a: f64, k_b: f64) -> Self {
        Self {
            energy,
            k_a,
            k_b,
            v_a: group_velocity(params.xi_a, k_a),
            v_b: group_velocity(params.xi_b, k_b),
            delta_e: energy - params.omega_e,
        }
    }

    /// Rejects kinematics with a vanishing group velocity (band edge).
    pub fn ensure_propagating(&self) -> Result<()> {
        if !(self.v_a > 0.0) {
            return Err(RouterError::DegenerateChannel { channel: 'a', velocity: self.v_a });
        }
        if !(self.v_b > 0.0) {
            return Err(RouterError::DegenerateChannel { channel: 'b', velocity: self.v_b });
        }
        Ok(())
    }
}

/// v = 2 ξ sin k.
pub fn group_velocity(xi: f64, k: f64) -> f64 {
    2.0 * xi * k.sin()
}

/// Inverts `E = center − 2 ξ cos k` on [0, π]; returns the band argument on failure.
fn band_wavenumber(center: f64, xi: f64, energy: f64) -> std::result::Result<f64, f64> {
    let argument = (center - energy) / (2.0 * xi);
    if argument.abs() > 1.0 || argument.is_nan() {
        return Err(argument);
    }
    Ok(argument.acos())
}

/// Parses a wavenumber written either as a decimal or as a rational multiple
/// of π: `pi`, `pi/4`, `3pi/4`, `3*pi/4`, `-pi/2`.
pub fn parse_angle(text: &str) -> Option<f64> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        return lower.parse::<f64>().ok().filter(|v| v.is_finite());
    };
    let numerator = lower[..pos].trim_end_matches('*');
    let numerator = match numerator {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().ok()?,
    };
    let rest = &lower[pos + 2..];
    let denominator = match rest {
        "" => 1.0,
        s => s.strip_prefix('/')?.parse::<f64>().ok().filter(|d| *d != 0.0)?,
    };
    Some(numerator * PI / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

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
            g_c: 1.0,
            n_junction: 1,
        }
    }

    #[test]
    fn figure_base_at_quarter_pi() {
        let kin = Kinematics::from_k(&RouterParams::figure_base(), FRAC_PI_4).unwrap();
        assert!((kin.energy - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((kin.k_b - FRAC_PI_4).abs() < 1e-12);
        assert!((kin.v_a - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((kin.v_b - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((kin.delta_e + 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn unit_params_at_half_pi() {
        let kin = Kinematics::from_k(&unit_params(), FRAC_PI_2).unwrap();
        assert!((kin.energy - 2.0).abs() < 1e-15);
        assert!((kin.k_b - FRAC_PI_2).abs() < 1e-15);
        assert!((kin.v_a - 2.0).abs() < 1e-15);
        assert!((kin.v_b - 2.0).abs() < 1e-15);
        assert!((kin.delta_e + 3.0).abs() < 1e-15);
    }

    #[test]
    fn shifted_b_band_is_evanescent() {
        let p = RouterParams { omega_b: SQRT_2 + 10.0, ..RouterParams::figure_base() };
        let err = Kinematics::from_k(&p, FRAC_PI_4).unwrap_err();
        assert!(matches!(err, RouterError::ChannelBEvanescent { .. }));
        assert!(err.to_string().contains("channel b evanescent"));
    }

    #[test]
    fn out_of_band_wavenumbers_are_rejected() {
        let p = RouterParams::figure_base();
        for k in [0.0, PI, -0.3, 4.0, f64::NAN] {
            assert!(Kinematics::from_k(&p, k).is_err(), "k = {k}");
        }
    }

    #[test]
    fn energy_entry_point_inverts_wavenumber_entry_point() {
        let p = RouterParams { xi_b: 1.3, omega_b: 1.6, ..RouterParams::figure_base() };
        let from_k = Kinematics::from_k(&p, 1.1).unwrap();
        let from_e = Kinematics::from_energy(&p, from_k.energy).unwrap();
        assert!((from_e.k_a - 1.1).abs() < 1e-12);
        assert!((from_e.k_b - from_k.k_b).abs() < 1e-12);
        assert!(Kinematics::from_energy(&p, 100.0).is_err());
    }

    #[test]
    fn angle_parsing() {
        assert_eq!(parse_angle("pi/4"), Some(FRAC_PI_4));
        assert_eq!(parse_angle("3pi/4"), Some(3.0 * PI / 4.0));
        assert_eq!(parse_angle("3*pi/4"), Some(3.0 * PI / 4.0));
        assert_eq!(parse_angle("pi"), Some(PI));
        assert_eq!(parse_angle("-pi/2"), Some(-FRAC_PI_2));
        assert_eq!(parse_angle("1.5707963"), Some(1.5707963));
        assert_eq!(parse_angle("pi/0"), None);
        assert_eq!(parse_angle("tau"), None);
        assert_eq!(parse_angle("2pi4"), None);
    }

    proptest::proptest! {
        #[test]
        fn both_bands_agree_on_energy(
            k_a in 0.01f64..3.13,
            omega_a in -2.0f64..2.0,
            shift in -0.5f64..0.5,
            xi_a in 0.3f64..3.0,
            xi_b in 0.3f64..3.0,
        ) {
            let p = RouterParams { omega_a, omega_b: omega_a + shift, xi_a, xi_b, ..unit_params() };
            if let Ok(kin) = Kinematics::from_k(&p, k_a) {
                let e_a = p.omega_c + p.omega_a - 2.0 * p.xi_a * kin.k_a.cos();
                let e_b = p.omega_c + p.omega_b - 2.0 * p.xi_b * kin.k_b.cos();
                let scale = kin.energy.abs().max(1.0);
                proptest::prop_assert!((e_a - kin.energy).abs() <= 1e-12 * scale);
                proptest::prop_assert!((e_b - kin.energy).abs() <= 1e-12 * scale);
                proptest::prop_assert!(kin.v_a > 0.0);
                proptest::prop_assert!(kin.v_b >= 0.0);
                let again = Kinematics::from_k(&p, k_a).unwrap();
                proptest::prop_assert_eq!(again.energy.to_bits(), kin.energy.to_bits());
                proptest::prop_assert_eq!(again.k_b.to_bits(), kin.k_b.to_bits());
            }
        }
    }
}
