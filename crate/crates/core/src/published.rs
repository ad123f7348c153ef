//! The nondimensionalised fractions for the scattering amplitudes, kept as
//! cross-check expressions for the linear-system evaluation in
//! [`crate::scattering`].
//!
//! They divide by g_a, g_b, v_a and δ_e, so every function returns `None`
//! when one of those vanishes. The unexplained symbol ω_s in the bracket
//! `g_c²/δ_e − (E − ω_s − ω_c)` is read as ω_f.

use num_complex::Complex64;

use crate::kinematics::Kinematics;
use crate::params::RouterParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

struct Terms {
    /// g_a v_b / (g_b v_a)
    ratio: f64,
    /// g_b / g_a
    coupling_ratio: f64,
    /// g_c²/δ_e − (E − ω_f − ω_c)
    bracket: f64,
    theta: f64,
    sine: f64,
}

fn terms(params: &RouterParams, kin: &Kinematics) -> Option<Terms> {
    if params.g_a == 0.0 || params.g_b == 0.0 || kin.v_a == 0.0 || kin.delta_e == 0.0 {
        return None;
    }
    let theta = kin.k_b * f64::from(params.n_junction);
    Some(Terms {
        ratio: params.g_a * kin.v_b / (params.g_b * kin.v_a),
        coupling_ratio: params.g_b / params.g_a,
        bracket: params.g_c * params.g_c / kin.delta_e - (kin.energy - params.omega_f - params.omega_c),
        theta,
        sine: theta.sin(),
    })
}

impl Terms {
    fn bracket_term(&self, params: &RouterParams, v: f64) -> Complex64 {
        I * self.bracket * v / (params.g_a * params.g_b)
    }

    /// Shared denominator with the junction phase e^{±iθ}.
    fn denominator(&self, params: &RouterParams, kin: &Kinematics, sign: f64) -> Complex64 {
        self.ratio - 2.0 * self.coupling_ratio * Complex64::from_polar(1.0, sign * self.theta) * I * self.sine
            + self.bracket_term(params, kin.v_b)
    }
}

/// Transfer amplitude t^b for incidence from CRW-a.
pub fn transfer_from_a(params: &RouterParams, kin: &Kinematics) -> Option<Complex64> {
    let t = terms(params, kin)?;
    Some(2.0 * I * t.sine / t.denominator(params, kin, 1.0))
}

/// Reflection amplitude r for incidence from CRW-a.
pub fn reflection_from_a(params: &RouterParams, kin: &Kinematics) -> Option<Complex64> {
    let t = terms(params, kin)?;
    Some(-t.ratio / t.denominator(params, kin, 1.0))
}

/// Transmission amplitude t exactly as printed: numerator
/// `−(i B v_a/(g_a g_b) − 2 (g_b/g_a) e^{iθ} i sin θ)`.
pub fn transmission_from_a_as_printed(params: &RouterParams, kin: &Kinematics) -> Option<Complex64> {
    let t = terms(params, kin)?;
    let numerator =
        t.bracket_term(params, kin.v_a) - 2.0 * t.coupling_ratio * Complex64::from_polar(1.0, t.theta) * I * t.sine;
    Some(-numerator / t.denominator(params, kin, 1.0))
}

/// Transmission amplitude t re-derived from the junction equations, equal to 1 + r.
pub fn transmission_from_a(params: &RouterParams, kin: &Kinematics) -> Option<Complex64> {
    let t = terms(params, kin)?;
    let numerator =
        t.bracket_term(params, kin.v_b) - 2.0 * t.coupling_ratio * Complex64::from_polar(1.0, t.theta) * I * t.sine;
    Some(numerator / t.denominator(params, kin, 1.0))
}

/// Reflection amplitude r^b for incidence from CRW-b.
pub fn reflection_from_b(params: &RouterParams, kin: &Kinematics) -> Option<Complex64> {
    let t = terms(params, kin)?;
    Some(-t.denominator(params, kin, -1.0) / t.denominator(params, kin, 1.0))
}

/// Transfer amplitude t^a (left and right) for incidence from CRW-b.
pub fn transfer_from_b(params: &RouterParams, kin: &Kinematics) -> Option<Complex64> {
    let t = terms(params, kin)?;
    Some(2.0 * I * (kin.v_b / kin.v_a) * t.sine / t.denominator(params, kin, 1.0))
}
