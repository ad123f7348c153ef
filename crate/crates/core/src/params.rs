//! Static model parameters of the T-bulge router.
//!
//! All quantities are dimensionless multiples of a reference hopping ξ0.

use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use crate::error::{Result, RouterError};

/// Frequencies, hoppings, couplings and junction index of the router.
///
/// CRW-a is the infinite waveguide (sites u ∈ ℤ), CRW-b the semi-infinite
/// one (sites v ≥ 1). The emitter sits at the crossing of u = 0 and v = N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouterParams {
    pub omega_a: f64,
    pub omega_b: f64,
    /// Frequency of the auxiliary c mode.
    pub omega_c: f64,
    /// Frequency of the upper level |e⟩.
    pub omega_e: f64,
    /// Frequency of the middle level |f⟩.
    pub omega_f: f64,
    pub xi_a: f64,
    pub xi_b: f64,
    pub g_a: f64,
    pub g_b: f64,
    pub g_c: f64,
    /// Index N of the CRW-b cavity that meets the infinite waveguide.
    pub n_junction: u32,
}

impl RouterParams {
    /// The parameter set used for the coupling-strength volume plots:
    /// ω_a = ω_b = √2, ω_c = ω_f = 3√2, ω_e = 4√2, ξ_a = ξ_b = 2, N = 3.
    ///
    /// The couplings are set to the optimal-routing point g_a = g_b = 2,
    /// g_c = √20; sweeps overwrite them.
    pub fn figure_base() -> Self {
        Self {
            omega_a: SQRT_2,
            omega_b: SQRT_2,
            omega_c: 3.0 * SQRT_2,
            omega_e: 4.0 * SQRT_2,
            omega_f: 3.0 * SQRT_2,
            xi_a: 2.0,
            xi_b: 2.0,
            g_a: 2.0,
            g_b: 2.0,
            g_c: 20f64.sqrt(),
            n_junction: 3,
        }
    }

    pub fn with_couplings(mut self, g_a: f64, g_b: f64, g_c: f64) -> Self {
        self.g_a = g_a;
        self.g_b = g_b;
        self.g_c = g_c;
        self
    }

    pub fn with_junction(mut self, n: u32) -> Self {
        self.n_junction = n;
        self
    }

    /// Checks every invariant and returns the parameters unchanged.
    pub fn validate(self) -> Result<Self> {
        let frequencies = [
            ("omega_a", self.omega_a),
            ("omega_b", self.omega_b),
            ("omega_c", self.omega_c),
            ("omega_e", self.omega_e),
            ("omega_f", self.omega_f),
        ];
        for (field, value) in frequencies {
            if !value.is_finite() {
                return Err(invalid(field, format!("frequency must be finite, got {value}")));
            }
        }
        for (field, value) in [("xi_a", self.xi_a), ("xi_b", self.xi_b)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(invalid(field, format!("hopping must be positive, got {value}")));
            }
        }
        for (field, value) in [("g_a", self.g_a), ("g_b", self.g_b), ("g_c", self.g_c)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(invalid(field, format!("coupling must be non-negative, got {value}")));
            }
        }
        if self.n_junction < 1 {
            return Err(invalid("n_junction", "junction index must be >= 1".to_string()));
        }
        Ok(self)
    }
}

fn invalid(field: &'static str, reason: String) -> RouterError {
    RouterError::InvalidParameter { field, reason }
}
