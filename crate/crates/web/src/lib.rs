//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point starts from the coupling-volume base parameters and
//! overrides the couplings and junction index chosen on the page. The
//! plain functions hold the logic; the `#[wasm_bindgen]` wrappers only
//! convert errors into JS exceptions.

use std::f64::consts::PI;
use wasm_bindgen::prelude::*;

use tbulge_core::scattering::scatter;
use tbulge_core::{Port, RouterParams};

/// Largest grid accepted by [`transfer_map`], per side.
pub const MAX_MAP_SIDE: usize = 200;
pub const MAX_SPECTRUM_SAMPLES: usize = 2000;

fn params(g_a: f64, g_b: f64, g_c: f64, n_junction: u32) -> Result<RouterParams, String> {
    RouterParams::figure_base()
        .with_couplings(g_a, g_b, g_c)
        .with_junction(n_junction)
        .validate()
        .map_err(|e| e.to_string())
}

/// `[T_a, R_a, T_ba, R_b, T_ab]` at one wavenumber.
pub fn coefficients_at(g_a: f64, g_b: f64, g_c: f64, n_junction: u32, k_a: f64) -> Result<Vec<f64>, String> {
    let p = params(g_a, g_b, g_c, n_junction)?;
    let mut out = Vec::with_capacity(5);
    for port in [Port::FromA, Port::FromB] {
        let (_, _, c) = scatter(&p, k_a, port).map_err(|e| e.to_string())?;
        out.extend(c.entries().into_iter().map(|(_, v)| v));
    }
    Ok(out)
}

/// Five interleaved coefficients for each of `samples` wavenumbers spread
/// over the open band (0, π). Points where a channel does not propagate are NaN.
pub fn spectrum_values(g_a: f64, g_b: f64, g_c: f64, n_junction: u32, samples: usize) -> Result<Vec<f64>, String> {
    if !(2..=MAX_SPECTRUM_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in 2..={MAX_SPECTRUM_SAMPLES}"));
    }
    params(g_a, g_b, g_c, n_junction)?;
    let mut out = Vec::with_capacity(5 * samples);
    for i in 0..samples {
        let k = PI * (i as f64 + 0.5) / samples as f64;
        match coefficients_at(g_a, g_b, g_c, n_junction, k) {
            Ok(values) => out.extend(values),
            Err(_) => out.extend([f64::NAN; 5]),
        }
    }
    Ok(out)
}

/// T_ba on a `side` × `side` grid of (g_a, g_b) over `[lo, hi]`, row-major
/// with g_b varying fastest.
pub fn transfer_values(g_c: f64, n_junction: u32, k_a: f64, lo: f64, hi: f64, side: usize) -> Result<Vec<f64>, String> {
    if !(2..=MAX_MAP_SIDE).contains(&side) {
        return Err(format!("side must lie in 2..={MAX_MAP_SIDE}"));
    }
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
        return Err(format!("need 0 <= lo < hi, got [{lo}, {hi}]"));
    }
    let step = (hi - lo) / (side - 1) as f64;
    let mut out = Vec::with_capacity(side * side);
    for i in 0..side {
        for j in 0..side {
            let p = params(lo + i as f64 * step, lo + j as f64 * step, g_c, n_junction)?;
            let (_, _, c) = scatter(&p, k_a, Port::FromA).map_err(|e| e.to_string())?;
            out.push(c.transfer());
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn coefficients(g_a: f64, g_b: f64, g_c: f64, n_junction: u32, k_a: f64) -> Result<Vec<f64>, JsValue> {
    coefficients_at(g_a, g_b, g_c, n_junction, k_a).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn spectrum(g_a: f64, g_b: f64, g_c: f64, n_junction: u32, samples: usize) -> Result<Vec<f64>, JsValue> {
    spectrum_values(g_a, g_b, g_c, n_junction, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn transfer_map(g_c: f64, n_junction: u32, k_a: f64, lo: f64, hi: f64, side: usize) -> Result<Vec<f64>, JsValue> {
    transfer_values(g_c, n_junction, k_a, lo, hi, side).map_err(|e| JsValue::from_str(&e))
}
