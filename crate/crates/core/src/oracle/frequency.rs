use num_complex::Complex64;

use super::hamiltonian::{assemble_hamiltonian, LatticeLayout};
use super::solver::BorderedSolver;
use super::{LatticeConfig, LatticeSolution, OracleError, OracleMode, ResidualNorms};
use crate::params::RouterParams;
use crate::scattering::{ChannelAmplitudes, CoefficientSet, Port, ScatteringQuery};

/// Sites kept clear of the junction and of the truncated ends when fitting.
const FIT_MARGIN: i64 = 5;
const FIT_SPREAD_LIMIT: f64 = 1e-8;

#[derive(Clone, Copy)]
enum Region {
    Left,
    Right,
    BBeyond,
}

impl Region {
    fn name(self) -> &'static str {
        match self {
            Region::Left => "a, u < 0",
            Region::Right => "a, u > 0",
            Region::BBeyond => "b, v > N",
        }
    }
}

struct Probe<'a> {
    layout: &'a LatticeLayout,
    params: &'a RouterParams,
    k_a: f64,
    k_b: f64,
}

impl Probe<'_> {
    /// Site coordinates of a fit window, ordered along increasing coordinate.
    fn sites(&self, region: Region) -> Vec<(i64, usize)> {
        let l = self.layout.half_len_a as i64;
        let n = self.layout.n_junction as i64;
        let last = self.layout.b_last() as i64;
        match region {
            Region::Left => (-l + FIT_MARGIN..=-FIT_MARGIN).map(|u| (u, self.layout.a(u))).collect(),
            Region::Right => (FIT_MARGIN..=l - FIT_MARGIN).map(|u| (u, self.layout.a(u))).collect(),
            Region::BBeyond => (n + FIT_MARGIN..=last - FIT_MARGIN).map(|v| (v, self.layout.b(v as usize))).collect(),
        }
    }

    fn wavenumber(&self, region: Region) -> f64 {
        match region {
            Region::BBeyond => self.k_b,
            _ => self.k_a,
        }
    }

    fn hopping(&self, region: Region) -> f64 {
        match region {
            Region::BBeyond => self.params.xi_b,
            _ => self.params.xi_a,
        }
    }

    /// Least-squares amplitude `c` of `field ≈ c e^{i direction k n}` over the window.
    fn fit(&self, field: &[Complex64], region: Region, direction: f64) -> (Complex64, f64) {
        let k = self.wavenumber(region);
        let estimates: Vec<Complex64> = self
            .sites(region)
            .into_iter()
            .map(|(n, idx)| field[idx] * Complex64::from_polar(1.0, -direction * k * n as f64))
            .collect();
        let mean = estimates.iter().sum::<Complex64>() / estimates.len() as f64;
        let spread = estimates.iter().map(|e| (e - mean).norm()).fold(0.0, f64::max);
        (mean, spread)
    }

    /// Mean probability current toward increasing coordinate, 2ξ Im(ψ_n* ψ_{n+1}).
    fn current(&self, field: &[Complex64], region: Region) -> f64 {
        let sites = self.sites(region);
        let xi = self.hopping(region);
        let bonds: Vec<f64> = sites.windows(2).map(|w| 2.0 * xi * (field[w[0].1].conj() * field[w[1].1]).im).collect();
        bonds.iter().sum::<f64>() / bonds.len() as f64
    }
}

/// Solves `(E − H) ψ = 0` on the truncated lattice with outgoing boundaries.
///
/// The field is split into the incident plane wave on the launch waveguide and
/// a scattered part. The scattered part obeys `(E − H − Σ) ψ_sc = −(E − H) ψ_inc`,
/// where Σ = −ξ e^{ik} on each truncated end absorbs outgoing waves exactly.
pub fn solve_frequency_domain(
    params: &RouterParams,
    cfg: &LatticeConfig,
    query: &ScatteringQuery,
) -> Result<LatticeSolution, OracleError> {
    let params = params.validate()?;
    cfg.validate()?;
    if cfg.mode != OracleMode::FrequencyDomain {
        return Err(OracleError::Config("frequency-domain solve requires mode frequency_domain".into()));
    }
    let kin = query.kinematics;
    kin.ensure_propagating()?;

    let layout = LatticeLayout::new(cfg.half_len_a, params.n_junction, cfg.len_b);
    let l = layout.half_len_a as i64;
    let energy = Complex64::new(kin.energy, 0.0);
    let minus_one = Complex64::new(-1.0, 0.0);
    let hamiltonian = assemble_hamiltonian(&params, &layout);
    let bare = hamiltonian.affine(energy, minus_one);

    let outgoing_a = params.xi_a * Complex64::from_polar(1.0, kin.k_a);
    let outgoing_b = params.xi_b * Complex64::from_polar(1.0, kin.k_b);
    let mut system = bare.clone();
    system.add(layout.a(-l), layout.a(-l), outgoing_a);
    system.add(layout.a(l), layout.a(l), outgoing_a);
    system.add(layout.b(layout.b_last()), layout.b(layout.b_last()), outgoing_b);

    let mut incident = vec![Complex64::new(0.0, 0.0); layout.dim()];
    let mut source_fix: Vec<(usize, Complex64)> = Vec::new();
    match query.port {
        Port::FromA => {
            let wave = |u: i64| Complex64::from_polar(1.0, kin.k_a * u as f64);
            for u in layout.a_range() {
                incident[layout.a(u)] = wave(u);
            }
            source_fix.push((layout.a(-l), -params.xi_a * wave(-l - 1)));
            source_fix.push((layout.a(l), -params.xi_a * wave(l + 1)));
        }
        Port::FromB => {
            let wave = |v: i64| Complex64::from_polar(1.0, -kin.k_b * v as f64);
            for v in 1..=layout.b_last() {
                incident[layout.b(v)] = wave(v as i64);
            }
            let last = layout.b_last();
            source_fix.push((layout.b(last), -params.xi_b * wave(last as i64 + 1)));
        }
    }
    let mut source: Vec<Complex64> = bare.matvec(&incident).into_iter().map(|z| -z).collect();
    for (idx, extra) in source_fix {
        source[idx] += extra;
    }

    let solver = BorderedSolver::factor(&system, layout.chain_len()).map_err(|e| OracleError::SolveFailed {
        params: serde_json::to_string(&params).unwrap_or_default(),
        source: Box::new(e),
    })?;
    let scattered = solver.solve(&source);
    let linear = system.matvec(&scattered).iter().zip(&source).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let total: Vec<Complex64> = incident.iter().zip(&scattered).map(|(a, b)| a + b).collect();

    let probe = Probe { layout: &layout, params: &params, k_a: kin.k_a, k_b: kin.k_b };
    let mut fit_spread = 0.0f64;
    let mut fit = |field: &[Complex64], region: Region, direction: f64| -> Result<Complex64, OracleError> {
        let (amp, spread) = probe.fit(field, region, direction);
        if !(spread <= FIT_SPREAD_LIMIT) {
            return Err(OracleError::FitInconsistent { region: region.name(), spread });
        }
        fit_spread = fit_spread.max(spread);
        Ok(amp)
    };

    let (amplitudes, coefficients, asymmetry) = match query.port {
        Port::FromA => {
            let r = fit(&scattered, Region::Left, -1.0)?;
            let t = 1.0 + fit(&scattered, Region::Right, 1.0)?;
            let t_b = fit(&scattered, Region::BBeyond, 1.0)?;
            let flux_in = probe.current(&incident, Region::Right);
            let coeffs = CoefficientSet::from_a(
                probe.current(&total, Region::Right) / flux_in,
                -probe.current(&scattered, Region::Left) / flux_in,
                probe.current(&total, Region::BBeyond) / flux_in,
                t_b.norm_sqr(),
            );
            (ChannelAmplitudes::FromA { t, r, t_b }, coeffs, 0.0)
        }
        Port::FromB => {
            let r_b = fit(&scattered, Region::BBeyond, 1.0)?;
            let t_left = fit(&scattered, Region::Left, -1.0)?;
            let t_right = fit(&scattered, Region::Right, 1.0)?;
            let flux_in = -probe.current(&incident, Region::BBeyond);
            let coeffs = CoefficientSet::from_b(
                probe.current(&scattered, Region::BBeyond) / flux_in,
                (probe.current(&total, Region::Right) - probe.current(&total, Region::Left)) / flux_in,
                t_left.norm_sqr() + t_right.norm_sqr(),
            );
            let t_a = 0.5 * (t_left + t_right);
            (ChannelAmplitudes::FromB { r_b, t_a }, coeffs, (t_left - t_right).norm())
        }
    };

    let (u_f, u_e) = (total[layout.f()], total[layout.e()]);
    let u_0 = total[layout.a(0)];
    let u_n = total[layout.b(layout.n_junction)];
    let dressed = kin.energy - params.omega_f - params.omega_c;
    let delta_poly = kin.delta_e * dressed - params.g_c * params.g_c;
    let residuals = ResidualNorms {
        linear,
        fit_spread,
        upper_level: (u_e * kin.delta_e - params.g_c * u_f).norm(),
        emitter_elimination: (u_f * delta_poly - kin.delta_e * (params.g_a * u_0 + params.g_b * u_n)).norm(),
        left_right_asymmetry: asymmetry,
    };

    Ok(LatticeSolution {
        port: query.port,
        mode: OracleMode::FrequencyDomain,
        layout: Some(layout),
        state: total,
        amplitudes: Some(amplitudes),
        coefficients,
        residuals: Some(residuals),
        packet: None,
    })
}
