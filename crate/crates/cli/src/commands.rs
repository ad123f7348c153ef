use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, PI};
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use tbulge_core::config::RunConfig;
use tbulge_core::kinematics::parse_angle;
use tbulge_core::oracle::{
    compare, compare_coefficients, propagate_wavepacket, solve_frequency_domain, LatticeConfig, OracleMode,
    WavepacketConfig,
};
use tbulge_core::sampling::{sample, Tuple, TupleSpace};
use tbulge_core::scattering::{coefficients, ChannelAmplitudes};
use tbulge_core::spectral::packet_averaged;
use tbulge_core::sweep::{
    columns, find_extrema, format_value, run_sweep, write_csv, write_json, Axis, AxisParam, GridSpec, GroupStatus,
    PortSelection, SweepGrid,
};
use tbulge_core::{AmplitudeSet, CoefficientSet, Kinematics, Port, RouterParams, ScatteringQuery};

use crate::failure::Failure;
use crate::plot;

/// Largest gap between the packet-averaged and plane-wave coefficients for a
/// tuple to be used in the packet comparison.
const PACKET_SCREEN: f64 = 5e-3;
/// Quadrature half-width used by the spectral average, in units of σ_k.
const PACKET_WINDOW: f64 = 6.0;

pub struct Context {
    pub cfg: RunConfig,
    pub out: PathBuf,
    pub threads: usize,
    pub seed: u64,
}

pub enum PointFormat {
    Text,
    Json,
    Csv,
}

pub fn load_config(path: Option<&Path>, overrides: &[String]) -> Result<RunConfig, Failure> {
    let mut cfg = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if !overrides.is_empty() {
        cfg.params = apply_overrides(&cfg.params, overrides)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn apply_overrides(params: &RouterParams, overrides: &[String]) -> Result<RouterParams, Failure> {
    let mut value = serde_json::to_value(params).expect("parameters serialize");
    let fields = value.as_object_mut().expect("parameters are an object");
    for item in overrides {
        let (name, text) =
            item.split_once('=').ok_or_else(|| Failure::Config(format!("override `{item}` is not NAME=VALUE")))?;
        let name = name.trim();
        if !fields.contains_key(name) {
            return Err(Failure::Config(format!("unknown parameter `{name}`")));
        }
        let v = match text.trim().parse::<u64>() {
            Ok(n) => serde_json::Value::from(n),
            Err(_) => parse_angle(text)
                .map(serde_json::Value::from)
                .ok_or_else(|| Failure::Config(format!("cannot parse `{text}` as a number for `{name}`")))?,
        };
        fields.insert(name.to_string(), v);
    }
    serde_json::from_value(value).map_err(|e| Failure::Config(format!("invalid override: {e}")))
}

fn port_of(from_a: bool) -> Port {
    if from_a {
        Port::FromA
    } else {
        Port::FromB
    }
}

fn create_out(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("cannot create {}: {e}", dir.display())))
}

fn create_file(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::Io(format!("cannot create {}: {e}", path.display())))
}

#[derive(Serialize)]
struct PointReport<'a> {
    params: &'a RouterParams,
    kinematics: &'a Kinematics,
    amplitudes: &'a AmplitudeSet,
    coefficients: &'a CoefficientSet,
}

fn amplitude_entries(amps: &AmplitudeSet) -> Vec<(&'static str, tbulge_core::Complex64)> {
    let mut out = match amps.channel {
        ChannelAmplitudes::FromA { t, r, t_b } => vec![("t", t), ("r", r), ("t_b", t_b)],
        ChannelAmplitudes::FromB { r_b, t_a } => vec![("r_b", r_b), ("t_a", t_a)],
    };
    out.extend([("A", amps.standing_a), ("u_f", amps.u_f), ("u_e", amps.u_e)]);
    out
}

pub fn compute(ctx: &Context, k: &str, from_a: bool, format: PointFormat) -> Result<(), Failure> {
    let k_a = parse_angle(k).ok_or_else(|| Failure::Config(format!("cannot parse wavenumber `{k}`")))?;
    let params = ctx.cfg.params;
    let kin = Kinematics::from_k(&params, k_a)?;
    kin.ensure_propagating()?;
    let amps = ScatteringQuery::new(port_of(from_a), kin).amplitudes(&params)?;
    let coeffs = coefficients(&kin, &amps);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        PointFormat::Json => {
            let report = PointReport { params: &params, kinematics: &kin, amplitudes: &amps, coefficients: &coeffs };
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        PointFormat::Csv => {
            let mut header =
                vec!["port".to_string(), "k_a".into(), "energy".into(), "k_b".into(), "v_a".into(), "v_b".into()];
            let mut cells = vec![
                port_of(from_a).label().to_string(),
                format_value(kin.k_a),
                format_value(kin.energy),
                format_value(kin.k_b),
                format_value(kin.v_a),
                format_value(kin.v_b),
            ];
            for (name, z) in amplitude_entries(&amps) {
                header.push(format!("{name}_re"));
                header.push(format!("{name}_im"));
                cells.push(format_value(z.re));
                cells.push(format_value(z.im));
            }
            for (name, v) in coeffs.entries() {
                header.push(name.to_string());
                cells.push(format_value(v));
            }
            header.push("residual".into());
            cells.push(format_value(coeffs.residual()));
            writeln!(out, "{}", header.join(","))?;
            writeln!(out, "{}", cells.join(","))?;
        }
        PointFormat::Text => {
            writeln!(out, "port      {}", port_of(from_a).label())?;
            writeln!(out, "k_a       {}", kin.k_a)?;
            writeln!(out, "k_b       {}", kin.k_b)?;
            writeln!(out, "energy    {}", kin.energy)?;
            writeln!(out, "v_a       {}", kin.v_a)?;
            writeln!(out, "v_b       {}", kin.v_b)?;
            writeln!(out, "delta_e   {}", kin.delta_e)?;
            writeln!(out, "amplitudes")?;
            for (name, z) in amplitude_entries(&amps) {
                writeln!(out, "  {name:<10}{} {:+}i", z.re, z.im)?;
            }
            writeln!(out, "coefficients")?;
            for (name, v) in coeffs.entries() {
                writeln!(out, "  {name:<10}{v}")?;
            }
            writeln!(out, "  {:<10}{:e}", "residual", coeffs.residual())?;
        }
    }
    Ok(())
}

struct Tally {
    passed: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { passed: 0, worst: 0.0, failures: Vec::new() }
    }
}

pub fn verify(ctx: &Context, samples: usize, packet: bool) -> Result<(), Failure> {
    if samples == 0 {
        return Err(Failure::Config("--samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let (tally, tolerance, screened) =
        if packet { verify_packet(ctx, samples, &mut rng)? } else { verify_frequency(ctx, samples, &mut rng)? };
    let mode = if packet { "packet" } else { "freq" };
    for f in &tally.failures {
        eprintln!("mismatch: {f}");
    }
    print!(
        "mode {mode}: {}/{samples} passed, {} failed, worst discrepancy {:.3e} (tolerance {tolerance:e})",
        tally.passed,
        samples - tally.passed,
        tally.worst
    );
    if packet {
        print!(", {screened} draws screened out");
    }
    println!();
    if tally.passed == samples {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} of {samples} samples disagree with the lattice oracle",
            samples - tally.passed
        )))
    }
}

fn draw(ctx: &Context, space: &TupleSpace, rng: &mut ChaCha8Rng) -> Result<Tuple, Failure> {
    sample(rng, &ctx.cfg.params, space).ok_or_else(|| {
        Failure::Kinematics("no wavenumber propagates in both waveguides for the configured bands".into())
    })
}

fn verify_frequency(ctx: &Context, samples: usize, rng: &mut ChaCha8Rng) -> Result<(Tally, f64, usize), Failure> {
    let lattice = match ctx.cfg.oracle {
        Some(cfg) if cfg.mode == OracleMode::FrequencyDomain => cfg,
        _ => LatticeConfig::frequency_domain(200, 200),
    };
    let space = TupleSpace::couplings_only();
    let mut tally = Tally::new();
    for _ in 0..samples {
        let t = draw(ctx, &space, rng)?;
        let kin = t.kinematics();
        let mut ok = true;
        for port in [Port::FromA, Port::FromB] {
            let query = ScatteringQuery::new(port, kin);
            let closed = coefficients(&kin, &query.amplitudes(&t.params)?);
            let report = compare(&closed, &solve_frequency_domain(&t.params, &lattice, &query)?);
            tally.worst = tally.worst.max(report.worst());
            if !report.all_pass() {
                ok = false;
                tally.failures.push(format!("{port:?} off by {:.3e} at {t:?}", report.worst()));
            }
        }
        tally.passed += ok as usize;
    }
    Ok((tally, lattice.tolerance(), 0))
}

fn incident_k(kin: &Kinematics, port: Port) -> f64 {
    match port {
        Port::FromA => kin.k_a,
        Port::FromB => kin.k_b,
    }
}

/// True when the packet spectrum of both ports fits inside both bands and
/// its average matches the plane-wave coefficients.
fn packet_comparable(t: &Tuple, kin: &Kinematics, sigma: f64) -> bool {
    [Port::FromA, Port::FromB].into_iter().all(|port| {
        let k0 = incident_k(kin, port);
        if k0 - PACKET_WINDOW * sigma <= 0.0 || k0 + PACKET_WINDOW * sigma >= PI {
            return false;
        }
        let Ok(averaged) = packet_averaged(&t.params, kin, port, sigma) else {
            return false;
        };
        let Ok(amps) = ScatteringQuery::new(port, *kin).amplitudes(&t.params) else {
            return false;
        };
        compare_coefficients(&coefficients(kin, &amps), &averaged, PACKET_SCREEN).all_pass()
    })
}

fn verify_packet(ctx: &Context, samples: usize, rng: &mut ChaCha8Rng) -> Result<(Tally, f64, usize), Failure> {
    let configured = ctx.cfg.oracle.filter(|c| c.mode == OracleMode::Wavepacket);
    let packet: WavepacketConfig = configured.and_then(|c| c.wavepacket).unwrap_or_default();
    let space = TupleSpace { coupling: (0.5, 4.0), k_a: (0.5, PI - 0.5), ..TupleSpace::couplings_only() };
    let mut tally = Tally::new();
    let (mut screened, mut tried) = (0, 0);
    let max_draws = 200 * samples;
    while tried < samples {
        if screened >= max_draws {
            return Err(Failure::Kinematics(format!(
                "only {tried} of {samples} drawn tuples are resolvable by a packet of sigma_k = {}",
                packet.sigma_k
            )));
        }
        let t = draw(ctx, &space, rng)?;
        let kin = t.kinematics();
        if !packet_comparable(&t, &kin, packet.sigma_k) {
            screened += 1;
            continue;
        }
        tried += 1;
        let mut ok = true;
        for port in [Port::FromA, Port::FromB] {
            let mut lattice = LatticeConfig::for_packet(&kin, port, packet);
            if let Some(c) = configured {
                lattice.half_len_a = lattice.half_len_a.max(c.half_len_a);
                lattice.len_b = lattice.len_b.max(c.len_b);
            }
            let query = ScatteringQuery::new(port, kin);
            let closed = coefficients(&kin, &query.amplitudes(&t.params)?);
            let report = compare(&closed, &propagate_wavepacket(&t.params, &lattice, &query)?);
            tally.worst = tally.worst.max(report.worst());
            if !report.all_pass() {
                ok = false;
                tally.failures.push(format!("{port:?} off by {:.3e} at {t:?}", report.worst()));
            }
        }
        tally.passed += ok as usize;
    }
    Ok((tally, tbulge_core::oracle::WAVEPACKET_TOLERANCE, screened))
}

pub fn sweep(ctx: &Context, csv: bool, json: bool) -> Result<(), Failure> {
    let grid = ctx.cfg.sweep_grid().ok_or_else(|| Failure::Config("the configuration has no `grid` block".into()))?;
    let table = run_sweep(&grid, ctx.threads)?;
    create_out(&ctx.out)?;
    let evaluated = table.evaluated().count();
    if csv {
        let path = ctx.out.join("sweep.csv");
        write_csv(&table, create_file(&path)?)?;
        println!("wrote {}", path.display());
    }
    if json {
        let path = ctx.out.join("sweep.json");
        write_json(&table, create_file(&path)?)?;
        println!("wrote {}", path.display());
    }
    println!("{} rows, {evaluated} evaluated, max residual {:.3e}", table.rows.len(), table.max_residual());
    Ok(())
}

#[derive(Serialize)]
struct FigureMetadata<'a> {
    artifact: &'static str,
    version: &'static str,
    figure: u32,
    grid: &'a SweepGrid,
    columns: Vec<String>,
    data: String,
    script: String,
}

pub fn figure(ctx: &Context, number: u32, count: usize) -> Result<(), Failure> {
    let port = match number {
        2 => PortSelection::FromA,
        3 => PortSelection::FromB,
        n => return Err(Failure::Config(format!("unknown figure {n} (expected 2 or 3)"))),
    };
    let k_a = ctx.cfg.grid.as_ref().map_or(FRAC_PI_4, |g| g.k_a);
    let grid = SweepGrid::couplings_cube(ctx.cfg.params, k_a, 0.2, 8.0, count, port);
    grid.validate()?;
    let table = run_sweep(&grid, ctx.threads)?;
    create_out(&ctx.out)?;

    let data = format!("figure{number}.csv");
    let script = format!("figure{number}_plot.py");
    write_csv(&table, create_file(&ctx.out.join(&data))?)?;
    let mut f = create_file(&ctx.out.join(&script))?;
    f.write_all(plot::script(number, &data).as_bytes())?;
    f.flush()?;
    let meta = FigureMetadata {
        artifact: "tbulge",
        version: env!("CARGO_PKG_VERSION"),
        figure: number,
        grid: &grid,
        columns: columns(&grid),
        data: data.clone(),
        script: script.clone(),
    };
    let mut m = create_file(&ctx.out.join(format!("figure{number}.json")))?;
    serde_json::to_writer_pretty(&mut m, &meta)?;
    writeln!(m)?;
    m.flush()?;
    println!(
        "wrote {data}, {script} and figure{number}.json to {} ({} rows, max residual {:.3e})",
        ctx.out.display(),
        table.rows.len(),
        table.max_residual()
    );
    Ok(())
}

/// N = 1..3 against g_b on [0.2, 8] at the configured g_a and g_c.
fn default_extrema_grid(params: RouterParams) -> SweepGrid {
    SweepGrid::new(
        params,
        GridSpec {
            k_a: FRAC_PI_4,
            axes: vec![Axis::new(AxisParam::NJunction, 1.0, 3.0, 3), Axis::new(AxisParam::GB, 0.2, 8.0, 40)],
            port: PortSelection::FromA,
        },
    )
}

pub fn extrema(ctx: &Context, coefficient: &str, scan: &str) -> Result<(), Failure> {
    let scan: AxisParam = scan.parse()?;
    let grid = ctx.cfg.sweep_grid().unwrap_or_else(|| default_extrema_grid(ctx.cfg.params));
    grid.validate()?;
    let table = run_sweep(&grid, ctx.threads)?;
    let report = find_extrema(&table, coefficient, scan)?;
    create_out(&ctx.out)?;
    let path = ctx.out.join("extrema.json");
    let mut f = create_file(&path)?;
    serde_json::to_writer_pretty(&mut f, &report)?;
    writeln!(f)?;
    f.flush()?;
    for group in &report.groups {
        let mut label = format!("N={}", group.n_junction);
        for fixed in group.fixed.iter().filter(|f| f.param != AxisParam::NJunction) {
            label.push_str(&format!(" {}={}", fixed.param, fixed.value));
        }
        match (group.status, group.argmax()) {
            (GroupStatus::Ok, Some(best)) => println!(
                "{label}: max {coefficient} = {:.6} at {scan} = {:.6} ({} extrema)",
                best.value,
                best.location,
                group.extrema.len()
            ),
            (GroupStatus::Ok, None) => println!("{label}: {} minima, no interior maximum", group.extrema.len()),
            (GroupStatus::NoInteriorExtremum, _) => println!("{label}: no interior extremum"),
        }
    }
    println!("wrote {}", path.display());
    Ok(())
}
