use std::f64::consts::FRAC_PI_4;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tbulge_core::{AmplitudeSet, CoefficientSet, Kinematics, RouterParams};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn tbulge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbulge")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    configs().join(name).to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

#[test]
fn compute_unit_example_from_a() {
    let out = tbulge(&["--config", &config("unit.json"), "compute", "--k", "1.5707963", "--port", "a", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let c: CoefficientSet = serde_json::from_value(v["coefficients"].clone()).unwrap();
    let expected = [4.0 / 9.0, 1.0 / 9.0, 4.0 / 9.0];
    for ((_, got), want) in c.entries().into_iter().zip(expected) {
        assert!((got - want).abs() < 1e-6, "{got} vs {want}");
    }
}

#[test]
fn compute_golden_point_from_b() {
    let out = tbulge(&["--config", &config("golden.json"), "compute", "--k", "0.7853981", "--port", "b"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let value = |name: &str| -> f64 {
        let line = text.lines().find(|l| l.trim_start().starts_with(name)).unwrap();
        line.split_whitespace().nth(1).unwrap().parse().unwrap()
    };
    assert!(value("R_b") < 1e-10);
    assert!((value("T_ab") - 1.0).abs() < 1e-10);
}

#[test]
fn compute_json_round_trips_every_value() {
    let out = tbulge(&["compute", "--k", "pi/4", "--port", "a", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let params: RouterParams = serde_json::from_value(v["params"].clone()).unwrap();
    assert_eq!(params, RouterParams::figure_base());
    let kin: Kinematics = serde_json::from_value(v["kinematics"].clone()).unwrap();
    assert_eq!(kin, Kinematics::from_k(&params, FRAC_PI_4).unwrap());
    let amps: AmplitudeSet = serde_json::from_value(v["amplitudes"].clone()).unwrap();
    let c: CoefficientSet = serde_json::from_value(v["coefficients"].clone()).unwrap();
    let (_, direct_amps, direct) =
        tbulge_core::scattering::scatter(&params, FRAC_PI_4, tbulge_core::Port::FromA).unwrap();
    assert_eq!(amps, direct_amps);
    assert_eq!(c, direct);
}

#[test]
fn compute_csv_has_matching_header() {
    let out = tbulge(&["compute", "--k", "1.0", "--port", "b", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
    assert!(lines[0].ends_with("R_b,T_ab,residual"));
}

#[test]
fn missing_config_exits_2() {
    let out = tbulge(&["--config", "/nonexistent/run.json", "compute", "--k", "1", "--port", "a"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/nonexistent/run.json"));
}

#[test]
fn invalid_hopping_exits_2() {
    let dir = scratch("invalid");
    let path = dir.join("bad.json");
    let mut cfg: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(configs().join("unit.json")).unwrap()).unwrap();
    cfg["params"]["xi_a"] = serde_json::json!(0.0);
    std::fs::write(&path, cfg.to_string()).unwrap();
    let out = tbulge(&["--config", path.to_str().unwrap(), "verify", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("xi_a"));
}

#[test]
fn unknown_override_and_bad_wavenumber_exit_2() {
    assert_eq!(tbulge(&["--set", "g_z=1", "compute", "--k", "1", "--port", "a"]).status.code(), Some(2));
    assert_eq!(tbulge(&["compute", "--k", "one", "--port", "a"]).status.code(), Some(2));
}

#[test]
fn evanescent_channel_exits_3() {
    let out = tbulge(&["--config", &config("unit.json"), "--set", "xi_b=0.1", "compute", "--k", "0.3", "--port", "a"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("evanescent"));
    let out = tbulge(&["compute", "--k", "4", "--port", "a"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn override_changes_the_point() {
    let base = tbulge(&["compute", "--k", "1.2", "--port", "a", "--csv"]);
    let shifted =
        tbulge(&["--set", "g_c=0.5", "--set", "n_junction=2", "compute", "--k", "1.2", "--port", "a", "--csv"]);
    assert!(base.status.success() && shifted.status.success());
    assert_ne!(base.stdout, shifted.stdout);
}

#[test]
fn verify_frequency_domain_passes() {
    let out = tbulge(&["verify", "--samples", "200", "--mode", "freq"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("200/200 passed"), "{text}");
    let worst: f64 =
        text.split("worst discrepancy ").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!(worst < 1e-10);
}

#[test]
fn verify_wavepacket_passes() {
    let out = tbulge(&["--seed", "7", "verify", "--samples", "5", "--mode", "packet"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("5/5 passed"), "{text}");
    let worst: f64 =
        text.split("worst discrepancy ").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!(worst < 2e-2);
}

#[test]
fn verify_is_reproducible_for_a_seed() {
    let a = tbulge(&["--seed", "11", "verify", "--samples", "20"]);
    let b = tbulge(&["--seed", "11", "verify", "--samples", "20"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn figure_2_datasets_conserve() {
    let dir = scratch("figure2");
    let out = tbulge(&["--out", dir.to_str().unwrap(), "figure", "--figure", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows) = csv_rows(&dir.join("figure2.csv"));
    assert_eq!(header, ["g_a", "g_b", "g_c", "T_a", "R_a", "T_ba", "residual", "status"]);
    assert_eq!(rows.len(), 64_000);
    for row in &rows {
        let v: Vec<f64> = row[3..6].iter().map(|c| c.parse().unwrap()).collect();
        assert!(v.iter().all(|x| (0.0..=1.0).contains(x)));
        assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
    let script = std::fs::read_to_string(dir.join("figure2_plot.py")).unwrap();
    assert!(script.contains("figure2.csv"));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("figure2.json")).unwrap()).unwrap();
    assert_eq!(meta["grid"]["base"]["omega_e"], serde_json::json!(4.0 * std::f64::consts::SQRT_2));
}

#[test]
fn figure_3_datasets_conserve() {
    let dir = scratch("figure3");
    let out = tbulge(&["--out", dir.to_str().unwrap(), "figure", "--figure", "3", "--count", "12"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows) = csv_rows(&dir.join("figure3.csv"));
    assert_eq!(&header[3..5], ["R_b", "T_ab"]);
    assert_eq!(rows.len(), 12 * 12 * 12);
    for row in &rows {
        let sum: f64 = row[3..5].iter().map(|c| c.parse::<f64>().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }
}

#[test]
fn unknown_figure_exits_2() {
    let out = tbulge(&["--out", scratch("figure9").to_str().unwrap(), "figure", "--figure", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown figure"));
}

#[test]
fn sweep_output_does_not_depend_on_threads() {
    let files = |threads: &str| {
        let dir = scratch(&format!("sweep{threads}"));
        let out = tbulge(&[
            "--config",
            &config("junction_scan.json"),
            "--out",
            dir.to_str().unwrap(),
            "--threads",
            threads,
            "sweep",
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        (std::fs::read(dir.join("sweep.csv")).unwrap(), std::fs::read(dir.join("sweep.json")).unwrap())
    };
    assert_eq!(files("1"), files("4"));
}

#[test]
fn sweep_without_grid_exits_2() {
    let out = tbulge(&["--config", &config("unit.json"), "--out", scratch("nogrid").to_str().unwrap(), "sweep"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extrema_finds_the_junction_dependent_maxima() {
    let dir = scratch("extrema");
    let out = tbulge(&["--out", dir.to_str().unwrap(), "extrema"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("extrema.json")).unwrap()).unwrap();
    let groups = report["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 3);
    for g in groups {
        assert_eq!(g["status"], "ok");
        let loc = g["extrema"][0]["location"].as_f64().unwrap();
        assert!((0.2..8.0).contains(&loc));
    }
    let bad = tbulge(&["--out", dir.to_str().unwrap(), "extrema", "--scan", "omega"]);
    assert_eq!(bad.status.code(), Some(2));
}
