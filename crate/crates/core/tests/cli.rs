//! End-to-end runs of the `catgate` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use catgate::analysis::{find_optimal_gamma, infidelity_slice};
use catgate::gate::GateConfig;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catgate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn manifest(csv: &Path) -> Value {
    let path = csv.with_file_name(format!(
        "{}.manifest.json",
        csv.file_name().unwrap().to_string_lossy()
    ));
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn fock_compare_reports_benchmark_fidelity() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("fock.csv");
    let o = run(&["fock-compare", "--grid-points", "2048", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(&out);
    assert_eq!(m["command"], "fock-compare");
    let f = m["summary"]["fidelity"].as_f64().unwrap();
    assert!((f - 0.865).abs() < 0.005, "F = {f}");
    for p in m["outputs"].as_array().unwrap() {
        assert!(Path::new(p.as_str().unwrap()).exists());
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = run(&[
            "infidelity-slice",
            "--resolution",
            "21",
            "--grid-points",
            "512",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let ma = dir.path().join("a_minima.csv");
    let mb = dir.path().join("b_minima.csv");
    assert_eq!(fs::read(ma).unwrap(), fs::read(mb).unwrap());
}

#[test]
fn slice_minima_match_library() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("slice.csv");
    let o = run(&[
        "infidelity-slice",
        "--gamma-min",
        "0.27",
        "--gamma-max",
        "0.31",
        "--resolution",
        "21",
        "--grid-points",
        "1024",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("slice_minima.csv")).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    let t = GateConfig::from_rho(0.5, 0.2, 0.289, 0.0).unwrap();
    let slice = infidelity_slice(&t, 2.87, (0.27, 0.31), 21, 1024).unwrap();
    let lib = find_optimal_gamma(&slice).unwrap();
    assert_eq!(rows.len(), lib.len());
    for (row, (g, v)) in rows.iter().zip(lib) {
        assert_eq!(row[0], g);
        assert_eq!(row[2], v);
    }
}

#[test]
fn flags_override_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("params.cfg");
    let out = dir.path().join("f.csv");
    fs::write(
        &cfg,
        format!(
            "# test run\nrho = 0.8\nn = 3\ngrid_points = 512\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = run(&["fock-compare", "--config", cfg.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(&out);
    assert_eq!(m["params"]["rho"].as_f64(), Some(0.8));
    assert_eq!(m["params"]["n"].as_u64(), Some(2));
    assert_eq!(m["params"]["grid_points"].as_u64(), Some(512));
}

#[test]
fn invalid_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.csv");
    let o = run(&["fock-compare", "--rho", "0.5", "--tau", "0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());

    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "rho = 0.5\nsqueeze = 3\n").unwrap();
    let o = run(&["fock-compare", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_two() {
    let dir = TempDir::new().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = blocker.join("nested.csv");
    let o = run(&["fock-compare", "--grid-points", "256", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn benchmark_command_passes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t1.csv");
    let o = run(&["table1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 10);
    let m = manifest(&out);
    assert!(m["summary"]["max_fidelity_deviation"].as_f64().unwrap() <= 0.002);
}
