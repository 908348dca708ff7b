//! End-to-end runs of the command-line front end: file formats, exit
//! codes, and output stability.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gabor-super"))
}

fn workdir(test: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(test);
    fs::create_dir_all(&dir).unwrap();
    dir
}

/// Scalar signal JSON from (re, im) samples.
fn signal_json(samples: &[(f64, f64)]) -> Value {
    json!({
        "L": samples.len(),
        "n": 1,
        "data": samples.iter().map(|(re, im)| json!([[re, im]])).collect::<Vec<_>>(),
    })
}

fn write_json(dir: &PathBuf, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn boxcar(dir: &PathBuf) -> PathBuf {
    write_json(
        dir,
        "g.json",
        &signal_json(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
    )
}

#[test]
fn dual_of_a_half_support_window_is_its_half() {
    let dir = workdir("dual_anchor");
    let g = boxcar(&dir);
    let out = run(bin().args(["dual", "--window"]).arg(&g).args(["--a", "2", "--b", "2"]));
    let v = stdout_json(&out);
    assert!((v["meta"]["A"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((v["meta"]["B"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(v["meta"]["wr_max_dev"].as_f64().unwrap() < 1e-10);
    let data = v["window"]["data"].as_array().unwrap();
    let expect = [0.5, 0.5, 0.0, 0.0];
    for (row, want) in data.iter().zip(expect) {
        assert!((row[0][0].as_f64().unwrap() - want).abs() < 1e-10);
        assert!(row[0][1].as_f64().unwrap().abs() < 1e-10);
    }
}

#[test]
fn a_window_that_misses_samples_exits_two() {
    let dir = workdir("dead_window");
    let g = write_json(
        &dir,
        "g.json",
        &signal_json(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
    );
    let out = run(bin().args(["dual", "--window"]).arg(&g).args(["--a", "2", "--b", "2"]));
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_input_exits_one() {
    let dir = workdir("malformed");
    let path = dir.join("g.json");
    fs::write(&path, "{ this is not json").unwrap();
    let out = run(bin().args(["dual", "--window"]).arg(&path).args(["--a", "2", "--b", "2"]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let out = run(bin().arg("--no-such-flag"));
    assert_eq!(out.status.code(), Some(1));
    let out = run(bin().args(["dual", "--help"]));
    assert_eq!(out.status.code(), Some(0));
    let out = run(bin().arg("--help"));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
}

#[test]
fn analyze_then_synthesize_with_the_dual_returns_the_input() {
    let dir = workdir("round_trip");
    let g = write_json(
        &dir,
        "g.json",
        &signal_json(&[
            (1.0, 0.0),
            (0.7, 0.1),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
        ]),
    );
    let f_samples = [
        (0.3, -0.2),
        (1.1, 0.4),
        (-0.7, 0.25),
        (0.5, 0.0),
        (0.9, -1.3),
        (-0.1, 0.6),
        (0.2, 0.2),
        (-1.5, 0.8),
    ];
    let f = write_json(&dir, "f.json", &signal_json(&f_samples));
    let lattice = ["--a", "2", "--b", "2"];

    let dual = dir.join("dual.json");
    let out = run(bin()
        .args(["dual", "--window"])
        .arg(&g)
        .args(lattice)
        .arg("--out")
        .arg(&dual));
    assert!(out.status.success());

    let coeffs = dir.join("c.json");
    let out = run(bin()
        .args(["analyze", "--input"])
        .arg(&f)
        .arg("--window")
        .arg(&g)
        .args(lattice)
        .arg("--out")
        .arg(&coeffs));
    assert!(out.status.success());

    let back = dir.join("back.json");
    let out = run(bin()
        .args(["synthesize", "--input"])
        .arg(&coeffs)
        .arg("--window")
        .arg(&dual)
        .arg("--out")
        .arg(&back));
    assert!(out.status.success());

    let v: Value = serde_json::from_str(&fs::read_to_string(&back).unwrap()).unwrap();
    for (row, (re, im)) in v["data"].as_array().unwrap().iter().zip(f_samples) {
        assert!((row[0][0].as_f64().unwrap() - re).abs() < 1e-8);
        assert!((row[0][1].as_f64().unwrap() - im).abs() < 1e-8);
    }
}

#[test]
fn biorthogonality_check_reports_but_never_fails_the_process() {
    let dir = workdir("wr_check");
    let g = boxcar(&dir);
    let dual = write_json(
        &dir,
        "dual.json",
        &signal_json(&[(0.5, 0.0), (0.5, 0.0), (0.0, 0.0), (0.0, 0.0)]),
    );
    let lattice = ["--a", "2", "--b", "2"];

    let out = run(bin()
        .args(["wr", "--window"])
        .arg(&g)
        .arg("--dual-window")
        .arg(&dual)
        .args(lattice));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], Value::Bool(true));

    // the window against itself is off by a factor of two: reported as
    // a failed check, still exit 0
    let out = run(bin()
        .args(["wr", "--window"])
        .arg(&g)
        .arg("--dual-window")
        .arg(&g)
        .args(lattice));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], Value::Bool(false));
    assert!(v["max_dev"].as_f64().unwrap() > 0.5);
}

#[test]
fn structured_apply_doubles_under_a_tight_boxcar() {
    let dir = workdir("walnut_apply");
    let g = boxcar(&dir);
    let f_samples = [(0.4, -0.1), (0.9, 0.3), (-0.2, 0.7), (1.3, 0.0)];
    let f = write_json(&dir, "f.json", &signal_json(&f_samples));
    let out = run(bin()
        .args(["walnut", "--input"])
        .arg(&f)
        .arg("--window")
        .arg(&g)
        .args(["--a", "2", "--b", "2"]));
    let v = stdout_json(&out);
    for (row, (re, im)) in v["output"]["data"].as_array().unwrap().iter().zip(f_samples) {
        assert!((row[0][0].as_f64().unwrap() - 2.0 * re).abs() < 1e-10);
        assert!((row[0][1].as_f64().unwrap() - 2.0 * im).abs() < 1e-10);
    }
}

#[test]
fn table_dump_carries_both_tables_and_needs_something_to_do() {
    let dir = workdir("walnut_dump");
    let g = boxcar(&dir);
    let out = run(bin()
        .args(["walnut", "--dump", "--window"])
        .arg(&g)
        .args(["--a", "2", "--b", "2"]));
    let v = stdout_json(&out);
    assert!(v["correlations"].is_object());
    assert!(v["janssen"].is_object());
    assert_eq!(v["correlations"]["step"].as_u64(), Some(2));

    // neither an input signal nor a dump request: nothing to do
    let out = run(bin().args(["walnut", "--window"]).arg(&g).args(["--a", "2", "--b", "2"]));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn multiplexing_recovers_each_channel_and_checks_the_count() {
    let dir = workdir("mux");
    // two-channel window on a redundancy-four grid
    let window = write_json(
        &dir,
        "w.json",
        &json!({
            "L": 8,
            "n": 2,
            "data": (0..8).map(|l| {
                let t = l as f64;
                json!([
                    [(-(t - 1.5) * (t - 1.5) / 4.0_f64).exp(), 0.1 * t],
                    [(-(t - 5.0) * (t - 5.0) / 3.0_f64).exp(), -0.05 * t],
                ])
            }).collect::<Vec<_>>(),
        }),
    );
    let s0 = write_json(
        &dir,
        "s0.json",
        &signal_json(&[
            (0.3, 0.0),
            (0.8, -0.4),
            (0.1, 0.9),
            (-0.6, 0.2),
            (0.0, 0.5),
            (1.2, -0.3),
            (-0.9, 0.0),
            (0.4, 0.4),
        ]),
    );
    let s1 = write_json(
        &dir,
        "s1.json",
        &signal_json(&[
            (-0.5, 0.1),
            (0.2, 0.6),
            (0.7, -0.8),
            (1.0, 0.0),
            (-0.3, -0.3),
            (0.9, 0.2),
            (0.0, -1.1),
            (0.6, 0.5),
        ]),
    );
    let inputs = format!("{},{}", s0.display(), s1.display());
    let out = run(bin()
        .args(["mux", "--input", &inputs, "--window"])
        .arg(&window)
        .args(["--a", "1", "--b", "2"]));
    let v = stdout_json(&out);
    for err in v["max_err"].as_array().unwrap() {
        assert!(err.as_f64().unwrap() < 1e-8);
    }
    assert_eq!(v["recovered"].as_array().unwrap().len(), 2);

    // three inputs against a two-channel window
    let triple = format!("{},{},{}", s0.display(), s1.display(), s0.display());
    let out = run(bin()
        .args(["mux", "--input", &triple, "--window"])
        .arg(&window)
        .args(["--a", "1", "--b", "2"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shift_operator_inversion_handles_both_spectra() {
    let dir = workdir("spectral");
    let double = write_json(
        &dir,
        "double.json",
        &json!({
            "L": 4,
            "n": 1,
            "terms": [{
                "x": 0,
                "symbol": (0..4).map(|_| json!([[[2.0, 0.0]]])).collect::<Vec<_>>(),
            }],
        }),
    );
    let out = run(bin().args(["spectral", "--input"]).arg(&double));
    let v = stdout_json(&out);
    assert!((v["cond"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(v["roundtrip"].as_f64().unwrap() < 1e-12);
    let sym = &v["inverse"]["terms"][0]["symbol"][0][0][0];
    assert!((sym[0].as_f64().unwrap() - 0.5).abs() < 1e-12);

    // decay profile as text
    let out = run(bin()
        .args(["spectral", "--format", "csv", "--input"])
        .arg(&double));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x,sym_norm,weight"));

    // the zero operator has nothing to invert
    let zero = write_json(
        &dir,
        "zero.json",
        &json!({
            "L": 4,
            "n": 1,
            "terms": [{
                "x": 0,
                "symbol": (0..4).map(|_| json!([[[0.0, 0.0]]])).collect::<Vec<_>>(),
            }],
        }),
    );
    let out = run(bin().args(["spectral", "--input"]).arg(&zero));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncation_sweep_requires_a_genuine_dual_pair() {
    let dir = workdir("convergence");
    let g = boxcar(&dir);
    let dual = write_json(
        &dir,
        "dual.json",
        &signal_json(&[(0.5, 0.0), (0.5, 0.0), (0.0, 0.0), (0.0, 0.0)]),
    );
    let f = write_json(
        &dir,
        "f.json",
        &signal_json(&[(0.2, 0.1), (0.5, -0.3), (-0.4, 0.0), (0.8, 0.6)]),
    );
    let lattice = ["--a", "2", "--b", "2"];

    let out = run(bin()
        .args(["convergence", "--input"])
        .arg(&f)
        .arg("--window")
        .arg(&g)
        .arg("--dual-window")
        .arg(&dual)
        .args(lattice));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("K,N,err"));
    let last = text.lines().last().unwrap();
    let err: f64 = last.rsplit(',').next().unwrap().parse().unwrap();
    assert!(err < 1e-6, "full box still misses: {last}");

    // a pair that fails biorthogonality is rejected up front
    let out = run(bin()
        .args(["convergence", "--input"])
        .arg(&f)
        .arg("--window")
        .arg(&g)
        .arg("--dual-window")
        .arg(&g)
        .args(lattice));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_emit_identical_bytes() {
    let dir = workdir("determinism");
    let g = boxcar(&dir);
    let lattice = ["--a", "2", "--b", "2"];
    let first = run(bin().args(["dual", "--window"]).arg(&g).args(lattice));
    let second = run(bin().args(["dual", "--window"]).arg(&g).args(lattice));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let first = run(bin().args(["bounds", "--window"]).arg(&g).args(lattice));
    let second = run(bin().args(["bounds", "--window"]).arg(&g).args(lattice));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
