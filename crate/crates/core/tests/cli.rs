use std::fs::File;
use std::path::Path;
use std::process::{Command, Output};

use hkit::harness::write_function_csv;
use hkit::numerics::function::SampledFunction;
use hkit::numerics::grid::GridSpec;
use hkit::special::hermite::hermite_fn;

fn hkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkit")).args(args).env_remove("HKIT_CONFIG").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn passing_suite_exits_zero() {
    let o = hkit(&["verify", "gutzmer"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["suite"], "gutzmer");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn plane_moyal_with_small_truncation() {
    let o = hkit(&["verify", "moyal", "--n", "2", "--trunc", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn negative_time_is_invalid_config() {
    let o = hkit(&["verify", "bounds-3.9", "--t", "-1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid config"));
}

#[test]
fn unknown_suite_and_bad_flags_exit_two() {
    assert_eq!(code(&hkit(&["verify", "nope"])), 2);
    assert_eq!(code(&hkit(&["verify", "moyal", "--nodes", "abc"])), 2);
    assert_eq!(code(&hkit(&["verify", "gutzmer", "--n", "2"])), 2);
    assert_eq!(code(&hkit(&["verify", "moyal", "--n", "3"])), 2);
}

#[test]
fn same_config_same_bytes() {
    let a = hkit(&["verify", "hardy", "--seed", "11"]);
    let b = hkit(&["verify", "hardy", "--seed", "11"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cli_overrides_config_file_over_defaults() {
    let path = tmp("config.json");
    std::fs::write(&path, r#"{"seed": 99, "trials": 4}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hkit")).args(["verify", "gutzmer", "--seed", "5"]).env("HKIT_CONFIG", &path).output().unwrap();
    assert_eq!(code(&o), 0);
    let cfg = &json(&o)["config"];
    assert_eq!(cfg["seed"], 5);
    assert_eq!(cfg["trials"], 4);
    assert_eq!(cfg["nodes"], 64);
}

#[test]
fn malformed_config_file_exits_two() {
    let path = tmp("broken.json");
    std::fs::write(&path, r#"{"seed": "#).unwrap();
    let o = hkit(&["verify", "gutzmer", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    std::fs::write(&path, r#"{"sead": 3}"#).unwrap();
    assert_eq!(code(&hkit(&["verify", "gutzmer", "--config", path.to_str().unwrap()])), 2);
}

#[test]
fn report_renders_markdown_and_csv() {
    let path = tmp("report.json");
    let o = hkit(&["verify", "gutzmer", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let md = hkit(&["report", path.to_str().unwrap()]);
    assert_eq!(code(&md), 0);
    assert!(String::from_utf8_lossy(&md.stdout).contains("| gutzmer/phi0-(0.3,0) |"));
    let csv = hkit(&["report", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&csv.stdout).lines().count(), 7);
}

fn write_hermite(path: &Path, k: usize) {
    let g = GridSpec::gauss_hermite(1, 64, 1.0).unwrap();
    let f = SampledFunction::from_real_fn(&g, |x| hermite_fn(k, x[0]) + 0.3 * hermite_fn(k + 1, x[0]));
    write_function_csv(&f, File::create(path).unwrap()).unwrap();
}

#[test]
fn factorize_writes_symbol_and_report() {
    let (phi, f, h) = (tmp("phi.csv"), tmp("f.csv"), tmp("h.csv"));
    write_hermite(&phi, 0);
    write_hermite(&f, 0);
    let args = ["factorize", "--phi", phi.to_str().unwrap(), "--f", f.to_str().unwrap(), "--t", "0.5", "--entire", "--out-h", h.to_str().unwrap()];
    let o = hkit(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert!(r["reconstruction_error"].as_f64().unwrap() < 1e-6);
    assert!(r["kernel_route_error"].as_f64().unwrap() < 1e-6);
    let text = std::fs::read_to_string(&h).unwrap();
    assert!(text.starts_with("x,u,re,im"));
    assert_eq!(text.lines().count(), 1 + 64 * 64);
}

#[test]
fn factorize_rejects_orthogonal_input_and_time_lists() {
    let (phi, f) = (tmp("phi-orth.csv"), tmp("f-orth.csv"));
    let g = GridSpec::gauss_hermite(1, 64, 1.0).unwrap();
    write_function_csv(&SampledFunction::from_real_fn(&g, |x| hermite_fn(0, x[0])), File::create(&phi).unwrap()).unwrap();
    write_function_csv(&SampledFunction::from_real_fn(&g, |x| hermite_fn(1, x[0])), File::create(&f).unwrap()).unwrap();
    let base = ["factorize", "--phi", phi.to_str().unwrap(), "--f", f.to_str().unwrap(), "--out-h", "/dev/null"];
    let orth = hkit(&[&base[..], &["--t", "0.5", "--entire"]].concat());
    assert_eq!(code(&orth), 2);
    assert_eq!(code(&hkit(&[&base[..], &["--t", "0.5,0.6"]].concat())), 2);
}

#[test]
fn classify_reads_csv() {
    let path = tmp("gauss.csv");
    let g = GridSpec::uniform(1, -20.0, 20.0, 801).unwrap();
    write_function_csv(&SampledFunction::from_real_fn(&g, |x| (-0.5 * x[0] * x[0]).exp()), File::create(&path).unwrap()).unwrap();
    let o = hkit(&["classify", "--f", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["verdict"], "case-ii");
}

#[test]
fn missing_input_file_exits_two() {
    assert_eq!(code(&hkit(&["classify", "--f", "/nonexistent/f.csv"])), 2);
}
