use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lz(dir: &Path, args: &[&str]) -> Output {
    lz_env(dir, args, &[])
}

fn lz_env(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lz"));
    cmd.current_dir(dir).args(args);
    for (k, _) in std::env::vars() {
        if k.starts_with("LZ_") {
            cmd.env_remove(k);
        }
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn lz")
}

fn ok(out: &Output) {
    assert!(
        out.status.success(),
        "status {:?}\nstdout: {}\nstderr: {}",
        out.status,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn trace_defaults_match_closed_form() {
    let dir = TempDir::new().unwrap();
    let out = lz(dir.path(), &["trace"]);
    ok(&out);
    let meta = json(&dir.path().join("trace.meta.json"));
    let p_plus = meta["results"]["p_plus"].as_f64().unwrap();
    assert!((p_plus - (-1f64).exp()).abs() <= 1e-5);
    assert_eq!(meta["config"]["t_max"], 30.0);
    assert_eq!(meta["config"]["dt"], 1e-4);
    let rows = csv_rows(&dir.path().join("trace.csv"));
    assert!(rows.len() > 1000);
    for r in &rows {
        let s: f64 = r[1].parse::<f64>().unwrap() + r[2].parse::<f64>().unwrap();
        assert!((s - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn zero_coupling_never_leaves_plus() {
    let dir = TempDir::new().unwrap();
    ok(&lz(dir.path(), &["trace", "--delta", "0", "--dt", "1e-3"]));
    for r in csv_rows(&dir.path().join("trace.csv")) {
        assert_eq!(r[1].parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn negative_step_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let out = lz(dir.path(), &["trace", "--dt", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dt"));
    assert!(!dir.path().join("trace.csv").exists());
}

#[test]
fn unknown_choice_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let out = lz(dir.path(), &["trace", "--form", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("blocker"), "").unwrap();
    let out = lz(dir.path(), &["trace", "--dt", "1e-2", "--output", "blocker/trace.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let out = lz(dir.path(), &["--config", "absent.conf", "trace"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_dt_logspace_covers_every_method() {
    let dir = TempDir::new().unwrap();
    ok(&lz(dir.path(), &["sweep-dt", "--dts", "logspace(1e-1,1e-3,7)", "--no-timing"]));
    let rows = csv_rows(&dir.path().join("sweep_dt.csv"));
    assert_eq!(rows.len(), 4 * 7);
    let methods: std::collections::BTreeSet<_> = rows.iter().map(|r| r[0].clone()).collect();
    assert_eq!(methods.len(), 4);
    let meta = json(&dir.path().join("sweep_dt.meta.json"));
    assert_eq!(meta["results"]["records"].as_array().unwrap().len(), 28);
}

#[test]
fn sweep_tmax_small_windows_are_quiet() {
    let dir = TempDir::new().unwrap();
    let out = lz(dir.path(), &["sweep-tmax", "--t-maxs", "10,30,100", "--dt", "1e-3"]);
    ok(&out);
    assert_eq!(csv_rows(&dir.path().join("sweep_tmax.csv")).len(), 12);
    assert!(!String::from_utf8_lossy(&out.stderr).contains("WARN"));
    let meta = json(&dir.path().join("sweep_tmax.meta.json"));
    assert!(meta["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn split_window_past_quarter_period_warns() {
    let dir = TempDir::new().unwrap();
    let out = lz(
        dir.path(),
        &["sweep-tmax", "--t-maxs", "6000", "--dt", "1e-4", "--methods", "unperturbed-split"],
    );
    ok(&out);
    assert!(String::from_utf8_lossy(&out.stderr).contains("split"));
    let meta = json(&dir.path().join("sweep_tmax.meta.json"));
    assert_eq!(meta["diagnostics"][0]["kind"], "split-periodicity");
}

#[test]
fn wide_layout_writes_one_file_per_method() {
    let dir = TempDir::new().unwrap();
    ok(&lz(
        dir.path(),
        &["sweep-dt", "--dts", "1e-2,1e-3", "--methods", "perturbed-exact,unperturbed-split", "--format", "wide"],
    ));
    assert_eq!(csv_rows(&dir.path().join("sweep_dt-perturbed-exact.csv")).len(), 2);
    assert_eq!(csv_rows(&dir.path().join("sweep_dt-unperturbed-split.csv")).len(), 2);
    assert!(dir.path().join("sweep_dt.meta.json").exists());
}

#[test]
fn reruns_without_timing_are_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["sweep-dt", "--dts", "1e-2,3e-3,1e-3", "--no-timing"];
    ok(&lz(dir.path(), &args));
    let first = fs::read(dir.path().join("sweep_dt.csv")).unwrap();
    ok(&lz_env(dir.path(), &args, &[("LZ_WORKERS", "1")]));
    let second = fs::read(dir.path().join("sweep_dt.csv")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn flag_beats_env_beats_config_file() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("run.conf"), "# settings\ndelta = 2\nt_max = 10\ndt = 1e-3\n").unwrap();
    let delta_of = |args: &[&str], env: &[(&str, &str)]| {
        ok(&lz_env(dir.path(), args, env));
        let meta = json(&dir.path().join("trace.meta.json"));
        (
            meta["config"]["params"]["delta"].as_f64().unwrap(),
            meta["config"]["t_max"].as_f64().unwrap(),
        )
    };
    assert_eq!(delta_of(&["--config", "run.conf", "trace"], &[]), (2.0, 10.0));
    assert_eq!(delta_of(&["--config", "run.conf", "trace"], &[("LZ_DELTA", "0.5")]), (0.5, 10.0));
    assert_eq!(
        delta_of(&["--config", "run.conf", "trace", "--delta", "1.5"], &[("LZ_DELTA", "0.5")]),
        (1.5, 10.0)
    );
    assert_eq!(delta_of(&["trace", "--dt", "1e-2"], &[("LZ_CONFIG", "run.conf")]), (2.0, 10.0));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.conf"), "velocity = 3\n").unwrap();
    let out = lz(dir.path(), &["--config", "bad.conf", "trace"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("velocity"));
}

#[test]
fn compress_bench_single_factor_is_exact() {
    let dir = TempDir::new().unwrap();
    ok(&lz(dir.path(), &["compress-bench", "--n-factors", "1"]));
    let meta = json(&dir.path().join("compress_bench.json"));
    for row in meta["results"].as_array().unwrap() {
        assert_eq!(row["max_deviation"].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn compress_bench_default_size() {
    let dir = TempDir::new().unwrap();
    ok(&lz(dir.path(), &["compress-bench"]));
    let meta = json(&dir.path().join("compress_bench.json"));
    let rows = meta["results"].as_array().unwrap();
    let find = |m: &str| rows.iter().find(|r| r["method"] == m).unwrap();
    let nn = find("nearest-neighbor");
    let xzx = find("xzx");
    assert_eq!(nn["n_factors"], 65536);
    assert!(nn["max_deviation"].as_f64().unwrap() <= 1e-11);
    assert!(xzx["max_deviation"].as_f64().unwrap() <= 1e-8);
    let chunked = find("nearest-neighbor-chunked");
    assert!(chunked["peak_versor_count"].as_u64().unwrap() <= 1024 + 6);
}

#[test]
fn oscillations_lists_maxima_with_spacings() {
    let dir = TempDir::new().unwrap();
    ok(&lz(dir.path(), &["oscillations", "--t-max", "12", "--dt", "1e-4"]));
    let rows = csv_rows(&dir.path().join("oscillations.csv"));
    assert!(rows.len() > 10);
    assert!(rows[0][3].is_empty());
    for r in &rows[1..] {
        let d: f64 = r[3].parse().unwrap();
        assert!(d > 0.0);
    }
}

#[test]
fn phase_compare_writes_both_curves() {
    let dir = TempDir::new().unwrap();
    ok(&lz(dir.path(), &["phase-compare", "--t-far", "100", "--t-near", "20", "--dt", "1e-3"]));
    let rows = csv_rows(&dir.path().join("phase.csv"));
    assert!(rows.len() > 100);
    assert_eq!(rows[0].len(), 5);
}

#[test]
fn help_states_units_and_defaults() {
    let dir = TempDir::new().unwrap();
    let out = lz(dir.path(), &["trace", "--help"]);
    ok(&out);
    let text = String::from_utf8_lossy(&out.stdout);
    for needle in ["--t-max", "default: 30", "default: 1e-4", "time", "energy", "LZ_DT"] {
        assert!(text.contains(needle), "help lacks `{needle}`");
    }
}
