//! Black-box tests of the installed binary: exit codes, file layout, CSV
//! shape, metadata footer, and byte-level determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nonmarkov(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonmarkov"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary launch")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).expect("config write");
    path.to_str().expect("utf-8 path").to_owned()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

const MARKOVIAN_PHASE: &str = "[model]\nkind = phase\nrate = const:1\n";

#[test]
fn analyze_markovian_phase_damping_reports_zeros() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(dir.path(), "run.ini", MARKOVIAN_PHASE);
    let out = nonmarkov(&["analyze", "--config", &cfg, "--out", "out"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let measures = fs::read_to_string(dir.path().join("out/measures.csv")).expect("measures");
    let rows = data_rows(&measures);
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    // Constant positive dephasing is Markovian: every measure vanishes and the
    // closed-form conditions hold vacuously.
    for idx in [0usize, 1, 2, 3, 4, 5, 6] {
        let v: f64 = row[idx].parse().expect("numeric cell");
        assert_eq!(v, 0.0, "column {idx} should be exactly zero, got {}", row[idx]);
    }
    assert_eq!(&row[7..10], ["true", "true", "true"]);
    assert!(measures.contains("# conditions.vacuous: true"));
    assert!(measures.contains("# resolved.horizon: auto"));

    let witness = fs::read_to_string(dir.path().join("out/witness.csv")).expect("witness");
    assert!(witness.starts_with("t,sigma_opt,gamma_max,norm_N,g_div,g_div_lb"));
    assert!(!dir.path().join("out/cp_trace.csv").exists(), "cp trace was not requested");
}

#[test]
fn analyze_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(
        dir.path(),
        "run.ini",
        "[model]\nkind = amplitude\nrate = const:1 + cos:2,10\n\n[run]\nt_end = 3\n\n[output]\noutputs = measures,witnesses,cp_trace\n",
    );
    for sub in ["a", "b"] {
        let out = nonmarkov(&["analyze", "--config", &cfg, "--out", sub], dir.path());
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    for file in ["measures.csv", "witness.csv", "cp_trace.csv"] {
        let a = fs::read(dir.path().join("a").join(file)).expect("first run output");
        let b = fs::read(dir.path().join("b").join(file)).expect("second run output");
        assert_eq!(a, b, "{file} differs between identical runs");
    }
}

#[test]
fn analyze_nlevel_table_reports_spectrum_quantities_only() {
    let dir = tempfile::tempdir().expect("tempdir");
    // Identity decoherence matrix for a qubit (3x3), re/im interleaved,
    // sampled at two times: all rates +1, so the witness is zero and only the
    // spectrum-based columns carry values.
    let mut table = String::new();
    for t in [0.0, 1.0] {
        table.push_str(&format!("{t}"));
        for i in 0..3 {
            for j in 0..3 {
                let re = if i == j { 1.0 } else { 0.0 };
                table.push_str(&format!(" {re} 0.0"));
            }
        }
        table.push('\n');
    }
    fs::write(dir.path().join("d.tsv"), table).expect("table write");
    let cfg = write_config(
        dir.path(),
        "run.ini",
        "[model]\nkind = custom_nlevel\ndim = 2\ntable = d.tsv\n\n[run]\nt_end = 1\n",
    );
    let out = nonmarkov(&["analyze", "--config", &cfg, "--out", "out"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let measures = fs::read_to_string(dir.path().join("out/measures.csv")).expect("measures");
    let row = &data_rows(&measures)[0];
    assert_eq!(row[0], "nan", "no map, no distinguishability");
    assert_eq!(row[3], "0.0000000000000000e0", "positive rates integrate to zero");
    assert_eq!(row[10], "nan", "no map, no CP scan");

    let witness = fs::read_to_string(dir.path().join("out/witness.csv")).expect("witness");
    let wrow = &data_rows(&witness)[0];
    assert_eq!(&wrow[1..4], ["nan", "nan", "nan"], "map-dependent witness columns");

    // Without a propagated map a CP scan is impossible and must be refused.
    let out = nonmarkov(&["check-cp", "--config", &cfg, "--out", "cp"], dir.path());
    assert_eq!(out.status.code(), Some(2), "check-cp on a spectrum-only model");
}

#[test]
fn sweep_with_empty_range_writes_header_only() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(
        dir.path(),
        "run.ini",
        "[model]\nkind = spin_boson\nalpha = 0.01\ncutoff = 1\n\n[sweep]\nparameter = cutoff\nmin = 1\nmax = 2\ncount = 0\n",
    );
    let out = nonmarkov(&["sweep", "--config", &cfg, "--out", "out"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let sweep = fs::read_to_string(dir.path().join("out/sweep.csv")).expect("sweep");
    assert!(sweep.starts_with("cutoff,n_dst,"));
    assert!(data_rows(&sweep).is_empty(), "no data rows for an empty range");
}

#[test]
fn config_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    let bad_kind = write_config(dir.path(), "kind.ini", "[model]\nkind = dephasing\n");
    let out = nonmarkov(&["analyze", "--config", &bad_kind, "--out", "o1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.kind"));

    let bad_wave = write_config(
        dir.path(),
        "wave.ini",
        "[model]\nkind = phase\nrate = wobble:3\n",
    );
    let out = nonmarkov(&["analyze", "--config", &bad_wave, "--out", "o2"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let bad_sweep = write_config(
        dir.path(),
        "sweep.ini",
        "[model]\nkind = phase\nrate = const:1\n\n[sweep]\nparameter = rate\nmin = 0\nmax = 1\ncount = 3\n",
    );
    let out = nonmarkov(&["sweep", "--config", &bad_sweep, "--out", "o3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
}

#[test]
fn check_cp_flags_inflating_map_with_exit_code_four() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(
        dir.path(),
        "run.ini",
        "[model]\nkind = custom_2level\nd33 = const:0.5\n\n[run]\nt_end = 2\n",
    );
    let out = nonmarkov(&["check-cp", "--config", &cfg, "--out", "out"], dir.path());
    assert_eq!(out.status.code(), Some(4), "violation exit code");
    let trace = fs::read_to_string(dir.path().join("out/cp_trace.csv")).expect("cp trace");
    assert!(trace.starts_with("t,choi_min_eig,is_cp"));
    let rows = data_rows(&trace);
    assert!(rows.iter().any(|r| r[2] == "false"), "some scan row must flag the violation");
    assert!(trace.contains("# cp.min_eigenvalue:"));
}

#[test]
fn set_overrides_reach_the_resolved_metadata() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(dir.path(), "run.ini", MARKOVIAN_PHASE);
    let out = nonmarkov(
        &[
            "analyze",
            "--config",
            &cfg,
            "--set",
            "run.ode_tol=1e-8",
            "--out",
            "out",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let measures = fs::read_to_string(dir.path().join("out/measures.csv")).expect("measures");
    assert!(
        measures.contains("# config.run.ode_tol: 1e-8"),
        "override missing from metadata footer"
    );
}
