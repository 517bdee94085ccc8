//! End-to-end tests of the command-line binary: bit-exact CSV contract,
//! API/CLI consistency, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};
use thermoprobe::cli::format_float;
use thermoprobe::rates::{rate_bundle, BathParams, CouplingKind, ProbeParams};

fn run_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermoprobe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows (everything after the header line, comments skipped).
fn data_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let _header = lines.next().unwrap();
    lines
        .map(|l| l.split(',').map(|s| s.to_string()).collect())
        .collect()
}

#[test]
fn rates_row_is_bitwise_equal_to_library_call() {
    let out = run_bin(&[
        "rates",
        "--coupling",
        "td",
        "T=0.05",
        "omega0=0.2",
        "u=0.1",
        "lambda=0.3",
    ]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_of(&out));
    assert_eq!(rows.len(), 1);

    let p = ProbeParams::new(0.2, 0.3, 0.1, std::f64::consts::PI, 0.0, CouplingKind::Td).unwrap();
    let b = BathParams::with_temperature(0.05).unwrap();
    let bundle = rate_bundle(&p, &b, true).unwrap();
    // columns: coupling,temperature,omega0,u,lambda,gamma0,n_mean,dn_dt,delta,omega_shifted,m_factor
    assert_eq!(rows[0][0], "td");
    assert_eq!(rows[0][5], format_float(bundle.gamma0));
    assert_eq!(rows[0][6], format_float(bundle.n_mean));
    assert_eq!(rows[0][7], format_float(bundle.dn_dt));
    assert_eq!(rows[0][8], format_float(bundle.delta));
    assert_eq!(rows[0][9], format_float(bundle.omega_shifted));
    assert_eq!(rows[0][10], format_float(bundle.m_factor));
}

#[test]
fn output_is_deterministic_up_to_timestamp() {
    let args = ["figure", "--preset", "fig10b"];
    let a = stdout_of(&run_bin(&args));
    let b = stdout_of(&run_bin(&args));
    let strip = |text: &str| -> String {
        text.lines()
            .filter(|l| !l.starts_with("# generated_unix"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn csv_floats_round_trip() {
    let out = run_bin(&["evolve", "T=0.7", "lambda=0.2", "u=1", "tau=0.5,5,50"]);
    assert!(out.status.success());
    for row in data_rows(&stdout_of(&out)) {
        for cell in row {
            let value: f64 = cell.parse().expect("numeric cell");
            assert_eq!(format_float(value), cell, "cell {cell} must round-trip");
        }
    }
}

#[test]
fn qfi_routes_agree_per_row() {
    let out = run_bin(&["qfi", "T=0.5", "theta=pi", "tau=4", "u=1", "lambda=0.3"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_of(&out));
    let get = |r: &[String], i: usize| r[i].parse::<f64>().unwrap();
    for row in &rows {
        let closed = get(row, 2);
        let bloch = get(row, 3);
        let sld = get(row, 4);
        let fi = get(row, 5);
        let scale = closed.abs().max(1e-300);
        assert!((closed - bloch).abs() <= 1e-8 * scale);
        assert!((closed - sld).abs() <= 1e-8 * scale);
        // theta = pi: the sigma_z readout saturates the bound
        assert!((fi - closed).abs() <= 1e-8 * scale);
        let compat = get(row, 6);
        assert!(compat <= 1e-10);
    }
}

#[test]
fn unknown_preset_exits_nonzero_and_lists_ids() {
    let out = run_bin(&["figure", "--preset", "fig42"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("fig1a") && err.contains("fig10b"),
        "stderr: {err}"
    );
}

#[test]
fn parse_errors_name_the_offending_key() {
    let out = run_bin(&["rates", "T=warm"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("'T'") || err.contains("\"T\""),
        "stderr: {err}"
    );

    let out = run_bin(&["rates", "flux_capacitor=1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("flux_capacitor"), "stderr: {err}");
}

#[test]
fn partial_failure_exits_three_with_flagged_rows() {
    // lambda = 0 leaves H_TT = 0: the Fisher matrix is singular, rows are
    // flagged, and the run completes with exit code 3
    let out = run_bin(&["multiparam", "lambda=0", "T=0.5", "tau=5"]);
    assert_eq!(out.status.code(), Some(3));
    let rows = data_rows(&stdout_of(&out));
    assert!(rows.iter().any(|r| r.last().unwrap() == "singular"));
}

#[test]
fn config_file_with_cli_override() {
    let dir = std::env::temp_dir().join("thermoprobe-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("run.conf");
    std::fs::write(&path, "T = 1.0\nlambda = 0.2\nu = 1e-6\nomega0 = 1\n").unwrap();
    let out = run_bin(&["rates", "--config", path.to_str().unwrap(), "lambda=1"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_of(&out));
    // lambda overridden to 1; comoving limit: n_mean = 1/(e - 1)
    let lambda: f64 = rows[0][4].parse().unwrap();
    assert_eq!(lambda, 1.0);
    let n_mean: f64 = rows[0][6].parse().unwrap();
    let planck = 1.0 / (1.0f64.exp() - 1.0);
    assert!((n_mean - planck).abs() <= 1e-8 * planck);
}

#[test]
fn scan_command_emits_axis_and_metadata() {
    let out = run_bin(&[
        "scan",
        "axis=tau:1:1e4:9:log",
        "quantity=qfi",
        "T=0.5",
        "u=1",
        "lambda=0.3",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("# quantity = qfi"));
    assert!(text.contains("# axis1 = tau:"));
    assert_eq!(data_rows(&text).len(), 9);
}

#[test]
fn figure_fig1a_emits_grid_table() {
    let out = run_bin(&["figure", "--preset", "fig1a"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "T,theta,qfi,status");
    // full cartesian grid: 41 x 41 rows
    assert_eq!(data_rows(&text).len(), 41 * 41);
}

#[test]
fn figure_writes_file() {
    let dir = std::env::temp_dir().join("thermoprobe-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig10a.csv");
    let out = run_bin(&[
        "figure",
        "--preset",
        "fig10a",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# preset = fig10a"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 17);
    // columns: lambda, delta_s, ratio_r, status
    for row in rows {
        let r: f64 = row[2].parse().unwrap();
        assert!(r >= 1.8, "R = {r}");
        assert_eq!(row.last().unwrap(), "ok");
    }
}
