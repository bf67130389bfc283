//! End-to-end tests of the binary: exit codes, CSV determinism, and the
//! documented output surfaces.

use std::fs;
use std::process::{Command, Output};

fn rbn(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbn"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const SINGLET_JSON: &str = r#"{"dA": 2, "dB": 2,
 "re": [[0,0,0,0],[0,0.5,-0.5,0],[0,-0.5,0.5,0],[0,0,0,0]],
 "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;

#[test]
fn figure1_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "figure1",
        "--eps",
        "0.6",
        "--beta-grid",
        "0:1:4",
        "--alpha-grid",
        "0:1:4",
        "--out",
        "out",
    ];
    let names = ["figure1_werner_eps0.6.csv", "figure1_pure_eps0.6.csv"];

    let out = rbn(&args, dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let first: Vec<Vec<u8>> = names
        .iter()
        .map(|n| fs::read(dir.path().join("out").join(n)).unwrap())
        .collect();

    // Identical flags and seed must reproduce the files byte for byte.
    let out = rbn(&args, dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    for (name, before) in names.iter().zip(&first) {
        let again = fs::read(dir.path().join("out").join(name)).unwrap();
        assert_eq!(&again, before, "{name} differs between runs");
    }
}

#[test]
fn figure1_rows_match_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = rbn(
        &[
            "figure1",
            "--eps",
            "0.1",
            "--beta-grid",
            "0:1:5",
            "--alpha-grid",
            "0:1:5",
            "--out",
            ".",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("figure1_werner_eps0.1.csv")).unwrap();
    let mut rows = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols.len(), 8);
        let (delta, closed) = (cols[1], cols[7]);
        assert!((delta - closed).abs() < 1e-4, "row {line}");
        rows += 1;
    }
    assert_eq!(rows, 5);
}

#[test]
fn figure2_emits_ordered_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = rbn(
        &[
            "figure2",
            "--eps",
            "0.6",
            "--beta-grid",
            "0:1:3",
            "--out",
            "fig2.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let (n, local, bilocal) = (cols[2], cols[3], cols[4]);
        assert!(bilocal >= -1e-8 && bilocal <= local + 1e-8 && local <= n + 1e-8);
    }
}

#[test]
fn hierarchy_reports_shannon_entropy() {
    let dir = tempfile::tempdir().unwrap();
    let out = rbn(&["hierarchy", "--probs", "0.5,0.5"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let eta_line = text
        .lines()
        .find(|l| l.starts_with("eta_mub_probes"))
        .expect("eta line");
    let value: f64 = eta_line.split('\t').nth(1).unwrap().parse().unwrap();
    assert!((value - std::f64::consts::LN_2).abs() < 1e-10);
    assert!(text.contains("RBN"));
}

#[test]
fn hierarchy_rejects_bad_probabilities() {
    let dir = tempfile::tempdir().unwrap();
    let out = rbn(&["hierarchy", "--probs", "0.9,0.9"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn eval_reads_state_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("singlet.json"), SINGLET_JSON).unwrap();
    let out = rbn(
        &["eval", "--state", "singlet.json", "--eps", "1"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let eta_line = text.lines().find(|l| l.starts_with("eta")).unwrap();
    let value: f64 = eta_line.split('\t').nth(1).unwrap().parse().unwrap();
    assert!((value - std::f64::consts::LN_2).abs() < 1e-10);
}

#[test]
fn eval_on_product_state_reports_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let product = r#"{"dA": 2, "dB": 2,
 "re": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],
 "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
    fs::write(dir.path().join("product.json"), product).unwrap();
    let out = rbn(
        &["eval", "--state", "product.json", "--eps", "0.6"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    for key in [
        "irreality_a",
        "irreality_b",
        "eta",
        "delta_local",
        "reality_gain_b",
        "gamma_b",
    ] {
        let line = stdout(&out)
            .lines()
            .find(|l| l.starts_with(key))
            .map(|l| l.to_owned())
            .unwrap();
        let value: f64 = line.split('\t').nth(1).unwrap().parse().unwrap();
        assert!(value.abs() < 1e-10, "{key} = {value}");
    }
}

#[test]
fn eval_rejects_malformed_json_with_position() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("broken.json"), "{\"dA\": 2,\n").unwrap();
    let out = rbn(&["eval", "--state", "broken.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = rbn(&["verify", "--seed", "5", "--samples", "16"], dir.path());
    assert!(ok.status.success(), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("30/30 suites passed"));

    let zero = rbn(&["verify", "--samples", "0"], dir.path());
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn grid_validation_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = rbn(
        &["figure1", "--beta-grid", "0:2:5", "--alpha-grid", "0:1:2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = rbn(
        &["figure2", "--eps", "1.5", "--beta-grid", "0:1:2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = rbn(&["figure1", "--nonsense"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
