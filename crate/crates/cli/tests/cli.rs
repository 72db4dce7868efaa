use std::path::Path;
use std::process::{Command, Output};

use finrank_cli::config::Layer;
use finrank_cli::csv::parse_table;
use finrank_cli::{defaults, settings_from_args, CommandKind};

const TOY: &str = "1*exp(-9r^2) -1*exp(-r^2)";
const DEEP: &str = "10*exp(-9r^2) -5*exp(-r^2)";

fn finrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn value_after(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().parse::<f64>().unwrap()))
        .unwrap_or_else(|| panic!("no '{key}' line in\n{text}"))
}

fn settings(args: &[&str]) -> Layer {
    let mut full = vec!["finrank", "kernel"];
    full.extend_from_slice(args);
    settings_from_args(full).unwrap().1
}

#[test]
fn precedence_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# file layer\nn = 30\nbeta = 2\nbasis = shifted\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let d = defaults(CommandKind::Kernel);

    // (flag set?, file set?) for n; beta only in file; sigma only in defaults
    let none = settings(&[]);
    assert_eq!(none["n"], d["n"]);
    assert_eq!(none["beta"], d["beta"]);

    let flag_only = settings(&["--n", "12"]);
    assert_eq!(flag_only["n"], "12");

    let file_only = settings(&["--config", cfg]);
    assert_eq!(file_only["n"], "30");
    assert_eq!(file_only["beta"], "2");
    assert_eq!(file_only["basis"], "shifted");
    assert_eq!(file_only["sigma"], d["sigma"]);

    let both = settings(&["--config", cfg, "--n", "12", "--basis", "ho"]);
    assert_eq!(both["n"], "12");
    assert_eq!(both["basis"], "ho");
    assert_eq!(both["beta"], "2");
    assert_eq!(both["sigma"], d["sigma"]);

    // flag order relative to --config is irrelevant
    let reordered = settings(&["--n", "12", "--basis", "ho", "--config", cfg]);
    assert_eq!(reordered, both);
}

#[test]
fn config_file_drives_the_binary_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eigen.cfg");
    std::fs::write(&cfg, format!("basis=ho\nn=50\nparity=even\npotential=\"{TOY}\"\n")).unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = finrank(&["eigen", "--config", cfg]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert!((value_after(&stdout(&from_file), "eigenvalue") - -0.171874).abs() < 5e-6);
    let overridden = finrank(&["eigen", "--config", cfg, "--n", "100"]);
    assert!((value_after(&stdout(&overridden), "eigenvalue") - -0.172071).abs() < 5e-6);
}

#[test]
fn eigen_example_matches_reference() {
    let o = finrank(&["eigen", "--basis", "ho", "--n", "100", "--parity", "even", "--potential", TOY]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("level 0\neigenvalue "));
    assert!((value_after(&text, "eigenvalue") - -0.172071).abs() < 5e-6);
    let coeffs: Vec<f64> = text
        .lines()
        .filter_map(|l| l.strip_prefix("coefficient "))
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(coeffs.len(), 50);
    assert!((coeffs.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn feshbach_example_matches_reference() {
    let o = finrank(&["feshbach", "--n1", "5", "--n2", "26", "--potential", DEEP]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!((value_after(&text, "selfconsistent") - -0.7342).abs() < 1e-4);
    assert!((value_after(&text, "p_ground") - -0.6897).abs() < 1e-4);
    assert!((value_after(&text, "selfconsistent") - value_after(&text, "full_ground")).abs() < 1e-8);
}

#[test]
fn kernel_csv_round_trips_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = finrank(&["kernel", "--basis", "ho", "--n", "50", "--operator", "identity", "--grid", "-3:3:0.5", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());

    let text = String::from_utf8(bytes).unwrap();
    let rows = parse_table(&text, "r,s,value").unwrap();
    assert_eq!(rows.len(), 13 * 13);
    // re-serializing what was parsed reproduces the file exactly
    let r: Vec<f64> = rows.iter().step_by(13).map(|row| row[0]).collect();
    let s: Vec<f64> = rows[..13].iter().map(|row| row[1]).collect();
    let again = finrank_cli::csv::grid_csv(&r, &s, |i, j| rows[13 * i + j][2]);
    assert_eq!(again, text);
    // identity kernel is symmetric under exchange, bit for bit
    for i in 0..13 {
        for j in 0..13 {
            assert_eq!(rows[13 * i + j][2].to_bits(), rows[13 * j + i][2].to_bits());
        }
    }
}

#[test]
fn curve_commands_emit_x_value_tables() {
    for args in [
        vec!["crest", "--n", "20"],
        vec!["weight", "--n", "20", "--operator", "kinetic"],
        vec!["crest-ratio", "--n", "20"],
        vec!["flat-wave", "--n", "20"],
        vec!["r2-local", "--n", "20"],
        vec!["crest", "--basis", "pairs", "--n", "10", "--beta", "0.5", "--sigma", "0.5"],
        vec!["kernel", "--n", "10", "--operator", "separable", "--potential", "exp(-r^2)", "--grid", "-1:1:1"],
    ] {
        let o = finrank(&args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        let header = if args[0] == "kernel" { "r,s,value" } else { "x,value" };
        let rows = parse_table(&stdout(&o), header).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().flatten().all(|v| v.is_finite()));
    }
}

#[test]
fn cuts_are_long_format() {
    let o = finrank(&["cuts", "--n", "20", "--grid", "-2:2:0.5", "--s-values", "0,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = parse_table(&stdout(&o), "s,x,value").unwrap();
    assert_eq!(rows.len(), 18);
    assert!(rows[..9].iter().all(|r| r[0] == 0.0));
    assert!(rows[9..].iter().all(|r| r[0] == 1.0));
}

#[test]
fn oracle_accepts_oscillator_potential() {
    let o = finrank(&["oracle", "--potential", "r^2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!((value_after(&stdout(&o), "eigenvalue") - 1.0).abs() < 1e-6);
}

fn assert_failure(o: &Output, code: i32) {
    assert_eq!(o.status.code(), Some(code), "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("finrank: error: "));
}

#[test]
fn exit_codes() {
    assert_failure(&finrank(&[]), 2);
    assert_failure(&finrank(&["nonsense"]), 2);
    assert_failure(&finrank(&["kernel", "--n", "many"]), 2);
    assert_failure(&finrank(&["kernel", "--basis", "hermite"]), 2);
    assert_failure(&finrank(&["kernel", "--grid", "1:0:0.1"]), 2);
    assert_failure(&finrank(&["eigen", "--potential", "sin(r)"]), 2);
    assert_failure(&finrank(&["eigen", "--potential", "r^2"]), 2);
    assert_failure(&finrank(&["kernel", "--operator", "potential"]), 2);
    assert_failure(&finrank(&["feshbach", "--potential", DEEP, "--n1", "30"]), 2);

    // outside the trust region the crest ratio is undefined
    assert_failure(&finrank(&["crest-ratio", "--n", "20", "--grid", "-15:15:1"]), 3);
    // ill-conditioned Gaussian family
    assert_failure(&finrank(&["kernel", "--basis", "shifted", "--n", "40", "--sigma", "0.05"]), 3);

    let missing = Path::new("/nonexistent-dir/settings.cfg");
    assert_failure(&finrank(&["kernel", "--config", missing.to_str().unwrap()]), 4);
    assert_failure(&finrank(&["kernel", "--out", "/nonexistent-dir/k.csv"]), 4);

    let help = finrank(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("crest-ratio"));
}

#[test]
fn accept_reports_every_criterion() {
    let o = finrank(&["accept"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")), "{text}");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn accept_surfaces_unresolved_oracle() {
    let o = finrank(&["accept", "--npoints", "500"]);
    assert_failure(&o, 3);
    assert!(stdout(&o).contains("insufficient resolution"));
}
