//! CLI acceptance: byte determinism of sweep artifacts, JSON round-trips,
//! the pinned CSV schema, and exit-code contracts.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isoperi"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> Vec<u8> {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn criterion_11_sweep_bytes_are_deterministic() {
    let args = ["sweep", "--random", "6,1000,42", "--format", "csv"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert!(!first.is_empty());
    assert_eq!(first, second, "sweep CSV bytes differ between runs");
    assert_eq!(first.iter().filter(|&&b| b == b'\n').count(), 1001);
    println!("criterion 11 determinism (sweep --random 6,1000,42 twice, byte-identical): PASS");
}

#[test]
fn csv_schema_is_pinned() {
    let out = stdout_of(&["sweep", "--random", "5,3,7", "--format", "csv"]);
    let text = String::from_utf8(out).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "trial_id,n,sides,L,A,Lhat,P,phi,phi0,tau,nu,zeta,classic_deficit,zhang_deficit,theorem1_case,verdict_c1a,verdict_c1b,verdict_c2,verdict_c3"
    );
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 19);
    assert_eq!(row[2].split(';').count(), 5);
    for side in row[2].split(';') {
        let parsed: f64 = side.parse().unwrap();
        assert_eq!(format!("{parsed}"), side, "side field must round-trip");
    }
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["compute", "--sides", "3,4,5", "--cyclic"],
        vec!["compute", "--sides", "1,2,3,4,5"],
        vec!["family", "--levy", "1.5707963267948966"],
        vec!["family", "--macnab", "3,1,2"],
        vec!["sweep", "--random", "5,20,42"],
        vec!["limits"],
    ] {
        let out = stdout_of(&args);
        let text = String::from_utf8(out).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let reserialized = serde_json::to_string(&value).unwrap() + "\n";
        assert_eq!(text, reserialized, "round-trip mismatch for {args:?}");
    }
}

#[test]
fn compute_matches_expected_values() {
    let out = stdout_of(&["compute", "--sides", "3,4,5", "--cyclic"]);
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!((value["phi"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((value["tau"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((value["A"].as_f64().unwrap() - 6.0).abs() < 1e-10);

    let out = stdout_of(&["family", "--levy", "1.5707963267948966"]);
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!((value["phi"].as_f64().unwrap() - 0.9292625460708013).abs() < 1e-12);

    // Vertex input derives sides and the shoelace area.
    let out = stdout_of(&["compute", "--vertices", "0,0,3,0,0,4"]);
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!((value["A"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert!((value["L"].as_f64().unwrap() - 12.0).abs() < 1e-12);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage errors: 1.
    assert_eq!(run(&["compute"]).status.code(), Some(1));
    assert_eq!(run(&["family", "--macnab", "1,2"]).status.code(), Some(1));
    assert_eq!(
        run(&["search", "--n", "5", "--objective", "Bogus"]).status.code(),
        Some(1)
    );
    // Invalid polygon input: 2.
    assert_eq!(
        run(&["compute", "--sides", "10,1,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["compute", "--sides", "1,-2,2"]).status.code(),
        Some(2)
    );
    // Success: 0.
    assert_eq!(run(&["limits"]).status.code(), Some(0));
}

#[test]
fn verify_reports_violations_with_exit_3() {
    let dir = std::env::temp_dir().join(format!("isoperi-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let clean = dir.join("pentagons.json");
    let status = bin()
        .args(["sweep", "--random", "5,50,42", "--output"])
        .arg(&clean)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        bin().args(["verify", "--input"]).arg(&clean).status().unwrap().code(),
        Some(0)
    );

    let triangles = dir.join("triangles.csv");
    let status = bin()
        .args(["sweep", "--random", "3,50,42", "--format", "csv", "--output"])
        .arg(&triangles)
        .status()
        .unwrap();
    assert!(status.success());
    let out = bin()
        .args(["verify", "--format", "csv", "--input"])
        .arg(&triangles)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("c2"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_files_are_written_atomically() {
    let dir = std::env::temp_dir().join(format!("isoperi-atomic-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("limits.csv");
    let status = bin()
        .args(["limits", "--format", "csv", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(path.exists());
    // No stray temp files left behind.
    let leftovers: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path() != path)
        .collect();
    assert!(leftovers.is_empty(), "unexpected files: {leftovers:?}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn limits_table_tracks_the_reference_constant() {
    let out = stdout_of(&["limits"]);
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 62);
    assert_eq!(rows[0]["n"], 3);
    let last_gap = rows[61]["gap"].as_f64().unwrap();
    assert!(last_gap > 0.0 && last_gap < 0.02);
    let e_over_pi = value["e_over_pi"].as_f64().unwrap();
    assert!((e_over_pi - 0.8652559794322651).abs() < 1e-12);
}

#[test]
fn family_grids_emit_plot_columns() {
    let out = stdout_of(&[
        "family",
        "--levy",
        "1.0",
        "--grid",
        "0.1:3.0:30",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "alpha,L,A,Lhat,phi,ratio,nu");
    assert_eq!(lines.count(), 30);

    let out = stdout_of(&[
        "family",
        "--levy",
        "1.0,0.5",
        "--grid",
        "0.0:2.1415926:20",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("theta,L,A,Lhat,phi,ratio,nu"));

    let out = stdout_of(&[
        "family",
        "--perturbed",
        "6,0.0",
        "--grid",
        "0.01:0.2:10",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("eps,ratio,pred_ratio,delta_ratio"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn sweep_family_grids_run_end_to_end() {
    let out = stdout_of(&["sweep", "--macnab", "2,5,1.1,4,6", "--format", "csv"]);
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 25); // header + 4 n-values x 6 ratios
    for line in text.lines().skip(1) {
        assert!(line.contains("CaseII_between") || line.contains("RegularEquality"));
        assert!(line.ends_with("Holds") || line.ends_with("Boundary"));
    }
    let out = stdout_of(&["sweep", "--perturbed", "5,7,0.02,0.1,4"]);
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(value["records"].as_array().unwrap().len(), 12);
    assert_eq!(value["summary"]["violations"].as_array().unwrap().len(), 0);
    let out = stdout_of(&["sweep", "--regular", "3,32"]);
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(
        value["summary"]["by_case"]["RegularEquality"].as_u64().unwrap(),
        30
    );
}

#[test]
fn search_finds_the_triangle_violation() {
    let out = stdout_of(&[
        "search",
        "--n",
        "3",
        "--objective",
        "NegZhangDeficit",
        "--seed",
        "1",
        "--budget",
        "2000",
    ]);
    let value: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!(value["best_margin"].as_f64().unwrap() > 0.0);
}

fn file_exists(path: &Path) -> bool {
    path.exists()
}

#[test]
fn verbose_metadata_stays_on_stderr() {
    let out = run(&["compute", "--sides", "3,4,5", "--verbose"]);
    assert!(out.status.success());
    assert!(!out.stderr.is_empty());
    // Payload identical with and without --verbose.
    let quiet = stdout_of(&["compute", "--sides", "3,4,5"]);
    assert_eq!(out.stdout, quiet);
    assert!(file_exists(Path::new(env!("CARGO_BIN_EXE_isoperi"))));
}
