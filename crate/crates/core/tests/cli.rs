use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tunnelsplit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn tunnelsplit")
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, skipping metadata and the header.
fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn table1_text_matches_golden() {
    assert_eq!(stdout(&run(&["table1"])), golden("table1.txt"));
    assert_eq!(stdout(&run(&["table1", "--format", "csv"])), golden("table1.csv"));
}

#[test]
fn quartic_profile_matches_golden_and_closed_form() {
    let out = stdout(&run(&["profile", "--quartic", "--grid=-2:2:41"]));
    assert_eq!(out, golden("profile_quartic.csv"));
    let barriers = [0.5, 1.0, 2.5, 5.0];
    for row in csv_rows(&out) {
        let x = row[0];
        for (k, du) in barriers.iter().enumerate() {
            let expect = 4.0 * du * x * x * (1.0 - x * x).powi(2) - 6.0 * x * x + 2.0;
            assert!((row[k + 1] - expect).abs() <= 1e-10 * expect.abs().max(1.0), "x={x} du={du}");
        }
    }
}

#[test]
fn shape_profiles_match_golden() {
    let out = stdout(&run(&["profile", "--kind", "shapes", "--grid", "0:2:21"]));
    assert_eq!(out, golden("profile_shapes.csv"));
    // Scaled so the barrier top is 1 and the Gaussian centre is 0.
    let rows = csv_rows(&out);
    assert!((rows[0][1] - 1.0).abs() < 1e-9);
    assert!(rows[10][1].abs() < 1e-9);
}

#[test]
fn output_uses_lf_and_metadata_header() {
    let out = stdout(&run(&["split", "--du", "3", "--format", "csv", "--methods", "localization"]));
    assert!(!out.contains('\r'));
    assert!(out.starts_with("# command: split\n"));
    assert!(out.lines().any(|l| l.starts_with("x0,sigma,alpha")));
}

#[test]
fn split_json_reports_all_methods() {
    let out = stdout(&run(&["split", "--sigma", "0.3593"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = &v["rows"][0];
    let exact = row["exact"].as_f64().unwrap();
    let loc = row["localization"].as_f64().unwrap();
    assert!((row["deltaV_over_Eu"].as_f64().unwrap() - 30.0).abs() < 1e-2);
    assert!(loc > exact);
    assert!(row["wkb"].as_f64().is_some());
    assert_eq!(v["meta"]["command"], "split");
}

#[test]
fn split_from_barrier_and_width() {
    let out = stdout(&run(&["split", "--dv", "30", "--width", "0.64", "--methods", "localization"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let alpha = v["rows"][0]["alpha"].as_f64().unwrap();
    assert!((alpha - 2.0).abs() < 0.05, "{alpha}");
}

#[test]
fn sweep_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let o = run(&[
        "sweep",
        "--family",
        "fixed-dv",
        "--dv",
        "30",
        "--alpha",
        "1:2:3",
        "--methods",
        "localization",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["meta"]["family"], "fixed-dv");
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[split]\nsigma = 0.3\nalpha = 1.0\nmethods = \"localization\"\nformat = \"csv\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = stdout(&run(&["split", "--config", cfg]));
    let b = stdout(&run(&["split", "--config", cfg, "--sigma", "0.35"]));
    let sigma = |t: &str| csv_rows_loose(t)[1].clone();
    assert_eq!(sigma(&a), "0.3");
    assert_eq!(sigma(&b), "0.35");
}

fn csv_rows_loose(text: &str) -> Vec<String> {
    let line = text.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
    line.split(',').map(str::to_string).collect()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["split", "--help"]).status.code(), Some(0));
    assert_eq!(run(&["--unit-doc"]).status.code(), Some(0));
    assert_eq!(run(&["split", "--nonsense"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    // Outside the validated sigma/x0 range without the override.
    assert_eq!(run(&["split", "--sigma", "0.7"]).status.code(), Some(1));
    // Width not reachable at this barrier.
    assert_eq!(run(&["split", "--dv", "30", "--width", "5"]).status.code(), Some(1));
    // Barrier too low for turning points below the top.
    let o = run(&["split", "--sigma", "0.9", "--allow-out-of-range", "--methods", "wkb"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unknown_config_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[split]\nsigmaa = 0.3\n").unwrap();
    let o = run(&["split", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unit_doc_mentions_energy_unit() {
    let out = stdout(&run(&["--unit-doc"]));
    assert!(out.contains("kJ/mol") && out.contains("cm^-1"));
}
