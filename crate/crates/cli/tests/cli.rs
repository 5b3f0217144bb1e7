//! End-to-end tests of the `fcc` binary: artifact formats, bundled pipeline
//! configs, reproducibility and the exit-status contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde::Deserialize;

fn fcc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fcc"))
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("spawning the fcc binary")
}

fn config_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

#[derive(Deserialize)]
struct GroupsDoc {
    k: u8,
    groups: Vec<serde_json::Value>,
    chain_report: Option<ChainDoc>,
}

#[derive(Deserialize)]
struct ChainDoc {
    leaders: Vec<usize>,
    chains: Vec<Vec<usize>>,
    incomparable_pairs: u64,
}

#[test]
fn enumerate_analyze_simulate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let codes = dir.path().join("codes.json");
    let groups = dir.path().join("groups.json");
    let csv = dir.path().join("results.csv");

    let out = run(fcc()
        .args(["enumerate", "--k", "3", "--fix-zero-parity"])
        .arg("--out")
        .arg(&codes));
    assert!(out.status.success());

    let out = run(fcc()
        .args(["analyze", "--group", "--chains", "--metrics"])
        .arg("--in")
        .arg(&codes)
        .arg("--out")
        .arg(&groups));
    assert!(out.status.success());
    let doc: GroupsDoc =
        serde_json::from_str(&std::fs::read_to_string(&groups).unwrap()).unwrap();
    assert_eq!(doc.k, 3);
    assert_eq!(doc.groups.len(), 55);
    let chains = doc.chain_report.expect("chain report requested");
    assert_eq!(chains.chains.iter().map(|c| c.len()).sum::<usize>(), 55);
    assert!(!chains.leaders.is_empty());
    assert!(chains.incomparable_pairs > 0);

    let out = run(fcc()
        .args(["simulate", "--id", "1", "--snr", "0:2:4", "--trials", "20000"])
        .args(["--decoder", "both", "--seed", "11"])
        .arg("--codes")
        .arg(&codes)
        .arg("--out")
        .arg(&csv));
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 2);
    assert!(text.lines().nth(1).unwrap().starts_with("1,3,1,soft,0,20000,"));
}

#[test]
fn drm_supports_custom_truth_tables() {
    let dir = tempfile::tempdir().unwrap();
    let function = dir.path().join("and3.json");
    std::fs::write(&function, r#"{"k": 3, "kind": "truth_table", "table": "00000001"}"#)
        .unwrap();
    let drm = dir.path().join("drm.json");
    let out = run(fcc()
        .args(["drm", "--k", "3", "--t", "1"])
        .arg("--function-file")
        .arg(&function)
        .arg("--out")
        .arg(&drm));
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&drm).unwrap()).unwrap();
    assert_eq!(doc["role"], "drm");
    assert_eq!(doc["order"], 8);
    // demands concentrate on the 111 row for the 3-input AND
    assert_eq!(doc["entries"][7][0], 0);
    assert_eq!(doc["entries"][7][6], 2);

    // enumerate accepts the same function file
    let out = run(fcc()
        .args(["enumerate", "--k", "3"])
        .arg("--function-file")
        .arg(&function)
        .arg("--out")
        .arg(dir.path().join("and_codes.json")));
    assert!(out.status.success());
}

#[test]
fn bundled_fig2_pipeline_runs_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out_dir in [&a, &b] {
        let out = run(fcc()
            .arg("pipeline")
            .arg("--config")
            .arg(config_path("fig2-k2.json"))
            .arg("--out")
            .arg(out_dir));
        assert!(
            out.status.success(),
            "pipeline failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    for name in ["codes.json", "groups.json", "results.csv"] {
        let left = std::fs::read(a.join(name)).unwrap();
        let right = std::fs::read(b.join(name)).unwrap();
        assert_eq!(left, right, "{name} differs between identical runs");
    }

    let csv = std::fs::read_to_string(a.join("results.csv")).unwrap();
    // 2 selections x 9 SNR points x 2 decoders
    assert_eq!(csv.lines().count(), 1 + 2 * 9 * 2);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["selected_ids"].as_object().unwrap().len(), 2);
    assert_eq!(manifest["tool"], "fcc");
}

#[test]
fn bundled_fig4_pipeline_covers_six_groups() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(fcc()
        .arg("pipeline")
        .arg("--config")
        .arg(config_path("fig4-k3.json"))
        .arg("--out")
        .arg(dir.path()));
    assert!(
        out.status.success(),
        "pipeline failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    let ids = manifest["selected_ids"].as_object().unwrap();
    assert_eq!(ids.len(), 6);
    assert!(ids.contains_key("rep17") && ids.contains_key("rep55"));

    let csv = std::fs::read_to_string(dir.path().join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6 * 9 * 2);
    let doc: GroupsDoc = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("groups.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(doc.groups.len(), 55);
}

#[test]
fn exit_status_contract() {
    // 0: success
    let ok = run(fcc().args(["verify", "--k", "1"]));
    assert_eq!(ok.status.code(), Some(0));

    // 2: usage errors
    for args in [
        vec!["verify", "--k", "9"],
        vec!["verify", "--k", "3", "--deep"],
        vec!["drm", "--k", "2", "--t", "0"],
        vec!["enumerate", "--k", "0"],
        vec!["pipeline", "--config", "/does/not/exist.json"],
    ] {
        let out = run(fcc().args(&args));
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }

    // clap-level parse errors also exit 2
    let out = run(fcc().args(["simulate", "--decoder", "fuzzy"]));
    assert_eq!(out.status.code(), Some(2));

    // empty SNR grid is a usage error
    let dir = tempfile::tempdir().unwrap();
    let codes = dir.path().join("codes.json");
    run(fcc().args(["enumerate", "--k", "2"]).arg("--out").arg(&codes));
    let out = run(fcc()
        .args(["simulate", "--id", "1", "--snr", "6:1:0", "--trials", "10", "--decoder", "soft"])
        .arg("--codes")
        .arg(&codes));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pipeline_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();

    let unmatched = dir.path().join("unmatched.json");
    std::fs::write(
        &unmatched,
        r#"{
  "schema_version": 1,
  "enumeration": {"k": 2, "function": {"k": 2, "kind": "or"}},
  "selection": [{"label": "ghost", "codewords": ["0000", "0101", "1010", "1111"]}],
  "simulation": {"snr_db": "0:1:2", "trials_per_point": 10, "decoder": "soft", "seed": 1}
}"#,
    )
    .unwrap();
    let out = run(fcc().arg("pipeline").arg("--config").arg(&unmatched).arg("--out").arg(dir.path()));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ghost"));

    let wrong_version = dir.path().join("version.json");
    std::fs::write(
        &wrong_version,
        r#"{
  "schema_version": 99,
  "enumeration": {"k": 2, "function": {"k": 2, "kind": "or"}},
  "selection": [],
  "simulation": {"snr_db": "0", "trials_per_point": 1, "decoder": "soft", "seed": 1}
}"#,
    )
    .unwrap();
    let out = run(fcc().arg("pipeline").arg("--config").arg(&wrong_version).arg("--out").arg(dir.path()));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema_version"));
}

#[test]
fn verify_report_json_matches_stdout_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = run(fcc()
        .args(["verify", "--k", "2", "--deep"])
        .arg("--out")
        .arg(&report_path));
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("MATCH"));
    assert!(stdout.contains("INFORMATIONAL"));
    assert!(!stdout.contains("MISMATCH"));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["k"], 2);
    let lines = report["lines"].as_array().unwrap();
    assert!(lines.iter().any(|l| l["label"] == "full enumeration count"
        && l["observed"] == "12"
        && l["tag"] == "MATCH"));
}
