use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn biquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biquot"))
        .args(args)
        .env_remove("BIQUOT_SEED")
        .env_remove("BIQUOT_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = biquot(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

/// Report JSON with the timing field removed.
fn untimed(bytes: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(bytes).expect("json report");
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn first_row(v: &Value) -> &Value {
    &v["results"][0]
}

#[test]
fn classify_e0() {
    let v = json(&["classify", "eschenburg", "--p", "1,1,0", "--q", "0,0,2"]);
    assert_eq!(first_row(&v)["class"], "ALMOST_POSITIVE_E0");
    assert_eq!(first_row(&v)["free"], true);
}

#[test]
fn classify_bazaikin_boundary_member() {
    let v = json(&["classify", "bazaikin", "--q", "1,1,1,3,-3"]);
    let r = first_row(&v);
    assert_eq!(r["free"], true);
    assert_eq!(r["class"], "QUASI_POSITIVE");
    assert_eq!(r["s"], 1);
    assert_eq!(r["p1"], 15);
}

#[test]
fn classify_torus_nonfree() {
    let v = json(&["classify", "torus", "--ab", "1,1"]);
    let r = first_row(&v);
    assert_eq!(r["free"], false);
    assert_eq!(r["verdict"], "ALMOST_POSITIVE");
    assert_eq!(r["isotropy"], serde_json::json!([1, 1, 1, 3]));
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        &["classify", "eschenburg", "--p", "1,1,0", "--q", "0,0,3"][..],
        &["classify", "bazaikin", "--q", "1,1,1,2,-3"],
        &["classify", "eschenburg", "--p", "1,1", "--q", "0,2"],
        &[
            "verify",
            "eschenburg",
            "--p",
            "1,1,2",
            "--q",
            "0,0,4",
            "--campaign",
            "locus",
        ],
        &["verify", "torus", "--l", "--lambda", "1.5"],
    ] {
        assert_eq!(biquot(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(
        biquot(&["report", "/nonexistent/report.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn scan_family_rows() {
    let v = json(&["scan", "bazaikin", "--family-n", "19"]);
    assert_eq!(v["results"].as_array().unwrap().len(), 10);
    assert_eq!(v["summary"]["all_s_one"], true);
    assert_eq!(v["summary"]["p1_distinct"], true);
}

#[test]
fn scan_boundary_two_classes() {
    let v = json(&["scan", "eschenburg", "--max", "6", "--boundary"]);
    assert_eq!(v["summary"]["equivalence_classes"], 2);
    let rows = v["results"].as_array().unwrap();
    assert!(rows
        .iter()
        .all(|r| r["equivalent_to"] == "E0" || r["equivalent_to"] == "W11"));
}

#[test]
fn scan_torus_free_actions() {
    let v = json(&["scan", "torus", "--ab-max", "3"]);
    let free: Vec<&str> = v["summary"]["free_actions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(free, ["U_L", "U_{0,0}", "U_0"]);
}

#[test]
fn verify_positive_campaigns_find_nothing() {
    for args in [
        &["verify", "bazaikin", "--q", "1,1,1,1,1", "-n", "1000"][..],
        &[
            "verify",
            "eschenburg",
            "--p",
            "1,1,2",
            "--q",
            "0,0,4",
            "-n",
            "1000",
        ],
    ] {
        let v = json(args);
        let r = first_row(&v);
        assert_eq!(r["zero_plane_points"], 0, "{args:?}");
        assert_eq!(r["evaluated"], 1000);
        assert_eq!(r["status"], "PASS");
    }
}

#[test]
fn verify_almost_positive_bazaikin_off_locus() {
    let v = json(&[
        "verify",
        "bazaikin",
        "--q",
        "1,1,1,1,-1",
        "--campaign",
        "random",
        "-n",
        "1000",
    ]);
    let r = first_row(&v);
    assert_eq!(r["zero_plane_points"], 0);
    assert_eq!(
        r["evaluated"].as_u64().unwrap() + r["skipped"].as_u64().unwrap(),
        1000
    );
}

#[test]
fn scan_family_p1_values() {
    let v = json(&["scan", "bazaikin", "--family-n", "19"]);
    let p1: Vec<i64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["p1"].as_i64().unwrap())
        .collect();
    let n: Vec<i64> = (1..=19).step_by(2).collect();
    assert_eq!(p1, n.iter().map(|n| 6 + n * n).collect::<Vec<_>>());
}

#[test]
fn verify_e0_locus_has_valid_witnesses() {
    let v = json(&[
        "verify",
        "eschenburg",
        "--p",
        "1,1,0",
        "--q",
        "0,0,2",
        "--campaign",
        "locus",
        "-n",
        "20",
    ]);
    assert_eq!(first_row(&v)["zero_plane_points"], 20);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_oracle_agrees() {
    let v = json(&[
        "verify",
        "bazaikin",
        "--q",
        "1,1,1,1,1",
        "--campaign",
        "oracle",
        "-n",
        "30",
    ]);
    assert_eq!(first_row(&v)["failures"], 0);
}

#[test]
fn deterministic_across_workers() {
    let args = [
        "verify",
        "torus",
        "--ab",
        "1,2",
        "--campaign",
        "locus",
        "-n",
        "40",
        "--seed",
        "11",
    ];
    let one = biquot(&[&args[..], &["--workers", "1", "--format", "json"]].concat());
    let four = biquot(&[&args[..], &["--workers", "4", "--format", "json"]].concat());
    assert_eq!(untimed(&one.stdout), untimed(&four.stdout));
    let again = biquot(&[&args[..], &["--workers", "4", "--format", "json"]].concat());
    assert_eq!(untimed(&four.stdout), untimed(&again.stdout));
    let text = |w: &str| biquot(&[&args[..], &["--workers", w]].concat()).stdout;
    assert_eq!(text("1"), text("3"));
}

fn write_report(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut all = args.to_vec();
    all.extend(["--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(biquot(&all).status.code(), Some(0));
    path
}

#[test]
fn report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "verify",
        "bazaikin",
        "--q",
        "1,1,1,1,-1",
        "--campaign",
        "locus",
        "-n",
        "5",
    ];
    let path = write_report(dir.path(), "r.json", &args);
    let original = std::fs::read(&path).unwrap();
    let reread = biquot(&["report", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(reread.status.code(), Some(0));
    assert_eq!(reread.stdout, original);

    let mut text_args = args.to_vec();
    text_args.extend(["--format", "text"]);
    let direct = biquot(&text_args);
    let via_report = biquot(&["report", path.to_str().unwrap()]);
    assert_eq!(direct.stdout, via_report.stdout);
}

#[test]
fn corrupted_witness_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_report(
        dir.path(),
        "r.json",
        &[
            "verify",
            "torus",
            "--ab",
            "1,1",
            "--campaign",
            "locus",
            "-n",
            "3",
        ],
    );
    let mut v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let x = v["witnesses"][0]["v"][1].as_f64().unwrap();
    v["witnesses"][0]["v"][1] = Value::from(x + 0.5);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = biquot(&["report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness 0"));
}

#[test]
fn garbage_report_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        biquot(&["report", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn env_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_biquot"))
        .args(["classify", "torus", "--l"])
        .env("BIQUOT_SEED", "42")
        .env("BIQUOT_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 42);
    // flags beat the environment
    let out = Command::new(env!("CARGO_BIN_EXE_biquot"))
        .args([
            "classify", "torus", "--l", "--seed", "5", "--format", "json",
        ])
        .env("BIQUOT_SEED", "42")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 5);
}

#[test]
fn large_seed_is_exact() {
    let v = json(&["classify", "torus", "--l", "--seed", "18446744073709551615"]);
    assert_eq!(v["config"]["seed"], "18446744073709551615");
}

#[test]
fn csv_header_order() {
    let out = biquot(&[
        "classify",
        "bazaikin",
        "--q",
        "1,1,1,3,-3",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,q,free,class,quasi_positive,boundary_n,s,p1,note")
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("bazaikin,\"[1,1,1,3,-3]\",true,QUASI_POSITIVE"));
}

#[test]
fn empty_scan_range() {
    let v = json(&["scan", "bazaikin", "--max", "0"]);
    assert!(v["results"].as_array().unwrap().is_empty());
}
