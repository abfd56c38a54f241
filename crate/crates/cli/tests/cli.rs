use std::path::Path;
use std::process::{Command, Output};

fn tansec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tansec")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scheme_file(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&tansec(&["secant-table", "--amax", "0"])), 1);
    assert_eq!(code(&tansec(&["secant-table", "--amax", "x"])), 1);
    assert_eq!(code(&tansec(&["verify", "everything"])), 1);
    assert_eq!(code(&tansec(&["frobnicate"])), 1);
    assert_eq!(code(&tansec(&["--prime", "10", "verify", "small"])), 1);
    // the prime must exceed twice the degree bound
    assert_eq!(code(&tansec(&["--prime", "23", "verify", "small"])), 1);
    assert_eq!(code(&tansec(&["--prime", "29", "--trials", "0", "verify", "small"])), 1);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&tansec(&["--help"])), 0);
    assert_eq!(code(&tansec(&["--version"])), 0);
    assert_eq!(code(&tansec(&["verify", "--help"])), 0);
}

#[test]
fn secant_table_csv_header_and_rows() {
    let out = tansec(&["secant-table", "--amax", "3", "--bmax", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,s,expected_hf,computed_hf,defect,trials,seed"));
    // (2,1): 2 rows, (2,2): 2, (3,1): 2, (3,2): 3
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.contains(&"3,2,3,12,12,0,3,0"));
}

#[test]
fn secant_table_json_small() {
    let out = tansec(&["secant-table", "--amax", "2", "--bmax", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows = json_of(&out);
    let cell = rows.as_array().unwrap().iter().find(|r| r["a"] == 2 && r["b"] == 2 && r["s"] == 2).unwrap();
    assert_eq!(cell["defect"], 0);
    assert_eq!(cell["computed_hf"], 9);
    assert_eq!(cell["prime"], 2147483647u64);
}

#[test]
fn secant_table_up_to_ten_has_no_defect() {
    let out = tansec(&["secant-table", "--amax", "10", "--bmax", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut expected_rows = 0;
    for a in 1u32..=10 {
        for b in 1..=a {
            if a * b > 1 {
                expected_rows += ((a + 1) * (b + 1)).div_ceil(5);
            }
        }
    }
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), expected_rows as usize);
    assert!(rows.iter().all(|r| r.split(',').nth(5) == Some("0")));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["--seed", "17", "--trials", "2", "secant-table", "--amax", "5"];
    assert_eq!(tansec(&args).stdout, tansec(&args).stdout);
    let args = ["--seed", "17", "--format", "json", "verify", "transfer", "--samples", "5"];
    assert_eq!(tansec(&args).stdout, tansec(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = tansec(&["secant-table", "--amax", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("a,b,s,expected_hf,computed_hf,defect,trials,seed\n"));
}

#[test]
fn hf_empty_scheme() {
    let dir = tempfile::tempdir().unwrap();
    let p = scheme_file(dir.path(), "empty.json", r#"{"ambient": "plane", "components": []}"#);
    let out = tansec(&["--format", "json", "hf", "--scheme", &p, "--degree", "3"]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!((r["rank"].as_u64(), r["dim_linsys"].as_u64()), (Some(0), Some(10)));
}

#[test]
fn hf_five_double_points_are_superabundant() {
    let dir = tempfile::tempdir().unwrap();
    let fat = r#"{"type": "fat", "m": 2, "support": "rand"}"#;
    let json = format!(r#"{{"ambient": "plane", "components": [{fat}, {fat}, {fat}, {fat}, {fat}]}}"#);
    let p = scheme_file(dir.path(), "five.json", &json);
    let out = tansec(&["--format", "json", "hf", "--scheme", &p, "--degree", "4"]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["dim_linsys"], 1);
    assert_eq!(r["expected_dim"], 0);
    assert_eq!(r["status"], "superabundant_anomaly");
    // CSV carries the same status
    let csv = stdout(&tansec(&["hf", "--scheme", &p, "--degree", "4"]));
    assert!(csv.lines().nth(1).unwrap().contains(",superabundant_anomaly,"));
}

#[test]
fn hf_biprojective_point() {
    let dir = tempfile::tempdir().unwrap();
    let p = scheme_file(
        dir.path(),
        "bi.json",
        r#"{"ambient": "p1xp1", "components": [{"type": "32bi", "support": [[1, 2], [1, 3]], "cosupport": [[0, 1], [1, 1]]}]}"#,
    );
    let out = tansec(&["--format", "json", "hf", "--scheme", &p, "--bidegree", "2,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["rank"], 5);
}

#[test]
fn hf_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = scheme_file(dir.path(), "bad.json", r#"{"ambient": "plane", "components": [ "#);
    let out = tansec(&["hf", "--scheme", &bad, "--degree", "2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
    let plane = scheme_file(dir.path(), "plane.json", r#"{"ambient": "plane", "components": []}"#);
    assert_eq!(code(&tansec(&["hf", "--scheme", &plane, "--bidegree", "2,2"])), 1);
    assert_eq!(code(&tansec(&["hf", "--scheme", &plane])), 1);
    assert_eq!(code(&tansec(&["hf", "--scheme", "/nonexistent.json", "--degree", "1"])), 1);
}

#[test]
fn verify_suites_pass() {
    for target in ["degeneration", "residue-example", "colon", "small", "collinear", "horace-step"] {
        let out = tansec(&["--format", "json", "verify", target]);
        assert_eq!(code(&out), 0, "{target}");
        assert_eq!(json_of(&out)["passed"], true);
    }
    let out = tansec(&["--format", "json", "verify", "residue-example"]);
    assert_eq!(json_of(&out)["checks"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_main_up_to_ten() {
    assert_eq!(code(&tansec(&["verify", "main", "--amax", "10", "--bmax", "10"])), 0);
}
