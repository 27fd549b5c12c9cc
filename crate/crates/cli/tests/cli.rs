use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    manifest_dir().join("fixtures").join(name).display().to_string()
}

fn golden(name: &str) -> String {
    fs::read_to_string(manifest_dir().join("tests/golden").join(name)).unwrap()
}

fn tck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tck"))
        .args(args)
        .env_remove("TCK_DEGREE_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn non_minimal_generator_is_a_validation_error() {
    let o = tck(&["compute", "4", "8", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n2 not a minimal generator"));
}

#[test]
fn other_validation_rules_are_named() {
    for (args, msg) in [
        (["compute", "5", "3", "7"], "n1 < n2 < n3"),
        (["compute", "0", "3", "7"], "positive"),
        (["compute", "3", "6", "7"], "n2 not a minimal generator"),
    ] {
        let o = tck(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(msg), "{args:?}");
    }
}

#[test]
fn scaled_example_verifies() {
    let o = tck(&["compute", "265", "280", "655", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("divided by 5"));
    assert!(text.contains("y^26 - x^25 z"));
    assert!(text.trim_end().ends_with("status     pass"));
}

#[test]
fn compute_lists_six_generators() {
    let o = tck(&["compute", "332", "345", "450"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mu         6"));
    for g in ["z^23", "y^4 z^8", "y^42 z", "y^80", "x^15 z^15", "x^30 z^7"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(&format!("{g} "))), "{g}\n{text}");
    }
}

#[test]
fn compute_json_follows_the_schema() {
    let doc: Value = serde_json::from_slice(&tck(&["compute", "160", "163", "170", "--json"]).stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["case"], "CI_R12_ZERO_EQ");
    assert_eq!(doc["mu"], 2);
    assert_eq!(doc["monomials"], serde_json::json!([[0, 0, 16]]));
    assert_eq!(doc["binomial"], serde_json::json!({"plus": [0, 10, 0], "minus": [7, 0, 3]}));
    assert_eq!(doc["witnesses"].as_array().unwrap().len(), 2);
    assert!(doc.get("verification").is_none());

    let doc: Value = serde_json::from_slice(&tck(&["compute", "20", "30", "37", "--json"]).stdout).unwrap();
    assert_eq!(doc["binomial"], Value::Null);
}

#[test]
fn compute_json_with_verification_is_pinned() {
    let o = tck(&["compute", "265", "280", "655", "--json", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("compute_265_280_655.json"));
}

#[test]
fn worked_examples_sweep_matches_golden_csv_and_jsonl() {
    let file = fixture("examples9.txt");
    for (format, name) in [("csv", "examples9.csv"), ("jsonl", "examples9.jsonl")] {
        let o = tck(&["sweep", "--triples", &file, "--verify", "--format", format]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden(name), "{format}");
    }
}

#[test]
fn sweep_without_oracle_reports_na() {
    let o = tck(&["sweep", "--triples", &fixture("examples9.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let verified = golden("examples9.csv");
    for (plain, full) in stdout(&o).lines().zip(verified.lines()).skip(1) {
        assert_eq!(plain, full.replace(",true,true,true", ",true,na,true"));
    }
}

#[test]
fn empty_filter_gives_header_only() {
    let o = tck(&["sweep", "--n3-max", "30", "--case", "NCI_GT", "--width-min", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{}\n", tck_cli::report::CSV_HEADER));
}

#[test]
fn sweep_is_byte_identical_across_worker_counts() {
    let (a, b) = (scratch("jobs1.csv"), scratch("jobs4.csv"));
    for (path, jobs) in [(&a, "1"), (&b, "4")] {
        let o = tck(&["sweep", "--n3-max", "35", "--verify", "--jobs", jobs, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let one = fs::read(&a).unwrap();
    assert!(one.len() > 1000);
    assert_eq!(one, fs::read(&b).unwrap());
}

#[test]
fn abort_flushes_rows_and_a_status_line() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tck"));
    let o = cmd
        .args(["sweep", "--triples", &fixture("examples9.txt"), "--verify", "--jobs", "2"])
        .env("TCK_DEGREE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("# status: aborted at 13,20,31"), "{text}");
    assert_eq!(text.lines().next().unwrap(), tck_cli::report::CSV_HEADER);
}

#[test]
fn bad_triple_file_is_a_validation_error() {
    let path = scratch("bad.txt");
    fs::write(&path, "13 20 31\n6 9 12\n").unwrap();
    let o = tck(&["sweep", "--triples", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.txt:2"));
}

#[test]
fn verify_gb_and_betti() {
    let o = tck(&["verify-gb", "480", "503", "1950", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["criterion_holds"], true);
    assert_eq!(doc["added"], 0);
    assert_eq!(doc["generators"].as_array().unwrap().len(), 7);

    let o = tck(&["betti", "13", "20", "31", "--taylor", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((doc["betti"]["beta0"].clone(), doc["betti"]["beta1"].clone()), (3.into(), 2.into()));
    assert_eq!(doc["taylor_agrees"], true);

    let o = tck(&["betti", "--ideal", "2,0,0", "0,2,0", "0,0,2", "--taylor"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("betti      3 3 1"));

    let o = tck(&["betti", "--ideal", "2,0"]);
    assert_eq!(o.status.code(), Some(2));
}
