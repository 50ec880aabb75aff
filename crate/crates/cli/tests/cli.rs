use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn theta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta")).args(args).env_remove(theta_cli::CACHE_ENV).output().unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:#?}");
}

#[test]
fn tables_match_the_golden_files_byte_for_byte() {
    for (args, file) in [
        (&["tables"][..], "tables.json"),
        (&["tables", "--table", "1", "--format", "csv"][..], "table1.csv"),
        (&["tables", "--table", "2", "--format", "csv"][..], "table2.csv"),
    ] {
        let out = theta(args);
        assert_eq!(out.status.code(), Some(0));
        let expected = std::fs::read(golden(file)).unwrap();
        assert!(out.stdout == expected, "{file} differs from the golden file");
        assert_eq!(theta(args).stdout, out.stdout, "{file} is not deterministic");
    }
}

#[test]
fn table_filter_for_type_c() {
    let v = json(&theta(&["tables", "--family", "C", "--r", "2", "--s", "2"]));
    let rows = v["highest_weight"].as_array().unwrap();
    let j = |p: u64, q: u64| rows.iter().find(|r| r["p"] == p && r["q"] == q).unwrap()["j"].as_u64().unwrap();
    // 2(rs − (r−p)(s−q)) at r = s = 2.
    assert_eq!((j(1, 0), j(1, 1), j(2, 2)), (4, 6, 8));
    assert!(rows.iter().all(|r| r["family"] == "C"));
}

#[test]
fn theta_spectrum_of_the_even_oscillator() {
    let out = theta(&["theta-spectrum", "C:sp(2)/o(1,0)", "--char", "trivial", "--cutoff", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid(&v);
    let labels: Vec<&str> = v["series"]["entries"].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["1/2", "5/2", "9/2", "13/2", "17/2"]);
    assert_eq!(out.stdout, std::fs::read(golden("theta_spectrum_sp2_o1.json")).unwrap());
    let csv = theta(&["theta-spectrum", "C:sp(2)/o(1)", "--cutoff", "4", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "degree,label,multiplicity\n0,1/2,1\n2,5/2,1\n4,9/2,1\n");
}

#[test]
fn every_subcommand_validates_against_the_schema() {
    let runs: &[&[&str]] = &[
        &["theta-spectrum", "A:u(1,1)/u(1)", "--cutoff", "4", "--oracle"],
        &["verify-howe", "C:sp(2)/o(1)", "--k", "1"],
        &["verify-ugk", "--outer", "C:sp(2)/o(1)", "--inner", "C:sp(2)/o(1)", "--k", "1", "--k-prime", "1"],
        &["verify-scalar", "--outer", "C:sp(2)/o(1)", "--inner", "C:sp(2)/o(1)", "--tau", "1/2", "--k", "2"],
        &["verify-infchar", "C:sp(2)/o(1)", "--k-prime", "1"],
        &["transfer-e1", "--n", "2", "--m", "1", "--j", "1", "--cutoff", "4"],
        &["transfer-ex2", "--p", "2", "--q", "2", "--k", "1", "--r", "1", "--cutoff", "4"],
        &["euler-sum", "--n", "2", "--m", "1", "--cutoff", "4"],
        &["verify-howe", "C:sp(8)/o(3)", "--k", "3"],
    ];
    for args in runs {
        let out = theta(args);
        let v = json(&out);
        assert_valid(&v);
        let code = out.status.code().unwrap();
        let expected = match v["verdict"].as_str() {
            Some("match") => 0,
            Some("mismatch") => 1,
            _ => 2,
        };
        assert_eq!(code, expected, "{args:?}");
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(theta(&["verify-howe", "C:sp(2)/o(1", "--k", "1"]).status.code(), Some(64));
    assert_eq!(theta(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(theta(&["tables", "--format", "csv"]).status.code(), Some(64));
    assert_eq!(theta(&["verify-howe", "C:sp(2)/o(1)", "--format", "csv"]).status.code(), Some(64));
    assert_eq!(theta(&["transfer-e1", "--n", "3", "--m", "1", "--j", "1"]).status.code(), Some(64));
    assert_eq!(theta(&["transfer-ex2", "--p", "2", "--q", "2", "--k", "1", "--r", "2"]).status.code(), Some(64));
    let guard = theta(&["verify-howe", "C:sp(8)/o(3)", "--k", "3"]);
    assert_eq!(guard.status.code(), Some(2));
    assert_eq!(json(&guard)["verdict"], "inconclusive");
    assert_eq!(theta(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_go_to_files_and_the_cache() {
    let dir = std::env::temp_dir().join(format!("theta-cli-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("howe.json");
    let cache = dir.join("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_theta"))
            .args(["verify-howe", "A:u(1,1)/u(1)", "--k", "1", "--out"])
            .arg(&out)
            .env(theta_cli::CACHE_ENV, &cache)
            .output()
            .unwrap()
    };
    assert_eq!(run().status.code(), Some(0));
    let first = std::fs::read(&out).unwrap();
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    assert_eq!(run().status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), first);
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["relation"], "equal");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_lists_checks() {
    let out = theta(&["verify-howe", "C:sp(2)/o(1)", "--k", "1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("howe_image: match\n"), "{text}");
    assert!(text.contains("[pass] image equals the invariants"));
}
