use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn popmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popmatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_exit_codes() {
    let out = popmatch(&["verify", &fixture("i1.txt"), "--matching", &fixture("i1.matching")]);
    assert_eq!(code(&out), 0);
    let out = popmatch(&["verify", &fixture("i2.txt"), "--matching", "a1 h1; a2 h2; a3 h3"]);
    assert_eq!(code(&out), 1);
    let out = popmatch(&["verify", &fixture("i2.txt"), "--matching", "a1 h2"]);
    assert_eq!(code(&out), 1, "unlisted applicants get their last resorts");
}

#[test]
fn verify_reports_requested_methods_only() {
    let out = popmatch(&[
        "verify",
        &fixture("i3.txt"),
        "--matching",
        "a1 h2; a2 h1",
        "--method",
        "structural",
        "--method",
        "bruteforce",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let methods: Vec<&str> = report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["structural", "bruteforce"]);
    let certs = report["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["method"], "structural");
    assert_eq!(certs[0]["objective"], 2);
    assert_eq!(report["command"], "verify");
    assert_eq!(report["instance_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn digest_depends_on_content_not_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i1.txt");
    std::fs::write(
        &path,
        "# reformatted\nproblem: ha\n\nleft:  a1   a2\nright: h1 h2\npref a1: h1>h2\npref a2: h1 > h2 # same\n",
    )
    .unwrap();
    let digest = |p: &str| {
        json(&popmatch(&["verify", p, "--matching", "a1 h1; a2 h2", "--json"]))["instance_digest"].clone()
    };
    assert_eq!(digest(path.to_str().unwrap()), digest(&fixture("i1.txt")));
}

#[test]
fn certify_i1_emits_constructed_dual() {
    let out = popmatch(&["certify", &fixture("i1.txt"), "--matching", "a1 h1; a2 h2"]);
    assert_eq!(code(&out), 0);
    let c = &json(&out)["certificate"];
    for (name, val) in [("a1", 0), ("a2", 1), ("h1", 1), ("h2", 0), ("l(a1)", 0), ("l(a2)", 0)] {
        assert_eq!(c["y"][name], val, "{name}");
    }
    assert_eq!(c["objective"], 2);
    assert_eq!(c["primal_value"], 2);
    assert_eq!(c["cs_ok"], true);
}

#[test]
fn certify_i4_stable_matching() {
    let out = popmatch(&["certify", &fixture("i4.txt"), "--matching", &fixture("i4.matching")]);
    assert_eq!(code(&out), 0);
    let c = &json(&out)["certificate"];
    assert!(c["y"].as_object().unwrap().values().all(|v| v == 1));
    assert_eq!(c["objective"], 4);
}

#[test]
fn certify_unpopular_matchings() {
    let out = popmatch(&["certify", &fixture("i2.txt"), "--matching", &fixture("i2.matching")]);
    assert_eq!(code(&out), 1);
    let body = json(&out);
    assert_eq!(body["popular"], false);
    assert_eq!(body["rival"]["kind"], "rival");

    let out = popmatch(&["certify", &fixture("i4.txt"), "--matching", "u1 v2"]);
    assert_eq!(code(&out), 1);
    let body = json(&out);
    assert_eq!(body["certificate"]["kind"], "witness");
    assert!(body["improvement"]["gain"].as_i64().unwrap() >= 1);
}

#[test]
fn find_results() {
    let out = popmatch(&["find", &fixture("i2.txt")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("no popular matching"));
    let out = popmatch(&["find", &fixture("i4.txt"), "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["matching"], "u1 v1; u2 v2");
    assert_eq!(code(&popmatch(&["find", &fixture("i1.txt")])), 0);
    assert_eq!(code(&popmatch(&["find", &fixture("i3.txt")])), 0);
}

#[test]
fn cross_check_json_lists_every_candidate() {
    let out = popmatch(&["cross-check", &fixture("i4.txt"), "--json"]);
    assert_eq!(code(&out), 0);
    let entries = json(&out)["verdicts"].as_array().unwrap().clone();
    assert_eq!(entries.len(), 7);
    for e in &entries {
        let v = e["verdicts"].as_array().unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|x| x["popular"] == v[0]["popular"]));
    }
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "problem: ha\nleft: a1\nright: h1\npref a1 h1\n").unwrap();
    let bad = bad.to_str().unwrap();
    let out = popmatch(&["verify", bad, "--matching", "a1 h1"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(code(&popmatch(&["find", "/nonexistent/instance.txt"])), 3);
    assert_eq!(code(&popmatch(&["verify", &fixture("i1.txt"), "--matching", "a1 h9"])), 3);
    assert_eq!(code(&popmatch(&["verify", &fixture("i1.txt")])), 3);
    assert_eq!(code(&popmatch(&["frobnicate"])), 3);
    assert_eq!(
        code(&popmatch(&["verify", &fixture("i2.txt"), "--matching", "a1 h1", "--guard-edges", "3"])),
        3
    );
    assert_eq!(code(&popmatch(&["gen", "--variant", "ha", "--left", "3", "--right", "3", "--tie-prob", "0.5"])), 3);
    assert_eq!(code(&popmatch(&["--help"])), 0);
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let args = ["gen", "--variant", "smi", "--left", "3", "--right", "2", "--seed", "9"];
    let a = popmatch(&args);
    let b = popmatch(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(popmatch::format::parse_instance(&text).is_ok());
}

#[test]
fn fuzz_summaries_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let repro = dir.path().to_str().unwrap();
    let args = ["fuzz", "--variant", "ha", "--seed", "1", "--count", "200", "--repro-dir", repro];
    let a = popmatch(&args);
    let b = popmatch(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    let out = popmatch(&["fuzz", "--variant", "smi", "--seed", "1", "--count", "40", "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["checks"]["equivalence"]["failed"], 0);
}

#[test]
fn fuzz_rejects_oversized_campaigns() {
    let out = popmatch(&["fuzz", "--variant", "ha", "--max-left", "5", "--max-right", "5"]);
    assert_eq!(code(&out), 3);
}
