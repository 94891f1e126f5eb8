//! End-to-end tests driving the compiled binary against the fixture corpus.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mukai-wbn"))
        .args(args)
        .env_remove("MUKAI_WBN_BOX")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn wbn_exit_codes_follow_the_verdict() {
    // Failure on the worked example.
    let out = run(&["wbn", "--surface", &fixture("e_times_e.json"), "6; -5,18,7; 0"]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("status: fails"));
    assert!(text.contains("v1=[3; -2,9,3; 1]"));
    assert!(text.contains("v2=[3; -3,9,4; -1]"));

    // Holds on the rank-one fixture with zero profile.
    let out = run(&["wbn", "--surface", &fixture("rank1_h4.json"), "2; 1; 0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("profile: h0=0 h1=0 h2=0"));

    // A user-limited box cannot decide the rank-3 case.
    let out = run(&[
        "wbn",
        "--surface",
        &fixture("e_times_e.json"),
        "6; -5,18,7; 0",
        "--bound",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("status: undetermined"));
}

#[test]
fn wbn_rejects_malformed_input() {
    let dir = std::env::temp_dir().join("mukai-wbn-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad_gram.json");
    std::fs::write(
        &bad,
        r#"{"schema_version":1,"rank":2,"gram":[[2,1]],"ample":[1,0]}"#,
    )
    .unwrap();
    let out = run(&["wbn", "--surface", bad.to_str().unwrap(), "2; 1,0; 0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "wbn",
        "--surface",
        &fixture("rank1_h4.json"),
        "2; 1,0; 0",
    ]);
    assert_eq!(out.status.code(), Some(2), "arity mismatch must exit 2");
}

#[test]
fn wbn_json_matches_golden_output() {
    let args = [
        "wbn",
        "--surface",
        &fixture("e_times_e.json"),
        "6; -5,18,7; 0",
        "--json",
    ];
    let normalize = |out: &Output| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(stdout(out).trim()).unwrap();
        let obj = v.as_object_mut().unwrap();
        obj.remove("elapsed_ms");
        obj.insert("surface".into(), serde_json::json!("FIXTURE"));
        v
    };
    let first = normalize(&run(&args));
    let second = normalize(&run(&args));
    // Schema-stable across runs.
    assert_eq!(first, second);
    let golden: serde_json::Value = serde_json::from_str(include_str!("golden/wbn_worked_example.json")).unwrap();
    assert_eq!(first, golden);
}

#[test]
fn env_variable_overrides_default_box() {
    let out = Command::new(env!("CARGO_BIN_EXE_mukai-wbn"))
        .args([
            "wbn",
            "--surface",
            &fixture("e_times_e.json"),
            "6; -5,18,7; 0",
            "--json",
        ])
        .env("MUKAI_WBN_BOX", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["box"], serde_json::json!(2));
}

#[test]
fn printed_mukai_vectors_reparse() {
    let out = run(&[
        "wbn",
        "--surface",
        &fixture("e_times_e.json"),
        "6; -5,18,7; 0",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    for key in ["v1", "v2"] {
        let text = v["certificate"]["decomposition"][key].as_str().unwrap();
        let parsed = mukai_wbn::fixture::parse_mukai_vector(text, 3).unwrap();
        assert_eq!(mukai_wbn::fixture::format_mukai_vector(&parsed), text);
    }
}

#[test]
fn pell_command() {
    let out = run(&["pell", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "t=3 u=2");
    let out = run(&["pell", "--d", "5", "--four"]);
    assert_eq!(stdout(&out).trim(), "t=3 u=1");
    // Squares are input errors.
    let out = run(&["pell", "--d", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn embed_u_command() {
    let out = run(&["embed-u", "--form", "2,2,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(s,x,t,y)=(1,1,0,2)"), "{text}");
    // Nonsquare: verdict, not an error.
    let out = run(&["embed-u", "--form", "2,3,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("nonsquare"));
    // Odd diagonal is a hard input error.
    let out = run(&["embed-u", "--form", "1,1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexamples_stream_worked_values() {
    let out = run(&[
        "counterexamples",
        "--surface",
        &fixture("ex46_m2.json"),
        "--count",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].contains("B^2=-14"), "{text}");
    assert!(lines[1].contains("B^2=-94"), "{text}");

    // The general stream on the same lattice still produces verified records.
    let out = run(&[
        "counterexamples",
        "--surface",
        &fixture("ex46_m2.json"),
        "--count",
        "1",
        "--general",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(v["record"]["provenance"]["kind"], "pell-orbit");

    // Square-discriminant fixtures have no stream.
    let out = run(&[
        "counterexamples",
        "--surface",
        &fixture("rank2_square4.json"),
        "--count",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_streams_records() {
    let out = run(&[
        "decompose",
        "--surface",
        &fixture("e_times_e.json"),
        "6; -5,18,7; 0",
        "--box",
        "9",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7, "one record per line");
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["command"], "decompose");
        assert!(v["decomposition"]["v1"].is_string());
    }
}

#[test]
fn ulrich_command() {
    let out = run(&[
        "ulrich",
        "--surface",
        &fixture("rank1_h4.json"),
        "2; 3; 8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("conclusion: ulrich-generic"));

    let out = run(&[
        "ulrich",
        "--surface",
        &fixture("e_times_e.json"),
        "6; 7,48,7; 120",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["conclusion"], "no-ulrich-via-theorem");
    assert_eq!(v["untwisted"], "6; -5,18,7; 0");

    let out = run(&[
        "ulrich",
        "--surface",
        &fixture("rank1_h4.json"),
        "--enumerate-r",
        "2",
        "--enumerate-m",
        "1",
    ]);
    assert!(stdout(&out).contains("2; 3; 8"));
    let out = run(&[
        "ulrich",
        "--surface",
        &fixture("rank1_h4.json"),
        "--enumerate-r",
        "3",
        "--enumerate-m",
        "1",
    ]);
    assert!(stdout(&out).contains("none"));
}

#[test]
fn walls_command() {
    let out = run(&[
        "walls",
        "--surface",
        &fixture("e_times_e.json"),
        "--v",
        "6; -5,18,7; 0",
        "--candidate",
        "3; -2,9,3; 1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["is_wall"], true);
    assert_eq!(v["totally_semistable_candidate"], true);

    let out = run(&[
        "walls",
        "--surface",
        &fixture("e_times_e.json"),
        "--v",
        "6; -5,18,7; 0",
        "--candidate",
        "3; -2,9,3; 1",
        "--orbit-count",
        "2",
        "--twist",
        "0,0,0",
        "--basis",
        "-5,18,7;3,0,-3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["orbit"]["elements"].as_array().unwrap().len(), 2);
}
