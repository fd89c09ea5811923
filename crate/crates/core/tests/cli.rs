use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;
use vcsp::cli::{run, Output, EXIT_BUDGET, EXIT_CLASS, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use vcsp::format::{parse_count, write_count};
use vcsp::testkit::fixtures::fixtures;

fn fixture_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", &format!("{name}.json")].iter().collect();
    p.display().to_string()
}

fn vcsp(args: &[&str]) -> (Output, Value) {
    let out = run(std::iter::once("vcsp").chain(args.iter().copied()));
    let doc: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", out.stdout));
    (out, doc)
}

#[test]
fn fixture_files_are_in_sync() {
    for (name, inst) in fixtures() {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        assert_eq!(text, write_count(&inst), "{name}");
        assert_eq!(parse_count(&text).unwrap(), inst);
    }
}

#[test]
fn check_laminar_fixture() {
    let (out, doc) = vcsp(&["check", &fixture_path("ternary-pairs"), "--property", "laminar"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc["holds"], true);
    let (_, doc) = vcsp(&["check", &fixture_path("maxsat-renamable"), "--property", "crossfree"]);
    assert_eq!(doc["holds"], false);
    assert_eq!(doc["witness"], serde_json::json!([0, 1]));
}

#[test]
fn solve_routes_to_weighted_matching() {
    let (out, doc) = vcsp(&["solve", &fixture_path("weighted-matching")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc["solver"], "weighted-matching");
    assert_eq!(doc["certificate"]["identity_holds"], true);
}

#[test]
fn two_variables_have_no_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let (out, _) = vcsp(&["gen", "random-profile", "--scheme", "maxcsp", "--profile", "", "--n", "2", "--d", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let (out, doc) = vcsp(&["classify", path.to_str().unwrap(), "--scheme", "maxcsp"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc["observed"], serde_json::json!([]));
}

#[test]
fn rename_reports_vector_or_refusal() {
    let (out, doc) = vcsp(&["rename", &fixture_path("maxsat-renamable")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc["cost"], "0");
    assert_eq!(doc["certificate"]["renaming"], serde_json::json!([false, true, false, false]));
    let (out, doc) = vcsp(&["rename", &fixture_path("nested-sat-overlap")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc["status"], "NOT_RENAMABLE");
}

#[test]
fn count_instances_solve_through_every_route() {
    let (_, doc) = vcsp(&["solve", &fixture_path("soft-gcc")]);
    assert_eq!(doc["solver"], "cfc");
    let (_, doc) = vcsp(&["solve", &fixture_path("maxsat-renamable")]);
    assert_eq!(doc["solver"], "renamed-cfc");
    let (_, doc) = vcsp(&["solve", &fixture_path("nested-sat-overlap")]);
    assert_eq!((doc["solver"].as_str(), doc["cost"].as_str()), (Some("oracle"), Some("0")));
}

#[test]
fn exit_codes() {
    let (out, doc) = vcsp(&["frobnicate"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert_eq!(doc["error"]["kind"], "usage");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format\": \"vcsp-cfc/1\", \"variables\": [").unwrap();
    assert_eq!(vcsp(&["solve-cfc", bad.to_str().unwrap()]).0.code, EXIT_INPUT);
    assert_eq!(vcsp(&["solve-cfc", "/nonexistent/file.json"]).0.code, EXIT_INPUT);
    assert_eq!(vcsp(&["classify", &fixture_path("soft-gcc"), "--scheme", "csp"]).0.code, EXIT_INPUT);

    let (out, doc) = vcsp(&["solve-cfc", &fixture_path("maxsat-renamable")]);
    assert_eq!(out.code, EXIT_CLASS);
    assert!(out.stderr.contains("cross-free"));
    assert_eq!(doc["error"]["kind"], "class");

    assert_eq!(vcsp(&["oracle", &fixture_path("laminar-3sat"), "--budget", "10"]).0.code, EXIT_BUDGET);
    let (out, doc) = vcsp(&["solve", &fixture_path("weighted-matching"), "--no-validate"]);
    assert_eq!((out.code, doc["solver"].as_str()), (EXIT_OK, Some("weighted-matching")));
}

#[test]
fn infinite_optimum_is_success() {
    let (out, doc) = vcsp(&["solve-cfc", &fixture_path("laminar-3sat")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc["cost"], "0");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("never.json");
    std::fs::write(
        &path,
        r#"{"format": "vcsp-cfc/1", "variables": [{"name": "x", "domain": ["0", "1"]}], "constant": "0",
            "sets": [{"assignments": [[0, 0], [0, 1]], "g": ["inf", "inf"]}]}"#,
    )
    .unwrap();
    let (out, doc) = vcsp(&["solve-cfc", path.to_str().unwrap()]);
    assert_eq!((out.code, doc["cost"].as_str()), (EXIT_OK, Some("inf")));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["gen", "crossfree", "--n", "5", "--d", "3", "--seed", "11"],
        vec!["gen", "random-profile", "--scheme", "min0", "--profile", ">0,0", "--n", "5", "--seed", "4"],
    ] {
        assert_eq!(vcsp(&args).0, vcsp(&args).0);
    }
    let path = fixture_path("nested-gcc");
    assert_eq!(vcsp(&["solve-cfc", &path]).0, vcsp(&["solve-cfc", &path]).0);
}

#[test]
fn binary_reads_stdin() {
    let text = std::fs::read_to_string(fixture_path("soft-gcc")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_vcsp"))
        .args(["solve-cfc", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["cost"], "0");
}

#[test]
fn version_is_json() {
    let (out, doc) = vcsp(&["--version"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc["name"], "vcsp");
}
