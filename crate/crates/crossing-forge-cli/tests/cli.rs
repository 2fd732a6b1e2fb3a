//! End-to-end tests of the installed binary: every subcommand, the exit-code
//! contract, strict mode, and pipeline composition via stdin/stdout.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crossing-forge"));
    // Keep the ambient environment from flipping strict mode under us.
    c.env_remove("CROSSING_FORGE_STRICT");
    c
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = bin();
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(stdin.unwrap_or("").as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal exit")
}

fn generate(family: &str) -> String {
    let out = run(&["generate", "--family", family], None);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cf-cli-{}-{name}", std::process::id()))
}

#[test]
fn bounds_reports_the_strongest_bound_exactly() {
    let out = run(&["bounds", "--n", "6", "--m", "22"], None);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 6);
    assert_eq!(v["m"], 22);
    assert_eq!(v["best"], "194/9");
    assert_eq!(v["cubicApplies"], false);
    assert_eq!(v["bounds"].as_array().unwrap().len(), 5);
    assert_eq!(v["bounds"][0]["name"], "m - 3(n-2)");
    assert_eq!(v["bounds"][0]["value"], "10");
}

#[test]
fn bounds_with_k_adds_the_density_cap() {
    let out = run(&["bounds", "--n", "6", "--m", "22", "--k", "5"], None);
    let v = stdout_json(&out);
    assert_eq!(v["report"]["best"], "194/9");
    assert_eq!(v["kPlanarDensity"]["k"], 5);
    assert_eq!(v["kPlanarDensity"]["kappaSquared"], "41209/600");
    assert_eq!(v["kPlanarDensity"]["kappaDisplay"], "8.29");

    // k = 1 has no supporting constant.
    let out = run(&["bounds", "--n", "6", "--m", "22", "--k", "1"], None);
    assert_eq!(code(&out), 1);
}

#[test]
fn bounds_text_mode_names_the_best_value() {
    let out = run(
        &["bounds", "--format", "text", "--n", "6", "--m", "22"],
        None,
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("best 194/9"));
    assert!(text.contains("cubic regime: no"));
}

#[test]
fn generate_pipes_into_detect() {
    let drawing = generate("doubled:f36");
    let out = run(&["detect", "--kind", "f36"], Some(&drawing));
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "f36");
    assert_eq!(v["count"], 2);
    for inst in v["instances"].as_array().unwrap() {
        assert_eq!(inst["boundary"].as_array().unwrap().len(), 6);
        assert_eq!(inst["innerEdges"].as_array().unwrap().len(), 8);
        assert_eq!(inst["absentBoundary"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn generate_writes_a_file_that_validates() {
    let path = temp_path("dodecahedron.json");
    let out = run(
        &[
            "generate",
            "--family",
            "optimal-2planar:dodecahedron",
            "-o",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let out = run(&["validate", path.to_str().unwrap()], None);
    let v = stdout_json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["n"], 20);
    assert_eq!(v["m"], 90);
    assert_eq!(v["crossings"], 60);
    std::fs::remove_file(path).ok();
}

#[test]
fn generated_documents_carry_the_format_version() {
    let drawing = generate("planar-cycle:5");
    let v: Value = serde_json::from_str(&drawing).unwrap();
    assert_eq!(v["version"], "crossing-forge/1");
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
}

#[test]
fn analyze_summarizes_the_doubled_pentagon() {
    let drawing = generate("doubled:f25");
    let out = run(&["analyze"], Some(&drawing));
    let v = stdout_json(&out);
    assert_eq!(v["n"], 5);
    assert_eq!(v["m"], 15);
    assert_eq!(v["crossings"], 10);
    assert_eq!(v["kPlanar"], 2);
    assert_eq!(v["twoConnected"], true);
    assert_eq!(v["census"]["0-pentagon"], 2);
    assert_eq!(v["census"]["2-triangle"], 10);
}

#[test]
fn discharge_verifies_the_doubled_hexagon() {
    let drawing = generate("doubled:f26");
    let out = run(&["discharge", "--scheme", "2p-9/2"], Some(&drawing));
    let v = stdout_json(&out);
    assert_eq!(v["scheme"], "2p-9/2");
    assert_eq!(v["alpha"], "4/9");
    assert_eq!(v["totalCharge"], "16");
    assert_eq!(v["derivedDensityCap"], "18");
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);

    let out = run(
        &["discharge", "--scheme", "2p-9/2", "--trace"],
        Some(&drawing),
    );
    let v = stdout_json(&out);
    assert_eq!(v["report"]["totalCharge"], "16");
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 5);
}

#[test]
fn violations_are_report_data_not_an_error_exit() {
    // Pentagon configurations drain below target under the full scheme;
    // the run still exits 0 and reports them as data.
    let drawing = generate("doubled:f25");
    let out = run(&["discharge", "--scheme", "2p-13/3"], Some(&drawing));
    let v = stdout_json(&out);
    let violations = v["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 2);
    for f in violations {
        let fc = v["perFace"]
            .as_array()
            .unwrap()
            .iter()
            .find(|fc| fc["face"] == *f)
            .unwrap();
        assert_eq!(fc["class"], "0-pentagon");
        assert_eq!(fc["margin"], "-12/13");
    }
}

#[test]
fn peel_traces_the_doubled_hexagon() {
    let drawing = generate("doubled:f36");
    let out = run(&["peel"], Some(&drawing));
    let v = stdout_json(&out);
    assert_eq!(v["m3"], 2);
    assert_eq!(v["pairRemoved"], 4);
    assert_eq!(v["remaining"], 16);
    assert_eq!(v["lowerBoundValue"], "22");
    assert_eq!(v["residualCheck"]["holds"], true);
    assert_eq!(v["caveats"].as_array().unwrap().len(), 1);
}

#[test]
fn invalid_inputs_exit_one() {
    assert_eq!(code(&run(&["validate"], Some("not json"))), 1);
    assert_eq!(code(&run(&["peel", "/no/such/file"], None)), 1);

    let drawing = generate("doubled:f26");
    assert_eq!(
        code(&run(&["discharge", "--scheme", "bogus"], Some(&drawing))),
        1
    );
    assert_eq!(code(&run(&["detect", "--kind", "f99"], Some(&drawing))), 1);
    assert_eq!(
        code(&run(&["generate", "--family", "doubled:f99"], None)),
        1
    );
    assert_eq!(code(&run(&["nosuchcommand"], None)), 1);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"], None)), 0);
    assert_eq!(code(&run(&["--version"], None)), 0);
}

#[test]
fn strict_mode_rejects_unknown_fields() {
    let drawing = generate("planar-cycle:4");
    let mut doc: Value = serde_json::from_str(&drawing).unwrap();
    doc["extra"] = Value::from(1);
    let with_extra = serde_json::to_string(&doc).unwrap();

    // Default: warn on stderr, still exit 0.
    let out = run(&["validate"], Some(&with_extra));
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown top-level field"));

    // Flag and environment variable both harden the parse.
    let out = run(&["validate", "--strict"], Some(&with_extra));
    assert_eq!(code(&out), 1);

    let mut cmd = bin();
    cmd.args(["validate"])
        .env("CROSSING_FORGE_STRICT", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(with_extra.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn reports_are_byte_stable_across_runs() {
    let first = run(&["bounds", "--n", "10", "--m", "120"], None);
    let second = run(&["bounds", "--n", "10", "--m", "120"], None);
    assert_eq!(first.stdout, second.stdout);

    let drawing = generate("doubled:f36");
    let first = run(&["detect", "--kind", "f36"], Some(&drawing));
    let second = run(&["detect", "--kind", "f36"], Some(&drawing));
    assert_eq!(first.stdout, second.stdout);
    // No decimals anywhere in an exact report.
    assert!(!String::from_utf8(first.stdout).unwrap().contains('.'));
}
