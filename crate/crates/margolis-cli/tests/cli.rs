//! End-to-end tests of the `margolis` binary: output contracts, schema
//! validity, determinism, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn margolis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_margolis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = margolis(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn validator(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(name: &str, doc: &str) {
    let instance: serde_json::Value = serde_json::from_str(doc).expect("json output");
    let v = validator(name);
    if let Err(e) = v.validate(&instance) {
        panic!("{} does not validate against {}: {}", doc, name, e);
    }
}

#[test]
fn homology_json_validates_all_methods() {
    for method in ["oracle", "basis", "both"] {
        let doc = stdout(&[
            "homology",
            "--space",
            "tmf",
            "--op",
            "p21",
            "--max-degree",
            "32",
            "--method",
            method,
            "--output",
            "json",
        ]);
        assert_valid("homology.schema.json", &doc);
    }
    let doc = stdout(&[
        "homology", "--space", "bz2", "--k", "2", "--op", "p21", "--max-degree", "24",
        "--method", "both", "--output", "json",
    ]);
    assert_valid("homology.schema.json", &doc);
    let doc = stdout(&[
        "homology", "--space", "m", "--J", "1,2,3", "--op", "p21", "--method", "both",
        "--output", "json",
    ]);
    assert_valid("homology.schema.json", &doc);
}

#[test]
fn basis_json_validates_all_modes() {
    for args in [
        vec!["basis", "--n", "3", "--output", "json"],
        vec!["basis", "--J", "2,4,6,9", "--output", "json"],
        vec![
            "basis", "--space", "tmf", "--max-degree", "31", "--output", "json",
        ],
        vec![
            "basis", "--space", "smash", "--r", "2", "--max-degree", "20", "--output", "json",
        ],
        vec![
            "basis", "--space", "bz2", "--k", "2", "--max-degree", "12", "--output", "json",
        ],
    ] {
        let doc = stdout(&args);
        assert_valid("basis.schema.json", &doc);
    }
}

#[test]
fn verify_json_validates() {
    let doc = stdout(&["verify", "relations", "--output", "json"]);
    assert_valid("verify.schema.json", &doc);
    let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(parsed["pass"], serde_json::Value::Bool(true));
}

#[test]
fn identical_config_is_byte_identical() {
    let args = [
        "homology", "--space", "tmf", "--op", "p21", "--max-degree", "34", "--method", "both",
        "--output", "json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn jobs_do_not_change_output() {
    let base = stdout(&[
        "homology", "--space", "tmf", "--op", "q1", "--max-degree", "30", "--output", "json",
    ]);
    let parallel = stdout(&[
        "homology", "--space", "tmf", "--op", "q1", "--max-degree", "30", "--output", "json",
        "--jobs", "4",
    ]);
    assert_eq!(base, parallel);
}

#[test]
fn standard_basis_fixture_through_cli() {
    let doc = stdout(&["basis", "--n", "1", "--output", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
    let tx: Vec<&str> = parsed["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["tx"].as_str().unwrap())
        .collect();
    assert_eq!(tx, ["t1", "x1"]);
    let zeta: Vec<&str> = parsed["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["zeta"].as_str().unwrap())
        .collect();
    assert_eq!(zeta, ["z2^4", "z4"]);
}

#[test]
fn usage_errors_exit_2_with_error_object() {
    // --space smash without --r
    let out = margolis(&[
        "homology", "--space", "smash", "--op", "p21", "--max-degree", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("machine-readable error");
    assert_eq!(err["error"]["kind"], "usage");

    // method basis with a Q operator
    let out = margolis(&[
        "homology", "--space", "tmf", "--op", "q0", "--max-degree", "10", "--method", "basis",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // unknown flag goes through clap, also exit 2
    let out = margolis(&["homology", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // basis needs exactly one mode
    let out = margolis(&["basis", "--n", "2", "--J", "1,2"]);
    assert_eq!(out.status.code(), Some(2));

    // Q0 is not defined on the BZ/2 polynomial algebra here
    let out = margolis(&[
        "homology", "--space", "bz2", "--k", "1", "--op", "q0", "--max-degree", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("not defined"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("margolis-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q0.json");
    let _ = std::fs::remove_file(&path);
    let out = margolis(&[
        "homology", "--space", "tmf", "--op", "q0", "--max-degree", "20", "--output", "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc = std::fs::read_to_string(&path).unwrap();
    assert_valid("homology.schema.json", &doc);
}

#[test]
fn rep_width_truncates_with_marker() {
    let wide = stdout(&[
        "homology", "--space", "tmf", "--op", "q0", "--max-degree", "24", "--rep-width", "200",
    ]);
    assert!(wide.contains("z1^8*z2^4"), "expected a long representative");
    let narrow = stdout(&[
        "homology", "--space", "tmf", "--op", "q0", "--max-degree", "24", "--rep-width", "6",
    ]);
    assert!(narrow.contains("..."), "truncation marker missing");
}

#[test]
fn smash_slot_rendering_through_cli() {
    let doc = stdout(&[
        "basis", "--space", "smash", "--r", "2", "--max-degree", "16", "--output", "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
    let zetas: Vec<&str> = parsed["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["zeta"].as_str().unwrap())
        .collect();
    // degree-0 class renders as an explicit pair of unit slots
    assert!(zetas.contains(&"1|1"), "got {:?}", zetas);
    // t_{1,1} = z2^4 in slot 1 and t_{1,2} = z2^4 in slot 2 both have degree 12
    assert!(zetas.contains(&"z2^4|1"));
    assert!(zetas.contains(&"1|z2^4"));
}
