use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn tl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tl"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("tl runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn value(stdout: &str) -> Value {
    serde_json::from_str::<Value>(stdout).expect("json output")["value"].clone()
}

#[test]
fn fixture_values() {
    for (cmd, file, want) in [
        ("tau-sym", "fixtures/hyperbolic.json", 1),
        ("sign", "fixtures/e8.json", 8),
        ("chi", "fixtures/round.json", 0),
        ("tau-sym", "fixtures/round.json", 1),
    ] {
        let (code, out, err) = tl(&["compute", cmd, file]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(value(&out), Value::from(want), "{cmd} {file}");
    }
}

#[test]
fn results_carry_provenance() {
    let (_, out, _) = tl(&["compute", "chi", "fixtures/round.json"]);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let bytes = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/round.json")).unwrap();
    assert_eq!(doc["provenance"]["input_sha256"], tl_core::document::sha256_hex(&bytes));
    assert_eq!(doc["provenance"]["command"], "chi");
    assert_eq!(doc["provenance"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn tensor_of_unit_and_hyperbolic() {
    let (code, out, _) = tl(&["compute", "tensor", "fixtures/unit.json", "--with", "fixtures/hyperbolic.json"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("tl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("product.json");
    std::fs::write(&path, serde_json::to_string(&value(&out)).unwrap()).unwrap();
    let (code, out, _) = tl(&["compute", "tau-sym", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&out), Value::from(1));
}

#[test]
fn filtered_commands() {
    let (code, out, _) = tl(&["compute", "theta", "fixtures/tensor2.json", "--dim", "1"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out)["torsion"], Value::from(0));
    let (code, out, _) = tl(&["compute", "graded", "fixtures/tensor2.json"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out)["pieces"].as_array().unwrap().len(), 3);
    let (code, _, _) = tl(&["compute", "amalgamate", "fixtures/tensor2.json"]);
    assert_eq!(code, 0);
    let (code, _, _) = tl(&["compute", "dual", "fixtures/tensor2.json", "--dim", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(tl(&["validate", "fixtures/e8.json"]).0, 0);
    assert_eq!(tl(&["validate", "Cargo.toml"]).0, 2);
    assert_eq!(tl(&["validate", "no-such-file.json"]).0, 2);
    assert_eq!(tl(&["compute", "frobnicate", "fixtures/e8.json"]).0, 2);
    assert_eq!(tl(&["compute", "dual", "fixtures/tensor2.json"]).0, 2);
    assert_eq!(tl(&["verify", "bogus"]).0, 2);
    assert_eq!(tl(&["compute", "tau", "fixtures/round.json"]).0, 2);
    assert_eq!(tl(&[]).0, 2);
}

#[test]
fn verify_writes_a_deterministic_report() {
    let dir = std::env::temp_dir().join(format!("tl-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("r{i}.json"));
        let (code, out, _) =
            tl(&["verify", "signmod4", "--trials", "5", "--seed", "7", "--max-rank", "3", "--report", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS signmod4"));
        let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        r["elapsed_secs"] = Value::Null;
        reports.push(r);
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0]["seed"], 7);
    assert_eq!(reports[0]["pass"], true);
}
