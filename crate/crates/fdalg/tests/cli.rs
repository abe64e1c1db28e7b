//! End-to-end checks of the command-line interface: exit codes, payload
//! fields, and byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fdalg"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("fdalg-cli-tests");
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON: {}\n{}",
            e,
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn zoo_then_analyze_t3() {
    let file = scratch("t3.json");
    let out = run(&["zoo", "--name", "t3", "--emit", file.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["analyze", "--algebra", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["radical_dim"], 2);
    assert_eq!(v["slf_dim"], 3);
    assert_eq!(v["symmetric"], "symmetric");
}

#[test]
fn analyze_m2_reports_basic_corner() {
    let file = scratch("m2.json");
    assert!(
        run(&["zoo", "--name", "m2", "--emit", file.to_str().unwrap()])
            .status
            .success()
    );
    let out = run(&["analyze", "--algebra", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["blocks"], 1);
    assert_eq!(v["basic_dim"], 1);
    assert_eq!(v["slf_dim"], 1);
}

#[test]
fn corrupted_tensor_exits_2_with_violation_payload() {
    let file = scratch("bad.json");
    // T3 with one structure constant perturbed: breaks associativity.
    let text = r#"{
      "dim": 3,
      "basis_names": ["1", "x", "x^2"],
      "one": ["1", "0", "0"],
      "mult": [
        [["2","0","0"],["0","1","0"],["0","0","1"]],
        [["0","1","0"],["0","0","1"],["0","0","0"]],
        [["0","0","1"],["0","0","0"],["0","0","0"]]
      ]
    }"#;
    std::fs::write(&file, text).unwrap();
    let out = run(&["analyze", "--algebra", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["error"], "invalid-input");
}

#[test]
fn non_split_algebra_exits_3() {
    let file = scratch("c3.json");
    assert!(
        run(&["zoo", "--name", "c3", "--emit", file.to_str().unwrap()])
            .status
            .success()
    );
    let out = run(&["analyze", "--algebra", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out);
    assert_eq!(v["error"], "not-split-over-q");
}

fn write_t3_inputs() -> (PathBuf, PathBuf, PathBuf, PathBuf, PathBuf) {
    let alg = scratch("pt-t3.json");
    assert!(
        run(&["zoo", "--name", "t3", "--emit", alg.to_str().unwrap()])
            .status
            .success()
    );
    let emission: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&alg).unwrap()).unwrap();
    let modules: std::collections::BTreeMap<String, serde_json::Value> = emission["modules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|pair| {
            let a = pair.as_array().unwrap();
            (a[0].as_str().unwrap().to_string(), a[1].clone())
        })
        .collect();
    let phi = scratch("pt-phi.json");
    std::fs::write(&phi, r#"{"values": ["0", "0", "1"]}"#).unwrap();
    let module = scratch("pt-w.json");
    std::fs::write(&module, serde_json::to_string(&modules["regular"]).unwrap()).unwrap();
    let simple = scratch("pt-simple.json");
    std::fs::write(
        &simple,
        serde_json::to_string(&modules["simple_0"]).unwrap(),
    )
    .unwrap();
    let endo = scratch("pt-endo.json");
    std::fs::write(&endo, r#"[["0","0","1"],["0","0","0"],["0","0","0"]]"#).unwrap();
    (alg, phi, module, simple, endo)
}

#[test]
fn pseudotrace_happy_path() {
    let (alg, phi, module, _simple, endo) = write_t3_inputs();
    let out = run(&[
        "pseudotrace",
        "--algebra",
        alg.to_str().unwrap(),
        "--phi",
        phi.to_str().unwrap(),
        "--module",
        module.to_str().unwrap(),
        "--endo",
        endo.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = stdout_json(&out);
    assert_eq!(v["interlocked"], true);
    assert_eq!(v["pseudotrace"], "1");
    assert_eq!(v["phi_w"], "1");
    assert_eq!(v["equal"], true);
    assert_eq!(v["multiplicities"][0], 1);
    assert_eq!(v["omega_report"]["weak_ok"], true);
}

#[test]
fn pseudotrace_on_simple_module_exits_4() {
    let (alg, phi, _module, simple, _endo) = write_t3_inputs();
    let endo = scratch("pt-endo1.json");
    std::fs::write(&endo, r#"[["0"]]"#).unwrap();
    let out = run(&[
        "pseudotrace",
        "--algebra",
        alg.to_str().unwrap(),
        "--phi",
        phi.to_str().unwrap(),
        "--module",
        simple.to_str().unwrap(),
        "--endo",
        endo.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let v = stdout_json(&out);
    assert_eq!(v["error"], "not-projective");
}

#[test]
fn pseudotrace_hypothesis_violation_exits_5() {
    // Zigzag with phi(e1) = 1 breaks a context hypothesis by name.
    let alg = scratch("pt-n2.json");
    assert!(
        run(&["zoo", "--name", "n2", "--emit", alg.to_str().unwrap()])
            .status
            .success()
    );
    let emission: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&alg).unwrap()).unwrap();
    let regular = emission["modules"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p[0] == "regular")
        .unwrap()[1]
        .clone();
    let module = scratch("pt-n2-w.json");
    std::fs::write(&module, serde_json::to_string(&regular).unwrap()).unwrap();
    let phi = scratch("pt-n2-phi.json");
    std::fs::write(&phi, r#"{"values": ["1", "0", "0", "0", "1", "1"]}"#).unwrap();
    let endo = scratch("pt-n2-endo.json");
    let identity: Vec<Vec<String>> = (0..6)
        .map(|r| {
            (0..6)
                .map(|c| if r == c { "1".into() } else { "0".into() })
                .collect()
        })
        .collect();
    std::fs::write(&endo, serde_json::to_string(&identity).unwrap()).unwrap();
    let out = run(&[
        "pseudotrace",
        "--algebra",
        alg.to_str().unwrap(),
        "--phi",
        phi.to_str().unwrap(),
        "--module",
        module.to_str().unwrap(),
        "--endo",
        endo.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(5),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = stdout_json(&out);
    assert_eq!(v["error"], "context-hypothesis-failed");
    assert!(v["detail"].as_str().unwrap().contains("idempotent"));
}

#[test]
fn verify_structure_suite_passes() {
    let out = run(&["verify", "--suite", "structure"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v[0]["suite"], "structure");
    for check in v[0]["checks"].as_array().unwrap() {
        assert_eq!(check["status"], "pass");
    }
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_user_algebra_interlocked() {
    let file = scratch("user-t3.json");
    assert!(
        run(&["zoo", "--name", "t3", "--emit", file.to_str().unwrap()])
            .status
            .success()
    );
    let out = run(&[
        "verify",
        "--suite",
        "interlocked",
        "--algebra",
        file.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = stdout_json(&out);
    let checks = v[0]["checks"].as_array().unwrap();
    assert!(
        checks.len() >= 4,
        "expected several module instances, got {}",
        checks.len()
    );
}

#[test]
fn unknown_zoo_name_exits_2() {
    let out = run(&["zoo", "--name", "q8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_output_is_deterministic() {
    let file = scratch("det-n2.json");
    assert!(
        run(&["zoo", "--name", "n2", "--emit", file.to_str().unwrap()])
            .status
            .success()
    );
    let first = run(&["analyze", "--algebra", file.to_str().unwrap()]);
    let second = run(&["analyze", "--algebra", file.to_str().unwrap()]);
    assert_eq!(
        first.stdout, second.stdout,
        "payload must be byte-for-byte deterministic"
    );
    assert!(first.stderr.is_empty());
    // --meta writes to stderr only; stdout stays identical.
    let with_meta = bin()
        .args(["--meta", "analyze", "--algebra", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(first.stdout, with_meta.stdout);
    assert!(!with_meta.stderr.is_empty());
}

#[test]
fn slf_command_reports_basis() {
    let file = scratch("slf-n2.json");
    assert!(
        run(&["zoo", "--name", "n2", "--emit", file.to_str().unwrap()])
            .status
            .success()
    );
    let out = run(&["slf", "--algebra", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["slf_dim"], 3);
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn search_budget_env_is_honored() {
    // A budget of zero starves the symmetric-form search, flipping the
    // verdict to inconclusive without affecting anything else.
    let file = scratch("budget-t3.json");
    assert!(
        run(&["zoo", "--name", "t3", "--emit", file.to_str().unwrap()])
            .status
            .success()
    );
    let out = bin()
        .env("FDALG_SEARCH_BUDGET", "0")
        .args(["analyze", "--algebra", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["symmetric"], "inconclusive");
}
