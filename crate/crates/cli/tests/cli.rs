use std::process::{Command, Output};

fn nilvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn classify_json(n: &str, a: &str, b: &str) -> serde_json::Value {
    let out = nilvar(&["classify", "--n", n, "--a", a, "--b", b, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_str(&stdout(&out)).expect("json")
}

#[test]
fn classify_five() {
    let v = classify_json("5", "3", "3");
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 4);
    assert!(comps.iter().all(|c| c["dim"] == 20));
    assert_eq!(comps.iter().filter(|c| c["kind"] == "regular").count(), 2);
    assert!(comps.iter().any(|c| c["kind"] == "orbit"
        && c["side"] == "semi-projective"
        && c["strings"] == serde_json::json!(["xxyy"])));
}

#[test]
fn classify_three() {
    let v = classify_json("3", "3", "3");
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|c| c["dim"] == 7));
}

#[test]
fn classify_one_is_flagged() {
    let v = classify_json("1", "3", "3");
    assert_eq!(v["components"], serde_json::json!([{"kind": "point", "dim": 0}]));
    assert!(v["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().contains("n = 1")));
}

#[test]
fn parameters_are_normalized() {
    let v = classify_json("3", "7", "3");
    assert_eq!(
        (v["a"].clone(), v["requested"]["a"].clone()),
        (serde_json::json!(3), serde_json::json!(7))
    );
}

#[test]
fn table_and_json_agree() {
    let v = classify_json("12", "3", "3");
    let table = stdout(&nilvar(&["classify", "--n", "12", "--a", "3", "--b", "3"]));
    let rows: Vec<&str> = table.lines().skip(1).filter(|l| !l.starts_with("note:")).collect();
    let comps = v["components"].as_array().unwrap();
    assert_eq!(rows.len(), comps.len());
    for (row, c) in rows.iter().zip(comps) {
        assert!(row.trim_end().ends_with(&format!(" {}", c["dim"])), "{row}");
    }
    assert!(table.contains("(xxy,4) "));
    assert!(table.contains("xxyy ⊕ xxyxyy "));
}

#[test]
fn json_is_stable() {
    let first = nilvar(&["classify", "--n", "10", "--format", "json"]);
    let second = nilvar(&["classify", "--n", "10", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn hom_and_ext() {
    let out = stdout(&nilvar(&["hom", "--c1", "xxy", "--c2", "xyxx"]));
    assert!(out.starts_with("dim Hom(M(xxy), M(xyxx)) = 5"));
    assert_eq!(out.lines().filter(|l| l.starts_with('f')).count(), 5);
    assert_eq!(
        stdout(&nilvar(&["ext", "--c", "xxyy", "--d", "xxyy"])).trim(),
        "vanishes: true"
    );
    let j: serde_json::Value = serde_json::from_str(&stdout(&nilvar(&[
        "ext", "--c", "xxyxyxyy", "--d", "xxyxyxyy", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(j["vanishes"], false);
}

#[test]
fn module_output() {
    let out = nilvar(&["module", "--string", "xxyxy", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["jordan_pair"], serde_json::json!([[3, 2, 1], [2, 2, 1, 1]]));
    assert_eq!(v["stats"]["regular"], false);
    let band = nilvar(&["module", "--band", "xxy", "--lambda", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&band)).unwrap();
    assert_eq!(v["stats"]["regular"], true);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        nilvar(&["classify", "--n", "5", "--format", "xml"]).status.code(),
        Some(1)
    );
    assert_eq!(nilvar(&["classify"]).status.code(), Some(1));
    assert_eq!(nilvar(&["hom", "--c1", "xxx", "--c2", "x"]).status.code(), Some(1));
    assert_eq!(nilvar(&["classify", "--n", "4", "--a", "1"]).status.code(), Some(1));
    assert_eq!(nilvar(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_quick_is_deterministic() {
    let first = nilvar(&["verify", "--level", "quick", "--seed", "7"]);
    let second = nilvar(&["verify", "--level", "quick", "--seed", "7"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("9 suites, 0 failed"));
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_nilvar"))
        .args(["classify", "--n", "9", "--format", "json"])
        .env("NILVAR_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, nilvar(&["classify", "--n", "9", "--format", "json"]).stdout);
}
