use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const SPIDER: &str = r#"{"branches":[{"length":1,"count":1},{"length":2,"count":2}]}"#;

struct Scratch(tempfile::TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn pathseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathseq"))
        .args(args)
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn star_invariant() {
    let dir = Scratch::new();
    let star = dir.file("star.el", "4 3\n0 1\n0 2\n0 3\n");
    let out = pathseq(&[
        "invariant",
        "--graph",
        s(&star),
        "--index",
        "connectivity",
        "--order",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h"], 1);
    assert!((v["value"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-15);
}

#[test]
fn verify_reports_zero_difference() {
    let dir = Scratch::new();
    let spider = dir.file("spider.json", SPIDER);
    let out = pathseq(&[
        "verify",
        "--starlike",
        s(&spider),
        "--index",
        "path-count",
        "--max-order",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["max_abs_diff"], 0.0);
}

#[test]
fn check_conditions_command() {
    let out = pathseq(&[
        "check-conditions",
        "--index",
        "sum-connectivity",
        "--theorem",
        "8",
        "--x-max",
        "64",
        "--t-max",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["condition_a"], "pass");
    assert_eq!(v["condition_b"], "pass");

    let out = pathseq(&[
        "check-conditions",
        "--index",
        "path-count",
        "--theorem",
        "7",
    ]);
    let v = json(&out);
    assert_eq!(v["condition_a"], "fail");
    assert_eq!(v["counterexamples"][0]["x"], 3);
    assert_eq!(v["counterexamples"][0]["y"], 4);
}

#[test]
fn profile_feeds_reconstruct() {
    let dir = Scratch::new();
    let spider = dir.file("spider.json", SPIDER);
    let prof = dir.path("profile.json");
    let out = pathseq(&[
        "profile",
        "--starlike",
        s(&spider),
        "--index",
        "hyper-zagreb",
        "--max-order",
        "40",
        "--output",
        s(&prof),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&prof).unwrap()).unwrap();
    assert_eq!(doc["rho"], 4);
    assert_eq!(doc["values"].as_array().unwrap().len(), 5);

    let out = pathseq(&[
        "reconstruct",
        "--profile",
        s(&prof),
        "--index",
        "hyper-zagreb",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let expected: Value = serde_json::from_str(SPIDER).unwrap();
    assert_eq!(v["spec"], expected);
    assert_eq!(v["family"], "starlike");
}

#[test]
fn reconstruct_from_a_generalized_graph() {
    let dir = Scratch::new();
    // K_4 at vertex 0 plus branches of length 1, 1, 2
    let g = dir.file(
        "g.el",
        "8 10\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4\n0 5\n0 6\n6 7\n",
    );
    let out = pathseq(&[
        "reconstruct",
        "--graph",
        s(&g),
        "--family",
        "generalized",
        "--index",
        "connectivity",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json(&out);
    assert_eq!(v["spec"]["clique"], 4);
    assert_eq!(v["spec"]["branches"][0]["count"], 2);
}

#[test]
fn corrupted_profile_exits_one() {
    let dir = Scratch::new();
    let prof = dir.file(
        "p.json",
        "[4.99156383156272,2.808060412490447,1.93,1.393846850117352,0.2886751345948129]",
    );
    let out = pathseq(&[
        "reconstruct",
        "--profile",
        s(&prof),
        "--vertices",
        "6",
        "--index",
        "connectivity",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["error"]["kind"].is_string());
    assert!(v["error"]["message"].is_string());
}

#[test]
fn domain_errors_exit_one() {
    let dir = Scratch::new();
    let disconnected = dir.file("d.el", "4 2\n0 1\n2 3\n");
    let out = pathseq(&[
        "invariant",
        "--graph",
        s(&disconnected),
        "--index",
        "connectivity",
        "--order",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Disconnected");

    let malformed = dir.file("m.el", "3 2\n0 1\n");
    let out = pathseq(&[
        "invariant",
        "--graph",
        s(&malformed),
        "--index",
        "connectivity",
        "--order",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let missing = dir.path("missing.el");
    let out = pathseq(&[
        "invariant",
        "--graph",
        s(&missing),
        "--index",
        "connectivity",
        "--order",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let bad_spec = dir.file("bad.json", r#"{"branches":[{"length":1,"count":2}]}"#);
    let out = pathseq(&[
        "profile",
        "--starlike",
        s(&bad_spec),
        "--index",
        "connectivity",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "InvalidSpec");

    let out = pathseq(&["check-conditions", "--index", "wiener", "--theorem", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "UnknownIndex");
}

#[test]
fn usage_errors_exit_two() {
    let dir = Scratch::new();
    let spider = dir.file("spider.json", SPIDER);
    let star = dir.file("star.el", "4 3\n0 1\n0 2\n0 3\n");
    for args in [
        vec!["invariant", "--index", "connectivity", "--order", "1"],
        vec![
            "invariant",
            "--graph",
            s(&star),
            "--starlike",
            s(&spider),
            "--index",
            "connectivity",
            "--order",
            "1",
        ],
        vec![
            "invariant",
            "--graph",
            s(&star),
            "--index",
            "connectivity",
            "--order",
            "1",
            "--tol",
            "0",
        ],
        vec![
            "invariant",
            "--graph",
            s(&star),
            "--index",
            "connectivity",
            "--order",
            "1",
            "--budget",
            "0",
        ],
        vec![
            "check-conditions",
            "--index",
            "connectivity",
            "--theorem",
            "9",
        ],
        vec![
            "check-conditions",
            "--index",
            "connectivity",
            "--theorem",
            "7",
            "--x-max",
            "3",
        ],
        vec![
            "distinguish",
            "--starlike",
            s(&spider),
            "--index",
            "connectivity",
        ],
        vec![
            "survey",
            "--vertices",
            "8",
            "--family",
            "generalized",
            "--index",
            "connectivity",
        ],
        vec!["frobnicate"],
    ] {
        assert_eq!(pathseq(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_is_enforced() {
    let dir = Scratch::new();
    let mut text = String::from("7 21\n");
    for u in 0..7 {
        for v in u + 1..7 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    let k7 = dir.file("k7.el", &text);
    let out = pathseq(&[
        "profile",
        "--graph",
        s(&k7),
        "--index",
        "path-count",
        "--budget",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "BudgetExceeded");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let dir = Scratch::new();
    let spider = dir.file("spider.json", SPIDER);
    let args = [
        "profile",
        "--starlike",
        s(&spider),
        "--index",
        "sum-connectivity",
    ];
    let v = json(&pathseq(&args));
    let csv_out = pathseq(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(csv_out.status.code(), Some(0));
    let text = String::from_utf8(csv_out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("h,value"));
    let from_json: Vec<String> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let from_csv: Vec<String> = lines
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(from_json, from_csv);
}

#[test]
fn json_reports_round_trip() {
    let dir = Scratch::new();
    let a = dir.file("a.json", SPIDER);
    let b = dir.file(
        "b.json",
        r#"{"branches":[{"length":1,"count":2},{"length":3,"count":1}]}"#,
    );
    let g = dir.file(
        "g.json",
        r#"{"clique":3,"branches":[{"length":1,"count":3}]}"#,
    );
    for args in [
        vec![
            "distinguish",
            "--starlike",
            s(&a),
            "--starlike",
            s(&b),
            "--index",
            "connectivity",
        ],
        vec!["census", "--starlike", s(&a), "--order", "2"],
        vec!["census", "--generalized", s(&g), "--order", "1"],
        vec!["survey", "--vertices", "9", "--index", "connectivity"],
        vec![
            "check-conditions",
            "--index",
            "hyper-zagreb",
            "--theorem",
            "7",
        ],
    ] {
        let out = pathseq(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(format!("{reparsed}\n"), text, "{args:?}");
    }
}

#[test]
fn distinguish_and_census_values() {
    let dir = Scratch::new();
    let a = dir.file("a.json", SPIDER);
    let b = dir.file(
        "b.json",
        r#"{"branches":[{"length":1,"count":2},{"length":3,"count":1}]}"#,
    );
    let out = pathseq(&[
        "distinguish",
        "--starlike",
        s(&a),
        "--starlike",
        s(&b),
        "--index",
        "connectivity",
    ]);
    let v = json(&out);
    assert_eq!(v["status"], "separated");
    assert!(v["h"].as_u64().unwrap() <= 3);

    let out = pathseq(&["census", "--starlike", s(&a), "--order", "2"]);
    let v = json(&out);
    assert_eq!(v["total"], 5);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);

    let star = dir.file("star.json", r#"{"branches":[{"length":1,"count":3}]}"#);
    let out = pathseq(&[
        "distinguish",
        "--starlike",
        s(&star),
        "--starlike",
        s(&a),
        "--index",
        "connectivity",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "SizeMismatch");
}

#[test]
fn parameterized_index_is_accepted() {
    let dir = Scratch::new();
    let spider = dir.file("spider.json", SPIDER);
    let out = pathseq(&[
        "verify",
        "--starlike",
        s(&spider),
        "--index",
        "power:-0.5",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "ok");
}
