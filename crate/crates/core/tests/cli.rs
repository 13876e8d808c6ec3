use std::process::Command;

use ruban::cli::run;
use ruban::report::{ExpansionReport, SCHEMA};

fn ruban(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ruban").chain(args.iter().copied()).map(String::from);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = ruban(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn floors() {
    assert_eq!(ok(&["floor", "-l", "3", "5/6"]).trim(), "7/3");
    assert_eq!(ok(&["floor", "-l", "3", "9/2"]).trim(), "0");
    assert_eq!(ok(&["floor", "--prime", "3", "sqrt(13)", "--branch", "1"]).trim(), "1");
}

#[test]
fn rational_expansions() {
    let out = ok(&["expand", "-l", "3", "17/11"]);
    assert!(out.starts_with("finite: [1, 1/3, 2/3]\n"), "{out}");
    let out = ok(&["expand", "-l", "3", "5/6"]);
    assert!(out.starts_with("periodic: preperiod [7/3, 7/3], period [8/3]\n"), "{out}");
    let out = ok(&["expand", "-l", "5", "-1/5"]);
    assert!(out.starts_with("periodic: preperiod [], period [24/5]\n"), "{out}");
    assert_eq!(ok(&["classify", "-l", "3", "17/11"]).lines().next(), Some("finite"));
}

#[test]
fn quadratic_expansions() {
    let out = ok(&["expand", "-l", "3", "sqrt(37)", "--branch", "1"]);
    assert!(out.contains("aperiodic; witness step 2: -(19+sqrt(37))/9"), "{out}");
    assert!(out.contains("prefix: [1, 5/9]"), "{out}");
    let out = ok(&["expand", "-l", "7", "(1+5*sqrt(2))/(1*7^1)", "--branch", "3"]);
    assert!(out.contains("period [2/7]"), "{out}");
    let out = ok(&["expand", "-l", "7", "(17-13*sqrt(2))/(1*7^1)", "--branch", "3"]);
    assert!(out.contains("period [34/7]"), "{out}");
    let out = ok(&["expand", "-l", "3", "(2+sqrt(13))/(12*3^0)", "--branch", "1"]);
    assert!(out.contains("witness step 5"), "{out}");
    let out = ok(&["classify", "-l", "3", "(1+sqrt(37))/(6*3^0)", "--branch", "1"]);
    assert!(out.contains("periodic: preperiod [], period [1/3]"), "{out}");
}

#[test]
fn pure_periodic_and_pell() {
    let out = ok(&["pure-periodic", "13", "-l", "3", "--show-filtered"]);
    assert!(out.starts_with("candidates: 14 -> after filters: 2 -> confirmed: 1\n"), "{out}");
    assert!(out.contains("(2-sqrt(13))/3: period [4/3]"), "{out}");
    let out = ok(&["pure-periodic", "10", "-l", "3", "--pell", "5"]);
    for needle in ["(1+sqrt(10))/3", "(13-5*sqrt(10))/9", "(31+13*sqrt(10))/27", "(43-29*sqrt(10))/81", "h=5: none"] {
        assert!(out.contains(needle), "{needle} missing from {out}");
    }
}

#[test]
fn scans() {
    let out = ok(&["scan", "-l-max", "13", "5/6"]);
    for l in [7, 11, 13] {
        let line = out.lines().find(|s| s.starts_with(&format!("l={l}:"))).unwrap();
        assert!(line.contains("periodic"), "{line}");
    }
    let out = ok(&["scan", "--l-max", "50", "x^2-13"]);
    for l in [17, 23, 29, 43] {
        let lines: Vec<&str> = out.lines().filter(|s| s.starts_with(&format!("l={l}:"))).collect();
        assert_eq!(lines.len(), 2, "{out}");
        assert!(lines.iter().all(|s| s.contains("aperiodic")), "{lines:?}");
    }
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["expand", "-l", "3", "5/6", "--json", "--trace"][..],
        &["expand", "-l", "3", "sqrt(13)", "--branch", "1", "--json", "--trace"],
        &["pure-periodic", "13", "-l", "3", "--json"],
        &["pure-periodic", "10", "-l", "3", "--pell", "4", "--json"],
        &["scan", "--l-max", "20", "x^2-13", "--json"],
    ] {
        let a = ok(args);
        let b = ok(args);
        assert_eq!(a, b, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema"], SCHEMA);
    }
}

#[test]
fn expand_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let goldens: &[&[&str]] = &[
        &["-l", "3", "17/11"],
        &["-l", "3", "5/6"],
        &["-l", "2", "-1/2"],
        &["-l", "7", "-1/7"],
        &["-l", "3", "sqrt(37)", "--branch", "1"],
        &["-l", "3", "(1+sqrt(37))/(6*3^0)", "--branch", "1"],
        &["-l", "3", "(2-sqrt(13))/(3*3^0)", "--branch", "1"],
        &["-l", "3", "sqrt(13)", "--branch", "1"],
        &["-l", "3", "(2+sqrt(13))/(12*3^0)", "--branch", "1"],
        &["-l", "7", "(1+5*sqrt(2))/(1*7^1)", "--branch", "3"],
        &["-l", "7", "(17-13*sqrt(2))/(1*7^1)", "--branch", "3"],
    ];
    for (i, g) in goldens.iter().enumerate() {
        let mut args = vec!["expand", "--json", "--trace"];
        args.extend_from_slice(g);
        let json = ok(&args);
        let rep: ExpansionReport = serde_json::from_str(&json).unwrap();
        assert!(rep.verification.unwrap().pass, "{g:?}");
        let path = dir.path().join(format!("r{i}.json"));
        std::fs::write(&path, &json).unwrap();
        let out = ok(&["verify", path.to_str().unwrap()]);
        assert!(out.ends_with("verify: PASS\n"), "{g:?}: {out}");

        let mut bad: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rows = bad["trace"]["convergents"].as_array_mut().unwrap();
        let last = rows.len() - 1;
        rows[last]["q"] = serde_json::json!("12345678901234567890");
        std::fs::write(&path, bad.to_string()).unwrap();
        let (code, out, _) = ruban(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, 1, "{g:?}: corrupted trace accepted\n{out}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(ruban(&["expand", "-l", "3", "1/0"]).0, 1);
    assert_eq!(ruban(&["expand", "-l", "4", "1/3"]).0, 1);
    assert_eq!(ruban(&["expand", "-l", "5", "sqrt(2)", "--branch", "1"]).0, 1);
    let (code, _, err) = ruban(&["expand", "-l", "3", "sqrt(13)"]);
    assert_eq!(code, 1);
    assert!(err.contains("--branch"), "{err}");
    assert_eq!(ruban(&["expand", "-l", "3", "sqrt(13)", "--branch", "1", "--max-steps", "0"]).0, 1);
    assert_eq!(ruban(&["bogus"]).0, 1);
    assert_eq!(ruban(&["--help"]).0, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, r#"{"schema": "something-else"}"#).unwrap();
    assert_eq!(ruban(&["verify", path.to_str().unwrap()]).0, 1);
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_ruban");
    let out = Command::new(bin).args(["expand", "-l", "3", "5/6"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("period [8/3]"));
    let out = Command::new(bin).args(["floor", "-l", "3", "1/0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
