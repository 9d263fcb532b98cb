use std::process::{Command, Output};

use serde_json::Value;

fn sections(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sections"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = sections(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn radius_ctc() {
    let v = json(&["radius", "--alpha", "1", "--beta", "0", "--property", "ctc"]);
    let rho = v["result"]["rho"].as_f64().unwrap();
    assert!((rho - 0.6321205588).abs() < 1e-9);
    assert_eq!(v["result"]["converged"], true);
    assert_eq!(v["query"]["property"], "ctc");
    assert_eq!(v["meta"]["tol"], 1e-12);
    assert_eq!(v["meta"]["scanStep"], 1e-3);
    assert!(v["meta"]["version"].is_string());
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["query", "result", "meta"]);
}

#[test]
fn radius_json_flag_and_tol() {
    let v = json(&[
        "radius",
        "--alpha",
        "0.5",
        "--beta",
        "0.2",
        "--property",
        "convex",
        "--tol",
        "1e-8",
        "--json",
    ]);
    assert_eq!(v["meta"]["tol"], 1e-8);
    assert_eq!(v["result"]["converged"], true);
}

#[test]
fn thresholds() {
    let v = json(&["thresholds"]);
    assert_eq!(v["ctc_n"], 17);
    assert_eq!(v["starlike_n"], 10);
    assert!(v["ctc"]["before"]["C_n"].as_f64().unwrap() > 0.77);
    assert!(v["starlike"]["before"]["E_n"].as_f64().unwrap() > 1.0);
    assert_eq!(json(&["thresholds", "--json"]), v);
}

#[test]
fn bounds() {
    let v = json(&["bounds", "--n", "2", "--alpha", "1", "--rho", "0.5"]);
    let r = &v["result"];
    assert!((r["tail_abs"].as_f64().unwrap() - 0.0284264097).abs() < 1e-9);
    assert!((r["s2"].as_f64().unwrap() - 0.1931471806).abs() < 1e-9);
    assert_eq!(r["tail_second_deriv"], 1.0);
}

#[test]
fn figure_three() {
    let out = stdout(&sections(&["figure", "--id", "3"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,radius");
    assert_eq!(lines.len(), 40);
    assert_eq!(lines[1], "2,1");
    assert_eq!(lines[2], "3,0.7320508076");
    let last: f64 = lines[39].split(',').nth(1).unwrap().parse().unwrap();
    assert!((last - 0.6321).abs() < 1e-3);
    assert!(!out.contains('\r'));
}

#[test]
fn figures_one_and_two() {
    let one = stdout(&sections(&["figure", "--id", "1"]));
    assert!(one.starts_with("alpha,beta,psi2\n"));
    assert_eq!(one.lines().count(), 101);
    assert!(one.contains("\n1,0,0.3874258867\n"), "{one}");
    let two = stdout(&sections(&["figure", "--id", "2"]));
    assert!(two.starts_with("alpha,beta,psi6\n"));
    assert!(two.contains("\n1,0,0.7320508076\n"));
}

#[test]
fn table_is_byte_stable() {
    let args = [
        "table",
        "--property",
        "starlike",
        "--alpha-min",
        "0.5",
        "--alpha-max",
        "1",
        "--alpha-step",
        "0.25",
        "--beta-min",
        "0",
        "--beta-max",
        "0.5",
        "--beta-step",
        "0.25",
    ];
    let a = sections(&args);
    let b = sections(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,beta,rho,residual,converged");
    assert_eq!(lines.len(), 10);
    assert!(lines[7].starts_with("1,0,0.569"), "{}", lines[7]);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("sections-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig3.csv");
    let out = sections(&["figure", "--id", "3", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&sections(&["figure", "--id", "3"])));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_one_with_synopsis() {
    for args in [
        vec!["radius", "--alpha", "1"],
        vec!["radius", "--alpha", "2", "--beta", "0", "--property", "ctc"],
        vec!["radius", "--alpha", "1", "--beta", "1", "--property", "ctc"],
        vec!["figure", "--id", "4"],
        vec!["verify", "--suite", "nope"],
        vec!["bounds", "--n", "2", "--alpha", "1", "--rho", "1"],
        vec!["bogus"],
    ] {
        let out = sections(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        let first = err.lines().next().unwrap();
        assert!(first.starts_with("error: "), "{args:?}: {err}");
        assert!(
            err.lines().nth(1).unwrap().starts_with("usage: sections"),
            "{args:?}: {err}"
        );
    }
}

#[test]
fn help_exits_zero() {
    let out = sections(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify"));
}

#[test]
fn exploratory_lifts_alpha_cap_with_warning() {
    let out = sections(&[
        "--exploratory",
        "radius",
        "--alpha",
        "2",
        "--beta",
        "0",
        "--property",
        "ctc",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("warning: "));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["query"]["exploratory"], true);
}

#[test]
fn verify_text_report() {
    let out = sections(&["verify", "--suite", "thresholds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text
        .lines()
        .all(|l| l.starts_with("PASS ") || l.contains("checks, 0 failed")));
    let v = json(&["verify", "--suite", "thresholds", "--seed", "7", "--json"]);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    let ids: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["checkId"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}
