use std::io::Write;
use std::process::{Command, Output, Stdio};

use proptest::prelude::*;
use serde_json::Value;

use schwarzian_core::corpus::{golden, golden_file, near_misses};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_schwarzian"));
    c.env_remove("SCHWARZIAN_TRUNC");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn is_pq(s: &str) -> bool {
    let Some((p, q)) = s.split_once('/') else { return false };
    let p = p.strip_prefix('-').unwrap_or(p);
    !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()) && !q.is_empty() && q.bytes().all(|b| b.is_ascii_digit())
}

/// No bare JSON numbers anywhere: exact values travel as strings.
fn no_floats(v: &Value) {
    match v {
        Value::Number(n) => panic!("bare number {n}"),
        Value::Array(xs) => xs.iter().for_each(no_floats),
        Value::Object(m) => m.values().for_each(no_floats),
        _ => {}
    }
}

fn check_header(v: &Value) {
    for key in ["input", "equation", "m", "degP", "degQ", "coprime"] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
    for key in ["m", "degP", "degQ"] {
        assert!(is_pq(v[key].as_str().unwrap()), "{key} = {}", v[key]);
    }
    no_floats(v);
}

fn check_qclass(v: &Value) {
    assert!(v["tag"].as_str().unwrap().starts_with("QE"));
    assert!(v["params"].is_object() && v["alternates"].is_array());
}

#[test]
fn mobius_has_zero_schwarzian() {
    let o = run(&["schwarzian", "(2z+3)/(z-5)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn cube_schwarzian() {
    let o = run(&["schwarzian", "z^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-4/(z^2)");
    let v = json(&run(&["--json", "schwarzian", "z^3"]));
    assert_eq!(v["numerator"], serde_json::json!(["-4/1"]));
    no_floats(&v);
}

#[test]
fn constant_right_side_is_e14() {
    let o = run(&["reduce", "S(f) = 2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    check_header(&v);
    check_qclass(&v["qclass"]);
    assert_eq!(v["qclass"]["tag"], "QE16");
    assert_eq!(v["verdict"]["outcome"], "SchwarzForm(E14)");
    assert!(v["certificates"].is_array() && v["diagnostics"].is_array());
}

#[test]
fn reduce_text_names_the_verdict() {
    let o = run(&["reduce", "S(f) = (f^2 + 1)/((f - 1)*(f - 2))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().next().unwrap().contains("E7"), "{out}");
    assert!(out.contains("class: QE14"), "{out}");
}

#[test]
fn classify_every_golden_entry() {
    for e in golden() {
        let o = run(&["--json", "classify", e.text]);
        assert_eq!(o.status.code(), Some(0), "{}", e.text);
        let v = json(&o);
        check_header(&v);
        check_qclass(&v["qclass"]);
        assert_eq!(v["qclass"]["tag"], e.tag.name(), "{}", e.text);
    }
}

#[test]
fn reduce_json_for_every_corpus_line() {
    let texts = golden().into_iter().map(|e| e.text).chain(near_misses().into_iter().map(|e| e.text));
    for t in texts {
        let o = run(&["--json", "reduce", t]);
        assert_eq!(o.status.code(), Some(0), "{t}");
        let v = json(&o);
        check_header(&v);
        assert!(v["verdict"]["outcome"].is_string());
        assert!(v["verdict"]["template"].is_string());
        for c in v["certificates"].as_array().unwrap() {
            assert!(["auxiliary", "feasibility", "branch"].contains(&c["kind"].as_str().unwrap()), "{c}");
        }
    }
}

#[test]
fn verify_exp_and_tan() {
    let o = run(&["verify", "S(f) = 2", "--candidate", "tan:1", "--at", "1/3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify", "S(f) = -2", "--candidate", "exp:2", "--at=-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["--json", "verify", "S(f) = -2", "--candidate", "exp:2"]);
    let v = json(&o);
    check_header(&v);
    assert_eq!(v["verified"], true);
    assert_eq!(v["trunc"], "16/1");
    assert!(v["residual"]["coeffs"].as_array().unwrap().iter().all(|c| c == "0/1"));
}

#[test]
fn wrong_candidate_exits_one() {
    let o = run(&["verify", "S(f) = 2", "--candidate", "exp:1"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&run(&["--json", "verify", "S(f) = 2", "--candidate", "exp:1"]));
    assert_eq!(v["verified"], false);
}

#[test]
fn mobius_candidates_parse() {
    let o = run(&["verify", "S(f) = 2", "--candidate", "mobius-tan:1:2:1:0:1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["verify", "S(f) = -1/2", "--candidate", "mobius-exp:1:1:0:1:3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn trunc_flag_and_env() {
    let v = json(&run(&["--json", "--trunc", "9", "verify", "S(f) = 2", "--candidate", "tan:1"]));
    assert_eq!(v["trunc"], "9/1");
    let o = bin()
        .env("SCHWARZIAN_TRUNC", "11")
        .args(["--json", "verify", "S(f) = 2", "--candidate", "tan:1"])
        .output()
        .unwrap();
    assert_eq!(json(&o)["trunc"], "11/1");
    let o = bin().env("SCHWARZIAN_TRUNC", "0").args(["verify", "S(f) = 2", "--candidate", "tan:1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_keeps_input_order() {
    let path = std::env::temp_dir().join(format!("schwarzian-golden-{}.txt", std::process::id()));
    std::fs::write(&path, golden_file()).unwrap();
    let o = run(&["batch", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 16);
    for (line, e) in lines.iter().zip(golden()) {
        let (verdict, text) = line.split_once('\t').unwrap();
        assert_eq!(text, e.text);
        let names: Vec<String> = e.expected.iter().map(|o| o.name()).collect();
        assert!(names.iter().all(|n| verdict.contains(n.as_str())), "{verdict} vs {names:?}");
    }
}

#[test]
fn batch_json_lines_from_stdin() {
    let o = run_stdin(&["--json", "batch", "-"], &golden_file());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 16);
    for (v, e) in rows.iter().zip(golden()) {
        check_header(v);
        assert_eq!(v["input"], e.text);
        assert_eq!(v["qclass"]["tag"], e.tag.name());
    }
}

#[test]
fn batch_reports_every_bad_line() {
    let o = run_stdin(&["batch", "-"], "S(f) = 2\nS(f) = (\n# comment\nS(f)^0 = f\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("-:2:") && err.contains("-:4:"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("26 passed, 0 failed"));
    let v = json(&run(&["--json", "selftest"]));
    assert_eq!(v["passed"], "26/1");
    assert_eq!(v["failed"], "0/1");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["reduce", "S(f)^0 = f"][..],
        &["reduce", "S(f) = 1/0"],
        &["classify", "f = 2"],
        &["schwarzian", "z +"],
        &["verify", "S(f) = 2", "--candidate", "sin:1"],
        &["verify", "S(f) = 2", "--candidate", "tan:1", "--at", "x"],
        &["batch", "/nonexistent/corpus.txt"],
        &["frobnicate"],
        &[],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn errors_in_json_mode() {
    let o = run(&["--json", "reduce", "S(f)^0 = f"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["input"], "S(f)^0 = f");
    assert!(v["error"].is_string());
    assert!(!o.stderr.is_empty());
}

#[test]
fn constant_schwarzian_input_is_an_analysis_failure() {
    let o = run(&["schwarzian", "7"]);
    assert_eq!(o.status.code(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn malformed_equations_never_exit_zero(s in "[Sfz0-9()+*/^=. -]{0,14}") {
        prop_assume!(schwarzian_core::parse::parse_equation(&s).is_err());
        for cmd in ["classify", "reduce"] {
            let o = run(&[cmd, &s]);
            prop_assert_ne!(o.status.code(), Some(0), "{} {:?}", cmd, s);
        }
    }

    #[test]
    fn mangled_golden_lines_never_exit_zero(i in 0usize..16, cut in 1usize..40, junk in "[)(^*/=]") {
        let text = golden()[i].text;
        let cut = cut.min(text.len() - 1);
        let s = format!("{}{}{}", &text[..cut], junk, &text[cut..]);
        prop_assume!(schwarzian_core::parse::parse_equation(&s).is_err());
        let o = run(&["reduce", &s]);
        prop_assert_eq!(o.status.code(), Some(2), "{:?}", s);
    }
}
