use std::process::{Command, Output};

use lgdim::lgroup::LGroup;
use lgdim::ordinal::Ordinal;
use serde_json::Value;

fn lgdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgdim")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = lgdim(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().expect("exit code"))
}

fn ord(v: &Value) -> Ordinal {
    v.as_str().expect("ordinal string").parse().expect("ordinal literal")
}

#[test]
fn classify_rationals() {
    let (v, code) = json(&["classify", "--gamma", "Q"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "classify");
    let r = &v["result"];
    assert_eq!(r["mdim_gamma"], "undefined");
    assert_eq!(r["breadth_gamma"], "0");
    assert_eq!(r["superdecomposable_exists"], true);
    assert_eq!(r["superdec_witness_route"], "dense-chain");
}

#[test]
fn classify_lex_reports_bounds() {
    let (v, _) = json(&["classify", "--gamma", "lex(Z,Z)"]);
    let r = &v["result"];
    assert_eq!(r["mdim_gamma"], "2");
    assert_eq!(r["breadth_pp1"], "2");
    assert_eq!(r["zg_cb_bounds"], serde_json::json!(["2", "4"]));
    assert_eq!(r["zg_cb_exact"], "4");
    assert_eq!(r["superdecomposable_exists"], false);
}

#[test]
fn classify_minus_step_group() {
    let (v, _) = json(&["classify", "--gamma", "Cminus(w)"]);
    let r = &v["result"];
    assert_eq!(r["mdim_gamma"], "1");
    assert_eq!(r["krull_dim_one"], true);
    assert_eq!(r["zg_cb_bounds"], serde_json::json!(["1", "2"]));
    assert_eq!(r["zg_cb_exact"], "2");
}

#[test]
fn reports_round_trip_their_literals() {
    for gamma in ["Z", "Z^3", "lex(Z,Z,Z)", "C(w^2*3+w)", "Cminus(w^w)", "0"] {
        let (v, code) = json(&["mdim", "--gamma", gamma]);
        assert_eq!(code, 0);
        let g: LGroup = v["gamma"].as_str().unwrap().parse().unwrap();
        assert_eq!(g.to_string(), v["gamma"].as_str().unwrap());
        ord(&v["result"]["value"]);
        for st in v["result"]["chain"].as_array().unwrap() {
            ord(&st["alpha"]);
            st["group"].as_str().unwrap().parse::<LGroup>().unwrap();
        }
    }
}

#[test]
fn minus_over_omega_power_is_a_limit() {
    let (v, _) = json(&["mdim", "--gamma", "Cminus(w^w)"]);
    assert_eq!(v["result"]["value"], "w");
    assert!(ord(&v["result"]["value"]).is_limit());
}

#[test]
fn chain_classes() {
    let (v, _) = json(&["chain", "--gamma", "Z^2", "--class", "chain"]);
    assert_eq!(v["result"]["value"], "1");
    assert_eq!(v["result"]["terminal"], "totally-ordered");
    let (v, _) = json(&["chain", "--gamma", "lex(Z,Z,Z)", "--class", "two"]);
    assert_eq!(v["result"]["chain"].as_array().unwrap().len(), 4);
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lgdim"))
        .args(["--format", "json", "mdim", "--gamma", "C(w*2)"])
        .env("LGDIM_ITER_BUDGET", "1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["value"], "2");
    assert_eq!(v["result"]["elided"], true);
    assert_eq!(v["method"], "closed-form");
}

#[test]
fn cbrank_space_report() {
    let (v, _) = json(&["cbrank-space", "--top", "w^2"]);
    assert_eq!(v["result"]["cb_rank"], "2");
    assert_eq!(v["result"]["derivative_chain"], serde_json::json!(["w^2", "w", "0", "empty"]));
}

#[test]
fn zg_points_and_layers() {
    let (v, code) = json(&["zg", "--gamma", "Z", "--bound", "3", "--stratify"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 8);
    assert_eq!(v["result"]["cb"]["stratified"], "2");
    assert_eq!(v["result"]["cb"]["agree"], true);
    let invariants: Vec<&str> = v["result"]["points"].as_array().unwrap().iter().filter_map(|p| p["invariant"].as_str()).collect();
    assert_eq!(invariants, ["2", "3", "4", "5", "6"]);
}

#[test]
fn leq_formulas() {
    let (v, _) = json(&["leq", "--gamma", "Z", "--lhs", "sum((2;inf))", "--rhs", "sum((1;inf))"]);
    assert_eq!(v["result"]["leq"], true);
    assert_eq!(v["result"]["geq"], false);
    let (v, _) = json(&["leq", "--gamma", "Z^2", "--lhs", "sum(((1,0);inf),((0,0);(2,3)))", "--rhs", "sum(((0,0);inf))"]);
    assert_eq!(v["result"]["leq"], true);
}

#[test]
fn spec_star() {
    let (v, _) = json(&["spec-star", "--gamma", "lex(Z,Z)"]);
    assert_eq!(v["result"]["cb_rank"], "2");
    let ranks: Vec<&str> = v["result"]["points"].as_array().unwrap().iter().map(|p| p["rank"].as_str().unwrap()).collect();
    assert_eq!(ranks, ["1", "0", "2"]);
}

#[test]
fn check_selected_suites() {
    for tag in ["mdimCXZ", "zg-lex"] {
        let (v, code) = json(&["check", "--suite", tag]);
        assert_eq!(code, 0, "{tag}");
        assert_eq!(v["result"]["selected"], 1);
        assert_eq!(v["result"]["failed"], 0);
    }
}

#[test]
fn unknown_suite_tag_warns() {
    let out = lgdim(&["check", "--suite", "no-such-check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["mdim", "--gamma", "lex(Z"][..],
        &["mdim", "--gamma", "Z^0"],
        &["cbrank-space", "--top", "w^"],
        &["spec-star", "--gamma", "Q"],
        &["zg", "--gamma", "lex(Z,Z,Z)"],
        &["leq", "--gamma", "Z", "--lhs", "sum((1;", "--rhs", "sum((0;inf))"],
        &["chain", "--gamma", "Z", "--class", "three"],
    ] {
        assert_eq!(lgdim(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_output_lists_paths() {
    let out = lgdim(&["mdim", "--gamma", "Z^2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("result.value") && l.ends_with(" 1")));
    assert!(text.contains("schema_version"));
}
