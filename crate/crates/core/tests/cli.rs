use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcr")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CK: &str = "(p => (q -> r)) -> ((p => q) -> (p => r))";

#[test]
fn taut_weakening() {
    let out = lcr(&["taut", "--m", "3", "--formula", "p -> (q -> p)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "holds");
}

#[test]
fn taut_reports_witness() {
    let out = lcr(&["taut", "--m", "3", "--formula", "p | ~p"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "fails");
    assert_eq!(v["witness"]["p"], "1/2");
}

#[test]
fn taut_conditionals_need_flag() {
    let f = "(p => q) -> (p => q)";
    assert_eq!(lcr(&["taut", "--m", "3", "--formula", f]).status.code(), Some(3));
    let out = lcr(&["taut", "--m", "3", "--formula", f, "--abstract-conditionals"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_reports_round_trip() {
    let out = lcr(&["parse", "--formula", "J{1/2}(p) & q => r"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["round_trip"], true);
    assert_eq!(v["ast"]["op"], "cond");
}

#[test]
fn parse_error_is_malformed_input() {
    let out = lcr(&["parse", "--formula", "p & "]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "error");
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(lcr(&["taut", "--formula", "p"]).status.code(), Some(2));
    assert_eq!(lcr(&["nonsense"]).status.code(), Some(2));
    assert_eq!(lcr(&["search", "--m", "3", "--max-worlds", "0", "--formula", "p"]).status.code(), Some(2));
}

#[test]
fn search_ck_and_eval_the_countermodel() {
    let out = lcr(&["search", "--m", "3", "--max-worlds", "2", "--formula", CK]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "countermodel");
    assert_ne!(v["value"], "1");
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("ck.json");
    std::fs::write(&model, &out.stdout).unwrap();
    let world = v["witness_world"].as_str().unwrap();
    let ev = lcr(&["eval", "--model", path(&model), "--world", world, "--formula", CK]);
    assert_eq!(ev.status.code(), Some(0));
    assert_eq!(json(&ev)["value"], v["value"]);
    let valid = lcr(&["valid", "--model", path(&model), "--formula", CK]);
    assert_eq!(valid.status.code(), Some(1));
}

#[test]
fn search_output_is_deterministic() {
    let args = ["search", "--m", "3", "--max-worlds", "2", "--formula", CK];
    let first = lcr(&args);
    for _ in 0..3 {
        assert_eq!(lcr(&args).stdout, first.stdout);
    }
    let mut serial = args.to_vec();
    serial.push("--serial");
    assert_eq!(lcr(&serial).stdout, first.stdout);
}

#[test]
fn search_none_within_bounds_and_budget() {
    let cm = "(p => q) & (p => r) -> (p => q & r)";
    let out = lcr(&["search", "--m", "3", "--max-worlds", "1", "--formula", cm]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "none_within_bounds");
    let out = lcr(&["search", "--m", "3", "--max-worlds", "2", "--formula", cm, "--budget", "5"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["status"], "budget_exhausted");
}

#[test]
fn search_fid_and_values() {
    let out = lcr(&["search", "--m", "3", "--max-worlds", "1", "--formula", "p => p"]);
    assert_eq!(out.status.code(), Some(1));
    let out = lcr(&["search", "--m", "3", "--max-worlds", "2", "--formula", "p => p", "--fid"]);
    assert_eq!(out.status.code(), Some(0));
    let out = lcr(&["search", "--m", "3", "--max-worlds", "1", "--formula", "p => p", "--values", "0,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["value"], "0");
}

#[test]
fn missing_model_is_malformed_input() {
    let out = lcr(&["eval", "--model", "missing.json", "--world", "w0", "--formula", "p"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "error");
}

#[test]
fn gen_filtrate_fid_check_entails() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.json");
    let out = lcr(&["gen", "--seed", "7", "--m", "3", "--worlds", "4", "--vars", "p,q", "--out", path(&model)]);
    assert_eq!(out.status.code(), Some(0));
    let again = dir.path().join("m2.json");
    lcr(&["gen", "--seed", "7", "--m", "3", "--worlds", "4", "--vars", "p,q", "--out", path(&again)]);
    assert_eq!(std::fs::read(&model).unwrap(), std::fs::read(&again).unwrap());

    let sigma = dir.path().join("sigma.txt");
    std::fs::write(&sigma, "# closure of p => q\np\nq\np => q\n").unwrap();
    let filtered = dir.path().join("f.json");
    let out = lcr(&["filtrate", "--model", path(&model), "--sigma", path(&sigma), "--out", path(&filtered)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "preserved");
    assert!(v["classes"].as_u64().unwrap() <= 4);
    assert_eq!(v["class_map"].as_object().unwrap().len(), 4);
    let fv = lcr(&["valid", "--model", path(&filtered), "--formula", "p => q"]);
    let ov = lcr(&["valid", "--model", path(&model), "--formula", "p => q"]);
    assert_eq!(fv.status.code(), ov.status.code());

    std::fs::write(&sigma, "p => q\n").unwrap();
    let out = lcr(&["filtrate", "--model", path(&model), "--sigma", path(&sigma), "--out", path(&filtered)]);
    assert_eq!(out.status.code(), Some(3));
    let out = lcr(&[
        "filtrate", "--model", path(&model), "--sigma", path(&sigma), "--out", path(&filtered), "--close",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let fid = dir.path().join("fid.json");
    lcr(&["gen", "--seed", "7", "--m", "3", "--worlds", "4", "--vars", "p,q", "--out", path(&fid), "--fid"]);
    assert_eq!(lcr(&["fid-check", "--model", path(&fid)]).status.code(), Some(0));
    assert_eq!(lcr(&["valid", "--model", path(&fid), "--formula", "p => p"]).status.code(), Some(0));

    let premises = dir.path().join("premises.txt");
    std::fs::write(&premises, "p & q\n").unwrap();
    let out = lcr(&["entails", "--model", path(&model), "--sigma", path(&premises), "--formula", "p"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "holds");
}

fn derivation(name: &str) -> String {
    format!("{}/data/derivations/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn proofcheck_samples() {
    for name in ["rcec_commute.json", "ra_m3.json", "a3_single.json", "premises_mp.json"] {
        let out = lcr(&["proofcheck", "--file", &derivation(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["status"], "accepted");
    }
    let out = lcr(&["proofcheck", "--file", &derivation("rcec_commute.json"), "--goal", "p => q"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "rejected");
    assert_eq!(v["line"], 4);
}

#[test]
fn pretty_output_is_text() {
    let out = lcr(&["--pretty", "taut", "--m", "3", "--formula", "p -> p"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_err());
}
