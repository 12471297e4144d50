use std::process::{Command, Output};

use nilcentral::maps::g_map;
use nilcentral::{MapOnN, RingContext, UTMatrix};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcentral")).args(args).output().expect("binary runs")
}

fn json_result(args: &[&str], want_code: i32) -> Value {
    let mut full = vec!["--no-timing"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(want_code), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tool"], "nilcentral");
    assert!(v["timing_ms"].is_null());
    v
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn q(r: usize) -> RingContext {
    RingContext::new(r, "Q".parse().unwrap()).unwrap()
}

#[test]
fn examples_emit_documented_objects() {
    let out = run(&["examples", "--r", "4", "--name", "W1"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"r":4,"field":"Q","entries":[{"i":1,"j":2,"v":"1"},{"i":2,"j":3,"v":"2"},{"i":3,"j":4,"v":"3"}]}"#
    );
    let p = MapOnN::from_json(&String::from_utf8(run(&["examples", "--r", "4", "--name", "p"]).stdout).unwrap()).unwrap();
    let c = q(4);
    assert_eq!(p.constant().unwrap(), &(&UTMatrix::unit(c, 1, 3).unwrap() + &UTMatrix::unit(c, 2, 4).unwrap()));
    let g = MapOnN::from_json(&String::from_utf8(run(&["examples", "--r", "5", "--name", "g"]).stdout).unwrap()).unwrap();
    assert_eq!(g, g_map(q(5)).unwrap());
    let s2: Value = serde_json::from_slice(&run(&["examples", "--r", "4", "--name", "S2"]).stdout).unwrap();
    assert_eq!(s2.as_array().unwrap().len(), 6);
    let s1: Value = serde_json::from_slice(&run(&["examples", "--r", "4", "--name", "S1", "--field", "F3"]).stdout).unwrap();
    assert_eq!(s1.as_array().unwrap().len(), 2);
}

#[test]
fn decide_report_witness_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let p = String::from_utf8(run(&["examples", "--r", "4", "--name", "p"]).stdout).unwrap();
    let path = write(&dir, "p.json", &p);
    let v = json_result(&["decide", "--map", &path, "--property", "commuting"], 1);
    let res = &v["result"];
    assert_eq!(res["verdict"], false);
    let w = &res["witnesses"][0];
    assert_eq!(w["basis_pair"], serde_json::json!([[1, 2], [1, 2]]));
    // re-evaluate the reported witness from the emitted JSON
    let f = MapOnN::from_json(&p).unwrap();
    let input = UTMatrix::from_json(&w["input"].to_string()).unwrap();
    let comm = UTMatrix::from_json(&w["commutator"].to_string()).unwrap();
    assert_eq!(f.apply(&input).unwrap().commutator(&input).unwrap(), comm);
    assert!(!comm.is_zero());
}

#[test]
fn decompose_examples() {
    let dir = tempfile::tempdir().unwrap();
    let c = q(5);
    let f = MapOnN::identity(c).try_add(&g_map(c).unwrap().scale(&c.scalar(4))).unwrap();
    let path = write(&dir, "f.json", &f.to_json());
    let v = json_result(&["decompose", "--map", &path], 0);
    let res = &v["result"];
    assert_eq!((res["lambda"].as_str(), res["a"].as_str()), (Some("1"), Some("4")));
    assert_eq!(res["standard_form"], false);
    let mu = MapOnN::from_json(&res["mu"].to_string()).unwrap();
    assert_eq!(mu, g_map(c).unwrap().scale(&c.scalar(4)));

    let c4 = q(4);
    let mut images = vec![UTMatrix::zero(c4); 6];
    images[3] = UTMatrix::unit(c4, 2, 3).unwrap();
    let path = write(&dir, "x.json", &MapOnN::from_images(c4, &images).unwrap().to_json());
    let v = json_result(&["decompose", "--map", &path], 1);
    assert_eq!(v["result"]["centralizing"], false);
    assert!(!v["result"]["report"]["witnesses"].as_array().unwrap().is_empty());

    let path = write(&dir, "small.json", &MapOnN::identity(q(3)).to_json());
    assert_eq!(run(&["decompose", "--map", &path]).status.code(), Some(2));
}

#[test]
fn dims_labels() {
    let v = json_result(&["dims", "--r", "3", "--field", "Q"], 0);
    assert_eq!(v["result"][0]["predicted"], "n/a (r<4)");
    let v = json_result(&["dims", "--r", "4", "--field", "F101", "--kind", "commuting"], 0);
    assert_eq!(v["result"][0]["predicted"], "exploration");
    assert_eq!(v["result"].as_array().unwrap().len(), 1);
    let v = json_result(&["dims", "--r", "4"], 0);
    assert_eq!(v["result"][0]["computed"], 19);
    assert_eq!(v["result"][1]["computed"], 8);
    assert_eq!(v["result"][1]["match"], true);
}

#[test]
fn centralizer_examples() {
    let dir = tempfile::tempdir().unwrap();
    let e14 = write(&dir, "e14.json", &UTMatrix::unit(q(4), 1, 4).unwrap().to_json());
    let v = json_result(&["centralizer", "--matrix", &e14], 0);
    assert_eq!(v["result"]["oracle_dimension"], 6);
    assert_eq!(v["result"]["closed_form_dimension"], "n/a");
    let zero = write(&dir, "zero.json", &UTMatrix::zero(q(5)).to_json());
    let v = json_result(&["centralizer", "--matrix", &zero], 0);
    assert_eq!(v["result"]["oracle_dimension"], 10);
}

#[test]
fn identities_summary() {
    let v = json_result(&["identities", "--r-max", "8", "--seed", "3", "--trials", "10"], 0);
    let s = &v["result"]["summary"];
    assert_eq!(s["factorial_inequality_holds"], true);
    assert_eq!(s["power_literal_display_mismatches_for_t_ge_2"], true);
    assert_eq!(s["power_corrected_candidate_matches"], true);
    assert_eq!(v["result"]["seed"], 3);
}

#[test]
fn sweep_rows_and_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_nilcentral"))
        .args(["sweep", "--r", "5,4", "--p", "Q,101"])
        .env("NILCENTRAL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "4,Q,6,19,8,19,8,true");
    assert_eq!(lines[3], "5,Q,10,31,12,31,12,true");
    assert!(lines[4].starts_with("5,101,"));
}

#[test]
fn timing_is_reported_by_default() {
    let v: Value = serde_json::from_slice(&run(&["span", "--r", "4"]).stdout).unwrap();
    assert!(v["timing_ms"].is_u64());
    assert_eq!(v["context"]["r"], 4);
    assert_eq!(v["result"]["rank"], 6);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["span"]).status.code(), Some(2));
    assert_eq!(run(&["span", "--r", "1"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--map", "/no/such/file", "--property", "commuting"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--map", "x", "--property", "normal"]).status.code(), Some(2));
}
