use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netinverse")).args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_netinverse"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_family(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["family"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success());
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path.display().to_string()
}

#[test]
fn exact_on_families() {
    let tmp = tempfile::tempdir().unwrap();
    let star = write_family(tmp.path(), "star.json", &["star", "--n", "5"]);
    let text = stdout(&run(&["exact", &star]));
    assert!(text.contains("I = 1/4\n") && text.contains("I' = 1/3\n"), "{text}");

    let k4 = write_family(tmp.path(), "k4.json", &["complete", "--n", "4"]);
    let text = stdout(&run(&["exact", &k4]));
    assert!(text.contains("I = inf\n") && text.contains("I' = inf\n"), "{text}");

    let e3 = write_family(tmp.path(), "e3.json", &["empty", "--n", "3"]);
    let text = stdout(&run(&["exact", &e3]));
    assert!(text.contains("I = 0/1\n") && text.contains("I' = 0/1\n"), "{text}");

    let json: Value = serde_json::from_slice(&run(&["exact", &star, "--format", "json"]).stdout).unwrap();
    assert_eq!(json["i_prime"]["value"], "1/3");
}

#[test]
fn exact_errors() {
    let out = run_with_stdin(&["exact"], br#"{"n": 3, "bits": "01x"}"#);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bit 2"), "{}", stderr(&out));

    let out = run_with_stdin(&["exact"], b"{\"n\": 3,\n \"bits\": }");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let big = run(&["family", "empty", "--n", "26"]);
    let out = run_with_stdin(&["exact"], &big.stdout);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("limited to order 24"));
}

#[test]
fn certify_pipeline() {
    let ce = run(&["family", "counterexample", "--k", "2", "--t", "0"]);
    let out = run_with_stdin(&["certify", "--k", "2"], &ce.stdout);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no fractional 2-factor"));

    let c6 = run(&["family", "cycle", "--n", "6"]);
    let out = run_with_stdin(&["certify", "-", "--a", "2", "--b", "2"], &c6.stdout);
    assert_eq!(stdout(&out), "fractional [2,2]-factor found\n");

    let k6 = run(&["family", "complete", "--n", "6"]);
    let out = run_with_stdin(&["certify", "--k", "3"], &k6.stdout);
    let text = stdout(&out);
    assert!(text.contains("condition met") && text.contains("fractional 3-factor found"), "{text}");
}

#[test]
fn enumerate_and_explore() {
    let out = run(&["enumerate", "--n", "6", "--k", "2"]);
    assert!(stdout(&out).starts_with("(2, 4/1)\n"));
    let out = run(&["enumerate", "--n", "6", "--k", "2", "--canonical"]);
    assert!(stdout(&out).starts_with("(2, 4/1)\n"));
    let out = run(&["enumerate", "--n", "4", "--k", "2", "--delta-lo", "2", "--delta-hi", "3", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,k,delta,i_prime,witness_bits\n4,2,2,Null,\n4,2,3,inf,111111\n");
    let out = run(&["enumerate", "--n", "8", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["explore", "--n-max", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 violations"));
}

#[test]
fn family_formats() {
    let out = run(&["family", "cycle", "--n", "4", "--format", "dot"]);
    assert_eq!(stdout(&out), "graph G {\n  0;\n  1;\n  2;\n  3;\n  0 -- 1;\n  0 -- 3;\n  1 -- 2;\n  2 -- 3;\n}\n");
    let json: Value = serde_json::from_slice(&run(&["family", "extremal", "--k", "2", "--l", "3"]).stdout).unwrap();
    assert_eq!(json["n"], 8);
    assert_eq!(json["i_prime"], "5/2");
    let out = run(&["family", "extremal", "--k", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_writes_consistent_files() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("run");
    let out = run(&["solve", "--n", "7", "--k", "2", "--seed", "42", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("(delta, I'):  (2, 5/1)  (3, 5/1)"));

    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert!(manifest["timings"].is_null());
    assert_eq!(manifest["config"]["seed"], 42);
    let diversified = manifest["diversified"].as_array().unwrap();
    assert!(!diversified.is_empty());

    let mut deltas = std::collections::BTreeSet::new();
    let mut files: Vec<_> = std::fs::read_dir(dir.join("graphs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    assert_eq!(files.len(), diversified.len());
    for (path, entry) in files.iter().zip(diversified) {
        let text = stdout(&run(&["exact", path.to_str().unwrap()]));
        let delta = entry["delta"].as_u64().unwrap();
        deltas.insert(delta);
        assert!(text.contains(&format!("delta = {delta}\n")));
        assert!(text.contains(&format!("I' = {}\n", entry["i_prime"].as_str().unwrap())));
        assert!(path.with_extension("dot").exists());
    }
    assert!(deltas.iter().all(|d| *d == 2 || *d == 3));
    assert!(std::fs::read_to_string(dir.join("summary.csv")).unwrap().starts_with("n,k,delta,i_prime,count\n"));

    let timed = tmp.path().join("timed");
    run(&["solve", "--n", "7", "--k", "2", "--generations", "5", "--timings", "--out", timed.to_str().unwrap()]);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(timed.join("manifest.json")).unwrap()).unwrap();
    assert!(manifest["timings"]["total_seconds"].is_number());
}

#[test]
fn solve_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["solve", "--n", "4", "--k", "2", "--out", tmp.path().join("a").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no minimum degree is in scope"));

    let out = run(&["solve", "--n", "9", "--k", "3", "--generations", "3", "--out", tmp.path().join("b").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(stdout(&out).contains("Null"));

    let out = run(&["solve", "--n", "15", "--k", "4", "--generations", "5", "--out", tmp.path().join("c").to_str().unwrap()]);
    assert!(matches!(out.status.code(), Some(0) | Some(3)));
    assert!(stdout(&out).contains("(4, "));

    let out = run(&["solve", "--n", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["solve", "--n", "7", "--k", "2", "--mutation-rate", "1.5", "--out", tmp.path().join("d").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn benchmark_reports_agreement() {
    let out = run(&["benchmark", "--n", "6", "--k", "2", "--format", "json"]);
    assert!(out.status.success());
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["comparisons"][0]["exact"], "4/1");
    assert!(json["machine"].as_str().unwrap().contains("worker threads"));
}
