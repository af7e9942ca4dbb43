use std::fs;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn affq(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_affq"));
    cmd.env_remove("AFFQ_CACHE").args(args);
    if let Some(c) = cache {
        cmd.arg("--cache").arg(c);
    }
    cmd.output().expect("spawn affq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn kostant_count_and_listing() {
    let o = affq(&["kostant", "--n", "2", "--alpha", "1,1", "--flavor", "sl", "--count"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
    let o = affq(&["kostant", "--n", "2", "--alpha", "1,1"], None);
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = affq(&["--json", "kostant", "--n", "2", "--alpha", "1,1", "--count"], None);
    assert_eq!(stdout(&o), "{\"alpha\":\"1,1\",\"count\":3,\"flavor\":\"gl\",\"n\":2}\n");
}

#[test]
fn hall_polynomial_count_and_product() {
    let base = ["hall", "--n", "2", "--w", "2*(0,1)", "--sub", "(0,1)", "--quot", "(0,1)"];
    assert_eq!(stdout(&affq(&base, None)), "1 + q\n");
    let mut at3 = base.to_vec();
    at3.extend(["--q", "3"]);
    assert_eq!(stdout(&affq(&at3, None)), "4\n");
    let o = affq(&["hall", "--n", "2", "--left", "(0,1)", "--right", "(1,1)", "--mode", "q1"], None);
    assert_eq!(stdout(&o), "1*<(0,1)+(1,1)> + 1*<(1,2)>\n");
    // the sub can only be the tail of the segment
    let head = ["hall", "--n", "2", "--w", "(0,2)", "--sub", "(0,1)", "--quot", "(1,1)"];
    assert_eq!(stdout(&affq(&head, None)), "0\n");
    let mut swapped = head.to_vec();
    swapped.push("--swapped");
    assert_eq!(stdout(&affq(&swapped, None)), "1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(affq(&["serre", "--n", "2"], None).status.code(), Some(0));
    assert_eq!(affq(&["kostant", "--n", "2"], None).status.code(), Some(2));
    assert_eq!(affq(&["kostant", "--n", "2", "--alpha", "1,x"], None).status.code(), Some(2));
    let o = affq(&["--json", "semismall-audit", "--n", "2", "--max-weight", "9"], None);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(v["error"], "budget_exceeded");
    let o = affq(&["--hall-budget", "2", "hall", "--n", "2", "--w", "3*(0,1)", "--sub", "(0,1)", "--quot", "2*(0,1)"], None);
    assert_eq!(o.status.code(), Some(3));
    // two points at one coordinate are not a generic configuration
    let o = affq(&["ic-stalk", "--n", "2", "--colored", "1,0:x", "--colored", "0,1:x"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stalk_commands() {
    let o = affq(&["ic-stalk", "--n", "2", "--colored", "1,1:x1"], None);
    assert_eq!(stdout(&o), "t^2 + t^4\n");
    let o = affq(&["push-stalk", "--n", "2", "--colored", "1,1:x1"], None);
    assert_eq!(stdout(&o), "2*t^2 + t^4\n");
    let o = affq(&["decomp-check", "--n", "2", "--punctual", "2:y1", "--colored", "1,0:x1"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("OK: "));
    let o = affq(&["decomp-check", "--n", "3", "--max-weight", "3", "--support"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("OK: ") && stdout(&o).ends_with(" strata checked\n"));
}

#[test]
fn audits_report_zero_violations() {
    let o = affq(&["semismall-audit", "--n", "3", "--max-weight", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().ends_with(" 0 violations"));
    let o = affq(&["hecke-audit", "--n", "2", "--max-alpha", "1", "--max-gamma", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = affq(&["hecke-audit", "--n", "2", "--alpha", "0,0", "--gamma", "1,0", "--point", "1,0:0:(0,1)"], None);
    assert!(stdout(&o).contains("top=true predicted_top=true"));
}

#[test]
fn closure_queries() {
    let o = affq(&["closure", "--n", "2", "--left", "2*(0,1)", "--right", "(0,1)+(0,1)"], None);
    assert_eq!(stdout(&o), "true\n");
    let o = affq(&["closure", "--n", "2", "--left", "(0,2)", "--right", "(0,1)+(1,1)"], None);
    assert_eq!(stdout(&o), "false\n");
    let o = affq(&["closure", "--n", "2", "--hasse", "1,1"], None);
    assert_eq!(stdout(&o), "(0,1)+(1,1) < (0,2)\n(0,1)+(1,1) < (1,2)\n");
}

#[test]
fn adhm_commands() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("d.json");
    fs::write(&good, r#"{"a":2,"n":1,"B1":[["1","0"],["0","2"]],"B2":[["3","0"],["0","5"]],"i":[["0"],["0"]],"j":[["0","0"]]}"#).unwrap();
    let g = good.to_str().unwrap();
    assert_eq!(stdout(&affq(&["theta", "--datum", g], None)), "15 - 8*t + t^2\n");
    assert_eq!(stdout(&affq(&["theta", "--datum", g, "--transform", "1,0,1,1,0,2"], None)), "54 - 15*t + t^2\n");
    let o = affq(&["adhm-check", "--datum", g, "--transform", "2,1,1,1,0,1/2", "--points", "1,2;3/2,4"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"a":1,"n":1,"B1":[[1]],"B2":[[3]],"i":[[1]],"j":[[1]]}"#).unwrap();
    assert_eq!(affq(&["adhm-check", "--datum", bad.to_str().unwrap()], None).status.code(), Some(1));
    assert_eq!(affq(&["theta", "--datum", g, "--transform", "1,1,1,1,0,0"], None).status.code(), Some(2));
}

#[test]
fn cache_is_written_reused_and_verified() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("hall.jsonl");
    let o = affq(&["hall", "--n", "2", "--left", "(0,1)", "--right", "(0,1)+(1,1)"], Some(&cache));
    assert_eq!(o.status.code(), Some(0));
    let first = fs::read_to_string(&cache).unwrap();
    assert!(!first.is_empty());
    let again = affq(&["hall", "--n", "2", "--left", "(0,1)", "--right", "(0,1)+(1,1)"], Some(&cache));
    assert_eq!(stdout(&again), stdout(&o));
    assert_eq!(fs::read_to_string(&cache).unwrap(), first);
    let v = affq(&["hall", "--verify-cache"], Some(&cache));
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("OK: "));

    // a tampered record is caught by verification and never trusted
    fs::write(&cache, r#"{"v":1,"n":2,"W":"2*(0,1)","sub":"(0,1)","quot":"(0,1)","coeffs":[5],"q_samples":[2,3,4]}"#).unwrap();
    assert_eq!(affq(&["hall", "--verify-cache"], Some(&cache)).status.code(), Some(1));
    let o = affq(&["hall", "--n", "2", "--w", "2*(0,1)", "--sub", "(0,1)", "--quot", "(0,1)"], Some(&cache));
    assert_eq!(stdout(&o), "1 + q\n");
    assert!(stderr(&o).contains("failed re-verification"));
    assert!(fs::read_to_string(&cache).unwrap().contains("\"coeffs\":[1,1]"));
    assert_eq!(affq(&["hall", "--no-cache", "--verify-cache"], Some(&cache)).status.code(), Some(0));
}

#[test]
fn concurrent_writers_keep_every_record() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("hall.jsonl");
    let jobs = [("(0,1)", "(1,1)"), ("(1,1)", "(0,1)"), ("(0,1)", "(0,1)"), ("(1,1)", "(1,1)"), ("(0,2)", "(0,1)")];
    let children: Vec<_> = jobs
        .iter()
        .map(|(l, r)| {
            Command::new(env!("CARGO_BIN_EXE_affq"))
                .args(["hall", "--n", "2", "--left", l, "--right", r, "--cache"])
                .arg(&cache)
                .stdout(Stdio::null())
                .spawn()
                .unwrap()
        })
        .collect();
    for mut c in children {
        assert!(c.wait().unwrap().success());
    }
    let text = fs::read_to_string(&cache).unwrap();
    for (l, r) in jobs {
        let solo = dir.path().join("solo.jsonl");
        let _ = fs::remove_file(&solo);
        affq(&["hall", "--n", "2", "--left", l, "--right", r], Some(&solo));
        for line in fs::read_to_string(&solo).unwrap().lines() {
            assert!(text.lines().any(|t| t == line), "lost {line}");
        }
    }
}
