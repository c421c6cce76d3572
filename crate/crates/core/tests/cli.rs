use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use selection_games::game::Strategy;
use selection_games::harness::{corpus, corpus_pairs, Scenario};
use selection_games::orders::RelPair;
use selection_games::transforms::TranslationPack;

fn selgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selgame")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    selgame(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(selgame(args).stdout).unwrap()
}

fn scenario_file(dir: &Path, name: &str) -> PathBuf {
    let sc = corpus().into_iter().find(|s| s.name == name).expect("corpus entry");
    let p = dir.join(format!("{name}.json"));
    std::fs::write(&p, sc.emit()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["solve"]), 1);
    assert_eq!(code(&["solve", "/nonexistent/file.json"]), 1);
    assert_eq!(code(&["fuzz", "--suite", "no-such-suite"]), 1);
    assert_eq!(code(&["fuzz", "--count", "0"]), 1);
    assert_eq!(code(&["synth", "pre-two", "x.json"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn solve_and_synth_follow_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let p = scenario_file(dir.path(), "point-open-d2-h1");
    assert_eq!(code(&["solve", s(&p)]), 0);
    assert_eq!(code(&["synth", "markov-two", s(&p)]), 0);
    assert_eq!(code(&["synth", "pre-one", s(&p)]), 0);
    // The expectation is tied to the scenario horizon; overriding drops it.
    assert_eq!(code(&["solve", s(&p), "--horizon", "2"]), 0);
    let out: serde_json::Value = serde_json::from_str(&stdout(&["solve", s(&p), "--horizon", "2", "--json"])).unwrap();
    assert_eq!(out["winner"], "one");
    assert_eq!(code(&["synth", "markov-two", s(&p), "--budget", "1"]), 3);
}

#[test]
fn verify_reports_counter_plays() {
    let dir = tempfile::tempdir().unwrap();
    let p = scenario_file(dir.path(), "point-open-d2-h2");
    let good = dir.path().join("good.json");
    assert_eq!(code(&["synth", "pre-one", s(&p), "--out", s(&good)]), 0);
    assert_eq!(code(&["verify", s(&p), s(&good)]), 0);
    let bad = dir.path().join("bad.json");
    let strat = Strategy::PreOne { moves: vec![0, 0] };
    std::fs::write(&bad, serde_json::to_string(&strat).unwrap()).unwrap();
    assert_eq!(code(&["verify", s(&p), s(&bad)]), 2);
    let out: serde_json::Value = serde_json::from_str(&stdout(&["verify", s(&p), s(&bad), "--json"])).unwrap();
    assert_eq!(out["winning"], false);
    assert_eq!(out["counterplays"][0]["winner"], "two");
}

#[test]
fn duality_on_corpus_pairs() {
    let dir = tempfile::tempdir().unwrap();
    for pair in corpus_pairs() {
        let p = dir.path().join("pair.json");
        std::fs::write(&p, serde_json::to_string_pretty(&pair).unwrap()).unwrap();
        assert_eq!(code(&["duality", s(&p)]), 0, "{}", pair.name);
    }
}

#[test]
fn translate_identity_pack() {
    let dir = tempfile::tempdir().unwrap();
    let p = scenario_file(dir.path(), "rothberger-d2-h2");
    let g = corpus().into_iter().find(|s| s.name == "rothberger-d2-h2").unwrap().build(None).unwrap();
    let pack = dir.path().join("pack.json");
    std::fs::write(&pack, serde_json::to_string(&TranslationPack::identity(&g)).unwrap()).unwrap();
    let out = dir.path().join("moved.json");
    assert_eq!(
        code(&["translate", s(&pack), s(&p), s(&p), "--direction", "full-two", "--out", s(&out)]),
        0
    );
    assert_eq!(code(&["verify", s(&p), s(&out)]), 0);
    assert_eq!(code(&["translate", s(&pack), s(&p), s(&p), "--direction", "sideways"]), 1);
    // A reply outside the destination move breaks the first axiom.
    let mut broken = TranslationPack::identity(&g);
    broken.t_two[0][0][0].1 = 99;
    std::fs::write(&pack, serde_json::to_string(&broken).unwrap()).unwrap();
    assert_eq!(code(&["translate", s(&pack), s(&p), s(&p), "--direction", "full-two"]), 2);
}

#[test]
fn cofinality_files() {
    let dir = tempfile::tempdir().unwrap();
    let pair = RelPair::from_pairs(3, &[(0, 2), (1, 2)], vec![0, 1, 2], vec![0, 1]).unwrap();
    let p = dir.path().join("pair.json");
    std::fs::write(&p, serde_json::to_string(&pair).unwrap()).unwrap();
    let out: serde_json::Value = serde_json::from_str(&stdout(&["cofinality", s(&p), "--json"])).unwrap();
    assert_eq!(out["cofinality"], 1);
    assert_eq!(out["witness"], serde_json::json!([2]));

    let doc = serde_json::json!({ "src": pair, "dst": pair, "phi": [2, 2, 2] });
    let t = dir.path().join("tukey.json");
    std::fs::write(&t, doc.to_string()).unwrap();
    let out: serde_json::Value = serde_json::from_str(&stdout(&["cofinality", s(&t), "--json"])).unwrap();
    assert_eq!(out["tukey"], true);
    assert_eq!(out["agree"], true);
}

#[test]
fn fuzz_reports_and_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    assert_eq!(
        code(&["fuzz", "--seed", "5", "--count", "10", "--suite", "tukey,ground", "--out", s(&out)]),
        0
    );
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
    assert_eq!(code(&["corpus", "run"]), 0);
    let names = stdout(&["corpus", "list"]);
    assert!(names.lines().count() >= corpus().len());
    let shown = stdout(&["corpus", "show", "rothberger-t3"]);
    assert_eq!(Scenario::parse(&shown).unwrap().name, "rothberger-t3");
    assert_eq!(code(&["corpus", "show", "missing"]), 1);
}
