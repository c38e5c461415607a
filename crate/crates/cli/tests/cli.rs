//! End-to-end runs of the `modlab` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn modlab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn ids(r: &Value) -> Vec<String> {
    r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["claim_id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn toycase_emits_five_passing_claims() {
    let dir = tempfile::tempdir().unwrap();
    let o = modlab(&["toycase", "--q", "5"], dir.path());
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let r = report(dir.path());
    assert_eq!(r["schema"], 1);
    assert_eq!(ids(&r).len(), 5);
    for c in r["claims"].as_array().unwrap() {
        assert_eq!(c["verdict"], "pass");
        assert_eq!(c["seed"], 0);
        for key in ["location", "parameters", "witness", "runtime_ms"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
    assert!(dir.path().join("report.md").exists());
}

#[test]
fn tame_search_reports_first_three_primes() {
    let dir = tempfile::tempdir().unwrap();
    let o = modlab(
        &[
            "tame-search",
            "--p",
            "3",
            "--count",
            "3",
            "--format",
            "json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(!dir.path().join("report.md").exists());
    let r = report(dir.path());
    let c = r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["claim_id"] == "tame.lambda2-reducible")
        .unwrap();
    let ells: Vec<u64> = c["witness"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["ell"].as_u64().unwrap())
        .collect();
    assert_eq!(ells, [5, 11, 17]);
}

#[test]
fn count_jh_and_cut_verify_pass() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        modlab(&["count-jh", "--n-max", "5"], dir.path())
            .status
            .code(),
        Some(0)
    );
    let r = report(dir.path());
    assert_eq!(ids(&r), ["jh.counting-lemma", "jh.eigencharacter-oracle"]);
    assert_eq!(modlab(&["cut-verify"], dir.path()).status.code(), Some(0));
}

#[test]
fn meataxe_reads_a_representation_file() {
    let dir = tempfile::tempdir().unwrap();
    let rep = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/z5-companion-gf2.json");
    let o = modlab(&["meataxe", "--rep", rep.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let w = &report(dir.path())["claims"][0]["witness"];
    assert_eq!(w["irreducible"], true);
    assert_eq!(w["dim"], 4);
}

#[test]
fn bad_input_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        modlab(&["toycase", "--frobnicate"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        modlab(&["no-such-command"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        modlab(&["tame-search", "--p", "2"], dir.path())
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    let o = modlab(&["meataxe", "--rep", missing.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(dir.path())["claims"][0]["verdict"], "fail");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "q=7\nseed=3\n").unwrap();
    let o = modlab(
        &["toycase", "--config", conf.to_str().unwrap(), "--q", "9"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let c = &report(dir.path())["claims"][0];
    assert_eq!(c["parameters"]["q"], 9);
    assert_eq!(c["seed"], 3);
}
