use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bottomless(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bottomless"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bottomless-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const TOWER3: &str = r#"{"rectangles":[
    {"id":0,"l":"0","r":"10","t":"1"},
    {"id":1,"l":"1","r":"9","t":"2"},
    {"id":2,"l":"2","r":"8","t":"3"}]}"#;

#[test]
fn gen_config_tower() {
    let out = bottomless(&["gen", "--kind", "config", "--config", "tower", "--m", "3"], "");
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["rectangles"].as_array().unwrap().len(), 3);
    assert_eq!(doc["provenance"]["m"], 3);
}

#[test]
fn monochromatic_tower_fails_verification() {
    let colors = scratch("mono.json");
    std::fs::write(&colors, r#"{"k":2,"colors":{"0":1,"1":1,"2":1}}"#).unwrap();
    let out = bottomless(&["verify", "--m", "3", "--k", "2", "--colors", colors.to_str().unwrap()], TOWER3);
    assert_eq!(out.status.code(), Some(3));
    let doc = json(&out);
    assert_eq!(doc["ok"], false);
    assert_eq!(doc["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn colour_then_verify() {
    let out = bottomless(&["color", "--algo", "config", "--k", "3", "--config", "tower", "--direction", "below"], TOWER3);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let colors = scratch("tower.json");
    std::fs::write(&colors, &out.stdout).unwrap();
    let out = bottomless(&["verify", "--k", "3", "--config", "tower", "--colors", colors.to_str().unwrap()], TOWER3);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn no_algorithm_is_reported_as_json() {
    let out = bottomless(&["color", "--algo", "config", "--k", "2", "--config", "tower", "--direction", "above"], TOWER3);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "no-algorithm");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(bottomless(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(bottomless(&["classify"], "not json").status.code(), Some(1));
}

#[test]
fn classify_and_oracle() {
    let doc = json(&bottomless(&["classify"], TOWER3));
    assert_eq!(doc["matrix"][0][1], "tower");
    assert_eq!(doc["traits"]["tower_free"], false);
    assert_eq!(json(&bottomless(&["oracle", "--k", "2"], TOWER3))["m_k"], 2);
    let sat = json(&bottomless(&["oracle", "--k", "2", "--m", "1"], TOWER3));
    assert_eq!(sat["sat"], false);
}

#[test]
fn adversary_defeats_first_fit() {
    let out = bottomless(&["adversary", "--strategy", "first-fit", "--k", "2", "--m", "2", "--budget", "100"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["kind"], "defeated");
    let out = bottomless(&["adversary", "--strategy", "random", "--k", "2", "--m", "3", "--budget", "3"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hitting_set_and_lift() {
    let gen = bottomless(&["gen", "--kind", "intersecting", "--n", "9", "--seed", "4"], "");
    let family = String::from_utf8(gen.stdout).unwrap();
    let set = json(&bottomless(&["hitting-set", "--d", "2"], &family));
    assert_eq!(set["shallow"], 3);
    let lift = bottomless(&["lift", "--k", "2"], &family);
    assert_eq!(lift.status.code(), Some(0));
    assert_eq!(json(&lift)["k"], 2);
}

#[test]
fn realise_a_path() {
    let branching = r#"{"vertices":[{"id":0,"parents":[]},{"id":1,"parents":[0]}],"order":[0,1]}"#;
    let doc = json(&bottomless(&["realize", "--mode", "towers-from-above"], branching));
    assert_eq!(doc["rectangles"].as_array().unwrap().len(), 2);
    let bad = r#"{"vertices":[{"id":0,"parents":[1]},{"id":1,"parents":[]}],"order":[0,1]}"#;
    assert_eq!(bottomless(&["realize", "--mode", "towers-from-above"], bad).status.code(), Some(1));
}

#[test]
fn manifests_are_reproducible() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for path in [&a, &b] {
        let out = bottomless(
            &["gen", "--kind", "hanging", "--n", "6", "--seed", "9", "--manifest", path.to_str().unwrap()],
            "",
        );
        assert_eq!(out.status.code(), Some(0));
    }
    let read = |p: &PathBuf| serde_json::from_str::<Value>(&std::fs::read_to_string(p).unwrap()).unwrap();
    let (ma, mb) = (read(&a), read(&b));
    assert_eq!(ma, mb);
    assert_eq!(ma["output_sha256"].as_str().unwrap().len(), 64);
}
