use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn cxtcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cxtcat")).args(args).env_remove("CXTCAT_MAX_SIZE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn concept_counts() {
    let out = cxtcat(&["concepts", path(&fixture("animals.cxt"))]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("10 concepts\n"));
    assert_eq!(text.lines().count(), 11);
    assert!(stdout(&cxtcat(&["concepts", path(&fixture("trivial.cxt"))])).starts_with("2 concepts\n"));
    assert!(stdout(&cxtcat(&["concepts", path(&fixture("s3.cxt"))])).starts_with("8 concepts\n"));
}

#[test]
fn json_and_table_agree() {
    let file = fixture("animals.cxt");
    let table = stdout(&cxtcat(&["concepts", path(&file)]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&cxtcat(&["concepts", path(&file), "--format", "json"]))).unwrap();
    let concepts = json["concepts"].as_array().unwrap();
    assert_eq!(concepts.len(), 10);
    for (line, c) in table.lines().skip(1).zip(concepts) {
        let labels = |v: &serde_json::Value| v.as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect::<Vec<_>>().join(", ");
        assert!(line.ends_with(&format!("{{{}}}  |  {{{}}}", labels(&c["extent"]), labels(&c["intent"]))), "{line}");
    }
}

#[test]
fn dot_draws_covers_only() {
    let dot = stdout(&cxtcat(&["concepts", path(&fixture("s3.cxt")), "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    // the cube has 12 edges; the full order would have 19 strict pairs
    assert_eq!(dot.matches("->").count(), 12);
}

#[test]
fn tensors() {
    let dir = tempfile::tempdir().unwrap();
    let triv = fixture("trivial.cxt");
    let out = dir.path().join("t.cxt");
    assert!(cxtcat(&["tensor", "--kind", "concept", path(&triv), path(&triv), "-o", path(&out)]).status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.ends_with("\n1\n1\n\n(*,*)\n(*,*)\n.\n"), "{text}");

    let lat = stdout(&cxtcat(&["tensor", "--kind", "lattice", path(&triv), path(&triv)]));
    let dims: Vec<&str> = lat.lines().skip(2).take(2).collect();
    assert_eq!(dims, ["1", "2"]);

    let animals = fixture("animals.cxt");
    assert!(cxtcat(&["tensor", "--kind", "concept", path(&animals), path(&triv), "-o", path(&out)]).status.success());
    assert!(stdout(&cxtcat(&["concepts", path(&out)])).starts_with("10 concepts\n"));
}

#[test]
fn lattice_tensor_refuses_large_factors() {
    let animals = fixture("animals.cxt");
    let out = cxtcat(&["tensor", "--kind", "lattice", path(&animals), path(&animals)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn dual_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (once, twice) = (dir.path().join("d1.cxt"), dir.path().join("d2.cxt"));
    let src = fixture("animals.cxt");
    assert!(cxtcat(&["dual", path(&src), "-o", path(&once)]).status.success());
    assert!(cxtcat(&["dual", path(&once), "-o", path(&twice)]).status.success());
    assert_eq!(fs::read(&twice).unwrap(), fs::read(&src).unwrap());
    assert_ne!(fs::read(&once).unwrap(), fs::read(&src).unwrap());
}

#[test]
fn hom_count_and_list() {
    let triv = fixture("trivial.cxt");
    assert_eq!(stdout(&cxtcat(&["hom", path(&triv), path(&triv), "--count"])), "2\n");
    let list = stdout(&cxtcat(&["hom", path(&triv), path(&triv), "--list"]));
    let bonds: Vec<serde_json::Value> = list.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(bonds.len(), 2);
    assert!(bonds.iter().all(|b| b["bond"].is_array()));
    assert_eq!(cxtcat(&["hom", path(&triv), path(&triv)]).status.code(), Some(2));
    assert_eq!(cxtcat(&["hom", path(&triv), path(&triv), "--count", "--list"]).status.code(), Some(2));
}

#[test]
fn laws_pass_and_are_deterministic() {
    let run = || cxtcat(&["laws", "--suite", "context-core", "--trials", "5", "--seed", "7", "--format", "json"]);
    let (a, b) = (run(), run());
    assert!(a.status.success());
    let mut ja: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let mut jb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    ja["duration_ms"] = 0.into();
    jb["duration_ms"] = 0.into();
    assert_eq!(ja, jb);
    assert_eq!(ja["config"]["seed"], 7);
}

#[test]
fn laws_fail_under_a_mutation() {
    let out = cxtcat(&["laws", "--suite", "category", "--trials", "5", "--mutation", "compose-no-closure"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("composite-is-morphism"));
    assert!(text.contains("FAIL"));
}

#[test]
fn laws_usage_errors() {
    assert_eq!(cxtcat(&["laws", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(cxtcat(&["laws", "--mutation", "nope"]).status.code(), Some(2));
    assert_eq!(cxtcat(&["laws", "--suite", "disco", "--max-objects", "99"]).status.code(), Some(3));
}

#[test]
fn disco_fixture_sentence() {
    let lex = fixture("lexicon.json");
    let out = cxtcat(&["disco", "--lexicon", path(&lex), "--sentence", "Alice likes Bob"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("extent: {true, likely}\n"), "{text}");
    assert!(text.contains("intent: {plausible}\n"));
    assert_eq!(text.matches("[contract").count(), 2);

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&cxtcat(&["disco", "--lexicon", path(&lex), "--sentence", "Alice likes Bob", "--format", "json"])))
            .unwrap();
    assert_eq!(json["extent"], serde_json::json!(["true", "likely"]));
    assert_eq!(json["witness"]["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn disco_reduction_failure_is_a_domain_error() {
    let out = cxtcat(&["disco", "--lexicon", path(&fixture("lexicon.json")), "--sentence", "Alice Bob"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inputs_and_caps() {
    assert_eq!(cxtcat(&["concepts", "no/such/file.cxt"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cxt");
    fs::write(&bad, "not a context\n").unwrap();
    assert_eq!(cxtcat(&["concepts", path(&bad)]).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_cxtcat"))
        .args(["concepts", path(&fixture("animals.cxt"))])
        .env("CXTCAT_MAX_SIZE", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}
