use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coxtet_cli::cache::{self, CacheState, Loaded, CACHE_VERSION};
use serde_json::Value;

fn coxtet(args: &[&str]) -> Output {
    coxtet_with_cache(args, None)
}

fn coxtet_with_cache(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_coxtet"));
    c.args(args).env_remove("COXTET_CACHE_DIR");
    if let Some(dir) = cache {
        c.env("COXTET_CACHE_DIR", dir);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let s = schema(name);
    let compiled = jsonschema::JSONSchema::compile(&s).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{name}: {msgs:?}");
}

#[test]
fn json_exports_match_their_schemas() {
    for (cmd, name) in [
        (vec!["enumerate"], "catalog"),
        (vec!["volumes"], "volumes"),
        (vec!["search", "--fundamental", "H10"], "family"),
        (vec!["second-type"], "second_type"),
        (vec!["certify", "--fundamental", "H11"], "certify"),
        (vec!["report"], "report"),
    ] {
        let mut args = cmd.clone();
        args.extend(["--format", "json"]);
        let o = coxtet(&args);
        assert_eq!(o.status.code(), Some(0), "{cmd:?}: {}", stderr(&o));
        let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_valid(name, &doc);
    }
}

#[test]
fn schemas_reject_malformed_documents() {
    let o = coxtet(&["enumerate", "--format", "json"]);
    let mut doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    doc["entries"][0]["vertices"] = Value::from("XYZ");
    let s = schema("catalog");
    assert!(!jsonschema::JSONSchema::compile(&s).unwrap().is_valid(&doc));
}

#[test]
fn enumerate_with_larger_labels_writes_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.json");
    let o = coxtet(&["enumerate", "--max-label", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["entries"].as_array().unwrap().len(), 32);
}

#[test]
fn out_directory_gets_a_named_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = coxtet(&["volumes", "--format", "json", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("volumes.json").exists());
    assert!(o.stdout.is_empty());
}

#[test]
fn search_by_seed_key_lists_the_table() {
    let key_of = |spec: &str| {
        let o = coxtet(&["search", "--fundamental", spec, "--format", "json"]);
        let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
        doc["seed_key"].as_str().unwrap().to_string()
    };
    let seed = key_of("[3,3,6]");
    assert_eq!(key_of("H10"), seed);
    assert_eq!(key_of("03:3,12:6,23:3"), seed);

    let o = coxtet(&["search", "--fundamental", &seed, "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let tuples: Vec<&str> = text.lines().filter(|l| l.starts_with("| ") && l.contains(" ; ")).collect();
    assert_eq!(tuples.len(), 19);
    let last = tuples.last().unwrap();
    assert!(last.contains("(24,8 ; "), "{last}");
    let nums: Vec<usize> = last.split(['(', ')']).nth(1).unwrap().replace(';', ",").split(',').map(|x| x.trim().parse().unwrap()).collect();
    // the largest entry doubles an entry of 12 tiles along one of its faces
    assert_eq!(nums[2], nums[3]);
    assert_eq!(nums[4], nums[5]);
    let half = tuples.iter().find(|l| l.starts_with(&format!("| {} |", nums[2]))).unwrap();
    assert!(half.contains("(12,7 ; "), "{half}");
}

#[test]
fn dot_output_has_a_graph_per_entry() {
    let o = coxtet(&["enumerate", "--format", "dot"]);
    assert_eq!(stdout(&o).matches("graph \"").count(), 32);
    let o = coxtet(&["search", "--fundamental", "H12", "--format", "dot"]);
    assert_eq!(stdout(&o).matches("graph \"").count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(coxtet(&["second-type"]).status.code(), Some(0));
    assert_eq!(coxtet(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(coxtet(&["enumerate", "--no-such-flag"]).status.code(), Some(64));
    assert_eq!(coxtet(&["--help"]).status.code(), Some(0));
    assert_eq!(coxtet(&["volumes", "--format", "dot"]).status.code(), Some(64));
    assert_eq!(coxtet(&["search", "--fundamental", "[3,3,3]"]).status.code(), Some(64));
    assert_eq!(coxtet(&["search", "--fundamental", "nonsense"]).status.code(), Some(64));
    assert_eq!(coxtet(&["enumerate", "--jobs", "0"]).status.code(), Some(64));
    // integrality cannot be decided at an absurd tolerance
    let o = coxtet(&["volumes", "--tol-volume", "1e-30"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn empty_catalog_breaks_the_classification() {
    // with right angles only there is nothing hyperbolic to classify
    let o = coxtet(&["second-type", "--max-label", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certification_seed_is_recorded() {
    let o = coxtet(&["certify", "--fundamental", "H1", "--seed", "99", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["seed"], 99);
    assert_eq!(doc["failed"], 0);
}

#[test]
fn empty_cache_state_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let s = CacheState::empty("k");
    cache::save(dir.path(), &s).unwrap();
    match cache::load(dir.path(), "k") {
        Loaded::Hit(t) => assert_eq!(t, s),
        other => panic!("{other:?}"),
    }
    assert!(matches!(cache::load(dir.path(), "other"), Loaded::Mismatch));
}

#[test]
fn cached_state_round_trips_and_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let first = coxtet_with_cache(&["report"], Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    assert!(cache::cache_file(dir.path()).exists());

    let text = std::fs::read_to_string(cache::cache_file(dir.path())).unwrap();
    let state: CacheState = serde_json::from_str(&text).unwrap();
    assert_eq!(state.catalog.as_ref().unwrap().len(), 32);
    assert_eq!(state.families.len(), 32);
    let keys: Vec<Vec<String>> = state.families.values().map(|f| f.entries.iter().map(|d| d.key.clone()).collect()).collect();

    let again = tempfile::tempdir().unwrap();
    cache::save(again.path(), &state).unwrap();
    let Loaded::Hit(back) = cache::load(again.path(), &state.settings) else { panic!("reload failed") };
    let back_keys: Vec<Vec<String>> = back.families.values().map(|f| f.entries.iter().map(|d| d.key.clone()).collect()).collect();
    assert_eq!(back_keys, keys);
    assert_eq!(back, state);

    let second = coxtet_with_cache(&["report"], Some(dir.path()));
    assert_eq!(second.stdout, first.stdout);
    assert!(!stderr(&second).contains("warning"));
}

#[test]
fn stale_or_corrupt_cache_is_recomputed_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let reference = coxtet(&["search", "--fundamental", "H11"]);

    let file = cache::cache_file(dir.path());
    std::fs::write(&file, format!("{{\"schema_version\": {}}}", CACHE_VERSION + 1)).unwrap();
    let o = coxtet_with_cache(&["search", "--fundamental", "H11"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("stale"), "{}", stderr(&o));
    assert!(stderr(&o).contains("1 warning"));
    assert_eq!(o.stdout, reference.stdout);
    assert!(matches!(cache::load(dir.path(), &read_settings(&file)), Loaded::Hit(_)));

    std::fs::write(&file, "{ not json").unwrap();
    let o = coxtet_with_cache(&["search", "--fundamental", "H11"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("unreadable"));
    assert_eq!(o.stdout, reference.stdout);
}

fn read_settings(file: &Path) -> String {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    v["settings"].as_str().unwrap().to_string()
}
