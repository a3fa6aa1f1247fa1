use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn effcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effcat")).args(args).current_dir(root()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn corpus_proves() {
    let o = effcat(&["prove", "proofs"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 invalid"));
}

#[test]
fn a_mutant_fails_the_run_and_names_its_step() {
    let o = effcat(&["prove", "proofs", "crates/core/tests/data/mutations/sym_le.eqp"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("step (e2): sym_≲ is not a rule"), "{out}");
    assert!(out.contains("valid    congruence_pair"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["laws", "--max-size", "0"][..],
        &["laws", "--instance", "state", "--state-size", "0"],
        &["laws", "--suite", "nonsense"],
        &["laws", "--law", "no.such.law"],
        &["witness", "def.category.assoc"],
        &["prove", "does/not/exist.eqp"],
        &["frobnicate"],
    ] {
        assert_eq!(effcat(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn witness_search_reports_found() {
    let o = effcat(&["witness", "neg.parallelism", "--instance", "state", "--max-size", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("found"));
    // No counterexample exists without state, so the search is unsuccessful.
    let o = effcat(&["witness", "neg.parallelism", "--instance", "partial", "--max-size", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn single_laws_and_arrow_numbers() {
    let o = effcat(&["laws", "--law", "def.semi_pair.fv.q1", "--instance", "state", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "laws");
    assert_eq!(v["reports"][0]["checks"][0]["status"], "pass");
    let o = effcat(&["arrows", "--law", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reports"][0]["checks"][0]["id"], "arrow.law8");
}

#[test]
fn timing_is_opt_in_and_out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("effcat-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let o = effcat(&["kleisli", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains("wall_time_ms"));
    let o = effcat(&["kleisli", "--format", "json", "--timing"]);
    assert!(stdout(&o).contains("wall_time_ms"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn manifest_is_the_default() {
    let a = effcat(&[]);
    let b = effcat(&["manifest"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().any(|l| l.starts_with("neg.parallelism\tnegative")));
}
