//! Checking whole directories of scripts, and the semantic soundness check.

use super::{check_script, cited_lemmas, Lemmas, Verdict};
use crate::effect::CartesianEffectCategory;
use crate::error::{Error, Result};
use crate::laws::{verdict, LawCheck, LawConfig, LawReport, Quantifier, Status};
use crate::semantics::{check_statement, is_counterexample, Statement};
use crate::syntax::{parse_script, Judgment, LawKind, Script};
use serde::Serialize;
use std::collections::HashMap;
use std::path::{Path, PathBuf};

/// Per-script outcome. `script` is `None` when the file did not parse.
#[derive(Debug, Clone, Serialize)]
pub struct ScriptResult {
    pub name: String,
    pub path: String,
    pub goal: Option<String>,
    pub steps: usize,
    pub lemmas: Vec<String>,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip)]
    pub script: Option<Script>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub scripts: Vec<ScriptResult>,
    pub valid: usize,
    pub invalid: usize,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.invalid == 0
    }

    pub fn get(&self, name: &str) -> Option<&ScriptResult> {
        self.scripts.iter().find(|r| r.name == name)
    }

    /// The valid scripts, for the soundness check.
    pub fn valid_scripts(&self) -> Vec<&Script> {
        self.scripts.iter().filter(|r| r.verdict.is_valid()).filter_map(|r| r.script.as_ref()).collect()
    }

    /// One `LawCheck` per script, under suite `proofs`.
    pub fn to_law_report(&self) -> LawReport {
        let checks = self
            .scripts
            .iter()
            .map(|r| {
                let (status, reason) = match &r.verdict {
                    Verdict::Valid => (Status::Pass, None),
                    Verdict::Invalid { step, line, reason } => {
                        (Status::Fail, Some(format!("{}:{line}: step ({step}): {reason}", r.path)))
                    }
                };
                LawCheck {
                    id: format!("proof.{}", r.name),
                    kind: LawKind::Law,
                    suite: "proofs".into(),
                    says: r.path.clone(),
                    statement: r.goal.clone().unwrap_or_default(),
                    quantifiers: r.script.as_ref().map(|s| Quantifier::from_decls(&s.decls)).unwrap_or_default(),
                    status,
                    witness: None,
                    reason,
                    instance: "syntactic".into(),
                    object_tuples: 0,
                    tuples: r.steps as u64,
                    skipped: Vec::new(),
                }
            })
            .collect();
        LawReport::new("proofs", "syntactic".into(), 0, 0, checks)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.scripts {
            match &r.verdict {
                Verdict::Valid => out.push_str(&format!("valid    {:<28} {} ({} steps)\n", r.name, r.path, r.steps)),
                Verdict::Invalid { step, line, reason } => out.push_str(&format!(
                    "INVALID  {:<28} {}:{line} step ({step}): {reason}\n",
                    r.name, r.path
                )),
            }
        }
        out.push_str(&format!("{} valid, {} invalid\n", self.valid, self.invalid));
        out
    }
}

/// Reads and parses one file.
pub fn load_script(path: &Path) -> Result<Script> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_script(&text)
}

/// `.eqp` files of a directory in name order, or the file itself.
fn expand(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "eqp"))
            .collect();
        files.sort();
        Ok(files)
    } else if path.exists() {
        Ok(vec![path.to_path_buf()])
    } else {
        Err(Error::Io(format!("{}: no such file or directory", path.display())))
    }
}

/// All scripts of one directory.
pub fn check_corpus(dir: &Path) -> Result<CorpusReport> {
    if !dir.is_dir() {
        return Err(Error::Io(format!("{}: not a directory", dir.display())));
    }
    check_paths(&[dir.to_path_buf()])
}

/// Files and directories together; scripts may cite each other across them.
pub fn check_paths(paths: &[PathBuf]) -> Result<CorpusReport> {
    let mut sources = Vec::new();
    for p in paths {
        for f in expand(p)? {
            let text = std::fs::read_to_string(&f).map_err(|e| Error::Io(format!("{}: {e}", f.display())))?;
            sources.push((f.display().to_string(), text));
        }
    }
    Ok(check_sources(&sources))
}

/// Checks `(path, text)` pairs. Cited lemmas are checked first; a cycle or
/// a duplicate name makes the script invalid.
pub fn check_sources(sources: &[(String, String)]) -> CorpusReport {
    let mut results: Vec<ScriptResult> = Vec::with_capacity(sources.len());
    let mut by_name: HashMap<String, usize> = HashMap::new();
    for (path, text) in sources {
        let stem = Path::new(path).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        match parse_script(text) {
            Ok(s) => {
                let duplicate = by_name.contains_key(&s.name);
                let r = ScriptResult {
                    name: s.name.clone(),
                    path: path.clone(),
                    goal: Some(s.goal.to_string()),
                    steps: s.steps.len(),
                    lemmas: cited_lemmas(&s),
                    verdict: if duplicate {
                        Verdict::Invalid { step: "header".into(), line: 1, reason: format!("duplicate script name `{}`", s.name) }
                    } else {
                        Verdict::Valid
                    },
                    script: Some(s),
                };
                if !duplicate {
                    by_name.insert(r.name.clone(), results.len());
                }
                results.push(r);
            }
            Err(e) => {
                let (line, reason) = match &e {
                    Error::Parse { line, .. } => (*line, e.to_string()),
                    _ => (0, e.to_string()),
                };
                results.push(ScriptResult {
                    name: stem,
                    path: path.clone(),
                    goal: None,
                    steps: 0,
                    lemmas: Vec::new(),
                    verdict: Verdict::Invalid { step: String::new(), line, reason },
                    script: None,
                });
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Todo,
        Active,
        Done,
    }
    let mut state: Vec<State> = results
        .iter()
        .map(|r| if r.script.is_some() && r.verdict.is_valid() { State::Todo } else { State::Done })
        .collect();

    fn visit(i: usize, results: &mut [ScriptResult], state: &mut [State], by_name: &HashMap<String, usize>) {
        state[i] = State::Active;
        let mut lemmas = Lemmas::default();
        let mut cycle = None;
        for dep in results[i].lemmas.clone() {
            let Some(&j) = by_name.get(&dep) else { continue };
            match state[j] {
                State::Active => {
                    cycle = Some(dep.clone());
                    continue;
                }
                State::Todo => visit(j, results, state, by_name),
                State::Done => {}
            }
            let dep_script = results[j].script.as_ref().expect("parsed");
            if results[j].verdict.is_valid() {
                lemmas.add_valid(dep_script);
            } else {
                lemmas.add_invalid(&dep);
            }
        }
        let s = results[i].script.as_ref().expect("parsed");
        results[i].verdict = match cycle {
            Some(dep) => Verdict::Invalid { step: "header".into(), line: 1, reason: format!("cyclic citation of `{dep}`") },
            None => check_script(s, &lemmas),
        };
        state[i] = State::Done;
    }

    for i in 0..results.len() {
        if state[i] == State::Todo {
            visit(i, &mut results, &mut state, &by_name);
        }
    }
    let valid = results.iter().filter(|r| r.verdict.is_valid()).count();
    let invalid = results.len() - valid;
    CorpusReport { scripts: results, valid, invalid }
}

/// Every valid script's goal, under its assumptions, evaluated in `inst`
/// over all assignments within `config`.
pub fn soundness<I: CartesianEffectCategory>(inst: &I, scripts: &[&Script], config: &LawConfig) -> Result<LawReport> {
    let bounds = config.bounds();
    let mut checks: Vec<LawCheck> = Vec::with_capacity(scripts.len());
    for s in scripts {
        let hyps: Vec<Judgment> = s.assumptions.iter().map(|a| a.judgment.clone()).collect();
        let st = Statement { decls: &s.decls, hyps: &hyps, show: &s.goal };
        let outcome = check_statement(inst, st, &bounds)?;
        let statement = crate::laws::render_statement(&hyps, &s.goal);
        checks.push(verdict(
            &format!("sound.{}", s.name),
            LawKind::Law,
            "soundness",
            "goal of a valid script holds in the model",
            statement,
            Quantifier::from_decls(&s.decls),
            inst.descriptor(),
            &outcome,
            |a| is_counterexample(inst, st, a),
        ));
    }
    Ok(LawReport::new("soundness", inst.descriptor(), config.max_size, config.budget, checks))
}
