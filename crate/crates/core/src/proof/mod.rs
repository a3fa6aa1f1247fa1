//! Checker for decorated equational proofs.
//!
//! A step is valid when its judgment is a first-order instance of the cited
//! rule's conclusion and the cited premises are instances of the rule's
//! premises under the same substitution. Rules come from a fixed table
//! (`rules.eqr`); a script may also cite another script of the corpus by
//! name, which is then used like a derived rule. There is no search: each
//! step is matched once, so checking is linear in the script size.

mod corpus;
mod matcher;

pub use corpus::{
    check_corpus, check_paths, check_sources, load_script, soundness, CorpusReport, ScriptResult,
};

use crate::syntax::{parse_blocks, Decls, Judgment, Script};
use matcher::{instantiate, Failure};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

const RULES: &str = include_str!("rules.eqr");

/// A schema: metavariables, premise patterns and a conclusion pattern.
#[derive(Debug, Clone)]
pub struct Rule {
    pub name: String,
    pub group: String,
    pub decls: Decls,
    pub premises: Vec<Judgment>,
    pub conclusion: Judgment,
}

/// The built-in rules keyed by name; a name may have several alternatives.
pub fn builtin_rules() -> &'static BTreeMap<String, Vec<Rule>> {
    static TABLE: OnceLock<BTreeMap<String, Vec<Rule>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let blocks = parse_blocks(RULES, &["rule", "axiom"]).expect("rule table parses");
        let mut out: BTreeMap<String, Vec<Rule>> = BTreeMap::new();
        for b in blocks {
            for j in b.hyps.iter().chain(std::iter::once(&b.show)) {
                if let Err(e) = b.decls.check_judgment(j) {
                    panic!("rule `{}` is ill-typed: {e}", b.id);
                }
            }
            let rule = Rule {
                name: b.id.clone(),
                group: b.suite.unwrap_or_default(),
                decls: b.decls,
                premises: b.hyps,
                conclusion: b.show,
            };
            out.entry(b.id).or_default().push(rule);
        }
        out
    })
}

/// `sym_≡` and `sym_eq` name the same rule; the ASCII form is canonical.
pub fn canonical_rule_name(name: &str) -> String {
    name.replace('≡', "eq").replace('≲', "le")
}

/// `repl_le` is shown as `repl_≲`.
pub fn display_rule_name(name: &str) -> String {
    if let Some(base) = name.strip_suffix("_le") {
        format!("{base}_≲")
    } else if let Some(base) = name.strip_suffix("_eq") {
        format!("{base}_≡")
    } else {
        name.to_string()
    }
}

/// A script seen as a derived rule.
pub fn lemma_rule(s: &Script) -> Rule {
    Rule {
        name: s.name.clone(),
        group: "lemma".into(),
        decls: s.decls.clone(),
        premises: s.assumptions.iter().map(|a| a.judgment.clone()).collect(),
        conclusion: s.goal.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    /// `step` is the offending step's label, or `header`/`goal` for problems
    /// outside the steps, or empty for a file that does not parse.
    Invalid { step: String, line: usize, reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Lemma availability as seen by one script.
#[derive(Debug, Clone, Default)]
pub struct Lemmas {
    valid: HashMap<String, Rule>,
    invalid: Vec<String>,
}

impl Lemmas {
    pub fn add_valid(&mut self, s: &Script) {
        self.valid.insert(s.name.clone(), lemma_rule(s));
    }

    pub fn add_invalid(&mut self, name: &str) {
        self.invalid.push(name.to_string());
    }
}

fn invalid(step: &str, line: usize, reason: impl Into<String>) -> Verdict {
    Verdict::Invalid { step: step.to_string(), line, reason: reason.into() }
}

/// Names cited by the steps that are not built-in rules.
pub fn cited_lemmas(s: &Script) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for st in &s.steps {
        let r = canonical_rule_name(&st.rule);
        if !builtin_rules().contains_key(&r) && r != "sym_le" && !out.contains(&st.rule) {
            out.push(st.rule.clone());
        }
    }
    out
}

/// Checks one script against the rule table and the given lemmas.
pub fn check_script(s: &Script, lemmas: &Lemmas) -> Verdict {
    if let Err(e) = s.decls.validate() {
        return invalid("header", 1, format!("type error: {e}"));
    }
    let mut known: HashMap<&str, &Judgment> = HashMap::new();
    for a in &s.assumptions {
        if let Err(e) = s.decls.check_judgment(&a.judgment) {
            return invalid(&a.label, 1, format!("type error: {e}"));
        }
        if known.insert(&a.label, &a.judgment).is_some() {
            return invalid(&a.label, 1, format!("duplicate label `({})`", a.label));
        }
    }
    if let Err(e) = s.decls.check_judgment(&s.goal) {
        return invalid("goal", s.goal_line, format!("type error: {e}"));
    }
    for st in &s.steps {
        let fail = |reason: String| invalid(&st.label, st.line, reason);
        if known.contains_key(st.label.as_str()) {
            return fail(format!("duplicate label `({})`", st.label));
        }
        if let Err(e) = s.decls.check_judgment(&st.judgment) {
            return fail(format!("type error: {e}"));
        }
        let mut premises = Vec::with_capacity(st.premises.len());
        for p in &st.premises {
            match known.get(p.as_str()) {
                Some(j) => premises.push((p.as_str(), *j)),
                None => return fail(format!("premise `({p})` is not an earlier step")),
            }
        }
        let name = canonical_rule_name(&st.rule);
        let shown = display_rule_name(&name);
        if name == "sym_le" {
            return fail("sym_≲ is not a rule".into());
        }
        let alternatives: Vec<&Rule> = match builtin_rules().get(&name) {
            Some(rs) => rs.iter().collect(),
            None => match lemmas.valid.get(&st.rule) {
                Some(r) => vec![r],
                None if lemmas.invalid.contains(&st.rule) => {
                    return fail(format!("lemma `{}` is not valid", st.rule));
                }
                None => return fail(format!("unknown rule or lemma `{}`", st.rule)),
            },
        };
        let mut best: Option<Failure> = None;
        let mut ok = false;
        for r in alternatives {
            match instantiate(r, &premises, &st.judgment, &s.decls) {
                Ok(()) => {
                    ok = true;
                    break;
                }
                Err(f) => {
                    if best.as_ref().map_or(true, |b| f.rank() > b.rank()) {
                        best = Some(f);
                    }
                }
            }
        }
        if !ok {
            let reason = match best.expect("at least one alternative") {
                Failure::Purity { var, term } if name == "repl_le" && var == "h" => {
                    format!("repl_≲ outer morphism not pure (`{term}`)")
                }
                Failure::Purity { var, term } => {
                    format!("{shown} side condition: `{var}` := `{term}` is not pure")
                }
                Failure::Type(msg) => format!("{shown} does not apply: {msg}"),
                Failure::Shape(msg) => format!("not an instance of {shown}: {msg}"),
            };
            return fail(reason);
        }
        known.insert(&st.label, &st.judgment);
    }
    match s.steps.last() {
        None => invalid("goal", s.goal_line, "script has no steps"),
        Some(last) if last.judgment != s.goal => invalid(
            &last.label,
            last.line,
            format!("goal mismatch: last step proves `{}`, goal is `{}`", last.judgment, s.goal),
        ),
        Some(_) => Verdict::Valid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_script;

    fn check(src: &str) -> Verdict {
        check_script(&parse_script(src).unwrap(), &Lemmas::default())
    }

    const HEAD: &str = "name: t\nobjects X, Y, Z\narbitrary f, g : X -> Y\narbitrary k : Y -> Z\npure w : Y -> Z\n";

    #[test]
    fn rule_table_loads() {
        let t = builtin_rules();
        assert_eq!(t["comp"].len(), 2);
        assert!(!t.contains_key("sym_le"));
        assert!(t["repl_le"][0].decls.symbol("h").unwrap().pure);
    }

    #[test]
    fn reflexivity() {
        assert_eq!(check(&format!("{HEAD}goal: f == f\n(a): f == f ; by refl\n")), Verdict::Valid);
    }

    #[test]
    fn unicode_rule_names() {
        let src = format!("{HEAD}assume (h): f <= g\ngoal: w . f <= w . g\n(a): w . f <= w . g ; by repl_≲[h]\n");
        assert_eq!(check(&src), Verdict::Valid);
    }

    #[test]
    fn impure_replacement_is_rejected() {
        let src = format!("{HEAD}assume (h): f <= g\ngoal: k . f <= k . g\n(a): k . f <= k . g ; by repl_le[h]\n");
        match check(&src) {
            Verdict::Invalid { step, reason, .. } => {
                assert_eq!(step, "a");
                assert!(reason.starts_with("repl_≲ outer morphism not pure"), "{reason}");
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn semi_symmetry_is_rejected() {
        let src = format!("{HEAD}assume (h): f <= g\ngoal: g <= f\n(a): g <= f ; by sym_≲[h]\n");
        assert!(matches!(check(&src), Verdict::Invalid { reason, .. } if reason == "sym_≲ is not a rule"));
    }

    #[test]
    fn dangling_premise_and_goal_mismatch() {
        let src = format!("{HEAD}goal: f == f\n(a): f == f ; by trans_eq[b, c]\n");
        assert!(matches!(check(&src), Verdict::Invalid { reason, .. } if reason.contains("not an earlier step")));
        let src = format!("{HEAD}goal: g == g\n(a): f == f ; by refl\n");
        assert!(matches!(check(&src), Verdict::Invalid { reason, .. } if reason.starts_with("goal mismatch")));
    }

    #[test]
    fn ill_typed_steps_are_rejected() {
        let src = format!("{HEAD}goal: f == f\n(a): f . k == f . k ; by refl\n");
        assert!(matches!(check(&src), Verdict::Invalid { reason, .. } if reason.starts_with("type error")));
    }

    #[test]
    fn comp_accepts_both_orders() {
        let src = format!(
            "{HEAD}assume (e): f == g\nassume (s): g <= f\ngoal: g <= g\n(a): f <= f ; by comp[e, s]\n(b): g <= g ; by comp[s, e]\n"
        );
        assert_eq!(check(&src), Verdict::Valid);
    }

    #[test]
    fn strong_premise_cannot_come_from_semi() {
        let src = format!("{HEAD}assume (s): f <= g\ngoal: f == g\n(a): f == g ; by trans_eq[s, s]\n");
        assert!(matches!(check(&src), Verdict::Invalid { reason, .. } if reason.starts_with("not an instance of trans_≡")));
    }
}
