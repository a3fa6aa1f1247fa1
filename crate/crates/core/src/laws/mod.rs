//! The law engine: a registry of statements, checked by exhaustive
//! enumeration against any cartesian effect category.
//!
//! Most statements are term equations read from `registry.eql`. A few
//! properties are not equations between terms (purity closure, agreement of
//! the two pure-pair constructions) and are coded directly in [`custom`].

pub mod custom;
mod report;

pub use report::{
    LawCheck, LawReport, ObjectValue, Quantifier, SkipReport, Status, Summary, SymbolValue, WitnessReport,
};

use crate::effect::CartesianEffectCategory;
use crate::error::{Error, Result};
use crate::semantics::{check_statement, is_counterexample, Assignment, Bounds, Outcome, Statement};
use crate::syntax::{parse_blocks, Judgment, LawKind, LawSpec};
use std::sync::OnceLock;

const REGISTRY: &str = include_str!("registry.eql");

/// Suites of the registry, in presentation order.
pub const SUITES: &[&str] =
    &["category", "effect", "semi", "basic", "decorated", "sequential", "projections", "negative"];

/// Every registry statement, in file order.
pub fn specs() -> &'static [LawSpec] {
    static SPECS: OnceLock<Vec<LawSpec>> = OnceLock::new();
    SPECS.get_or_init(|| {
        let blocks = parse_blocks(REGISTRY, &["law", "diagnostic", "negative"]).expect("registry parses");
        blocks
            .into_iter()
            .map(|b| {
                for j in b.hyps.iter().chain(std::iter::once(&b.show)) {
                    if let Err(e) = b.decls.check_judgment(j) {
                        panic!("registry entry {}: {e}", b.id);
                    }
                }
                LawSpec {
                    kind: match b.kind.as_str() {
                        "law" => LawKind::Law,
                        "diagnostic" => LawKind::Diagnostic,
                        _ => LawKind::Negative,
                    },
                    suite: b.suite.unwrap_or_else(|| panic!("registry entry {} has no suite", b.id)),
                    id: b.id,
                    says: b.says,
                    decls: b.decls,
                    hyps: b.hyps,
                    show: b.show,
                }
            })
            .collect()
    })
}

pub fn spec(id: &str) -> Option<&'static LawSpec> {
    specs().iter().find(|s| s.id == id)
}

/// `h1, h2 ⊢ show`, or just `show`.
pub fn render_statement(hyps: &[Judgment], show: &Judgment) -> String {
    if hyps.is_empty() {
        show.to_string()
    } else {
        let hs: Vec<String> = hyps.iter().map(|h| h.to_string()).collect();
        format!("{} ⊢ {show}", hs.join(", "))
    }
}

/// One line of the check inventory.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ManifestEntry {
    pub id: String,
    pub kind: LawKind,
    pub suite: String,
    pub statement: String,
}

/// The full inventory: registry statements, coded checks, Arrow laws and
/// the Kleisli translation checks.
pub fn manifest() -> Vec<ManifestEntry> {
    let mut out: Vec<ManifestEntry> = specs()
        .iter()
        .map(|s| ManifestEntry {
            id: s.id.clone(),
            kind: s.kind,
            suite: s.suite.clone(),
            statement: render_statement(&s.hyps, &s.show),
        })
        .collect();
    for c in custom::CHECKS {
        out.push(ManifestEntry {
            id: c.id.into(),
            kind: c.kind,
            suite: c.suite.into(),
            statement: c.statement.into(),
        });
    }
    for (id, statement) in crate::arrow::LAWS {
        out.push(ManifestEntry { id: (*id).into(), kind: LawKind::Law, suite: "arrows".into(), statement: (*statement).into() });
    }
    out.push(ManifestEntry {
        id: crate::arrow::FANOUT_ID.into(),
        kind: LawKind::Negative,
        suite: "arrows".into(),
        statement: crate::arrow::FANOUT_STATEMENT.into(),
    });
    for (id, statement) in crate::translation::CHECKS {
        out.push(ManifestEntry { id: (*id).into(), kind: LawKind::Law, suite: "kleisli".into(), statement: (*statement).into() });
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Tab-separated `id kind suite`, one per line; checked in as `law_manifest.txt`.
pub fn manifest_text() -> String {
    manifest()
        .iter()
        .map(|e| {
            let kind = serde_json::to_value(e.kind).expect("kind").as_str().expect("string").to_string();
            format!("{}\t{}\t{}\n", e.id, kind, e.suite)
        })
        .collect()
}

/// Ids of the engine's checks (registry plus coded ones) in a suite.
pub fn suite_ids(suite: &str) -> Vec<String> {
    let mut ids: Vec<String> = specs().iter().filter(|s| s.suite == suite).map(|s| s.id.clone()).collect();
    ids.extend(custom::CHECKS.iter().filter(|c| c.suite == suite).map(|c| c.id.to_string()));
    ids
}

/// Every id the engine can run.
pub fn all_ids() -> Vec<String> {
    SUITES.iter().flat_map(|s| suite_ids(s)).collect()
}

/// Enumeration limits shared by all checks of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawConfig {
    pub max_size: usize,
    pub budget: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { max_size: 2, budget: 1_000_000 }
    }
}

impl LawConfig {
    pub fn bounds(&self) -> Bounds {
        Bounds::up_to(self.max_size, self.budget)
    }
}

/// Converts an enumeration outcome into a report entry, rechecking any
/// counterexample with `recheck`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn verdict<M: std::fmt::Display>(
    id: &str,
    kind: LawKind,
    suite: &str,
    says: &str,
    statement: String,
    quantifiers: Vec<Quantifier>,
    instance: String,
    outcome: &Outcome<M>,
    recheck: impl Fn(&Assignment<M>) -> Result<bool>,
) -> LawCheck {
    let mut c = LawCheck {
        id: id.into(),
        kind,
        suite: suite.into(),
        says: says.into(),
        statement,
        quantifiers,
        status: Status::Pass,
        witness: None,
        reason: None,
        instance,
        object_tuples: 0,
        tuples: 0,
        skipped: Vec::new(),
    };
    match outcome {
        Outcome::Holds { object_tuples, tuples, skipped } => {
            c.object_tuples = *object_tuples;
            c.tuples = *tuples;
            c.skipped = skipped.iter().map(Into::into).collect();
            c.status = if *object_tuples == 0 && !skipped.is_empty() {
                c.reason = Some(format!("all {} object assignments exceed the budget", skipped.len()));
                Status::Skipped
            } else {
                match kind {
                    LawKind::Law => Status::Pass,
                    LawKind::Diagnostic => Status::Holds,
                    LawKind::Negative => Status::NotFound,
                }
            };
        }
        Outcome::Violated { witness, object_tuples, tuples, error } => {
            c.object_tuples = *object_tuples;
            c.tuples = *tuples;
            let rechecked = error.is_none() && matches!(recheck(witness), Ok(true));
            c.witness = Some(WitnessReport::new(witness, rechecked, error.clone()));
            c.status = match kind {
                LawKind::Law => Status::Fail,
                LawKind::Diagnostic => Status::Refuted,
                LawKind::Negative => Status::Found,
            };
            if error.is_some() {
                c.status = Status::Fail;
                c.reason = Some("evaluation error".into());
            }
        }
    }
    c
}

/// Runs one statement, returning the entry and any typed counterexample.
pub fn run_check<I: CartesianEffectCategory>(
    inst: &I,
    id: &str,
    config: &LawConfig,
) -> Result<(LawCheck, Option<Assignment<I::Morphism>>)> {
    let bounds = config.bounds();
    if let Some(s) = spec(id) {
        let st = Statement { decls: &s.decls, hyps: &s.hyps, show: &s.show };
        let outcome = check_statement(inst, st, &bounds)?;
        let check = verdict(
            &s.id,
            s.kind,
            &s.suite,
            &s.says,
            render_statement(&s.hyps, &s.show),
            Quantifier::from_decls(&s.decls),
            inst.descriptor(),
            &outcome,
            |a| is_counterexample(inst, st, a),
        );
        return Ok((check, witness_of(outcome)));
    }
    if let Some(c) = custom::info(id) {
        let decls = c.decls();
        let outcome = custom::sweep(inst, c, &decls, &bounds)?;
        let check = verdict(
            c.id,
            c.kind,
            c.suite,
            c.says,
            c.statement.into(),
            Quantifier::from_decls(&decls),
            inst.descriptor(),
            &outcome,
            |a| custom::is_counterexample(inst, c, a),
        );
        return Ok((check, witness_of(outcome)));
    }
    Err(Error::UnknownCheckId(id.into()))
}

fn witness_of<M>(o: Outcome<M>) -> Option<Assignment<M>> {
    match o {
        Outcome::Violated { witness, .. } => Some(witness),
        Outcome::Holds { .. } => None,
    }
}

/// Runs the selected checks. Unknown ids are rejected before anything runs.
pub fn run_suite<I: CartesianEffectCategory>(
    inst: &I,
    suite: &str,
    ids: &[String],
    config: &LawConfig,
) -> Result<LawReport> {
    if let Some(bad) = ids.iter().find(|id| spec(id).is_none() && custom::info(id).is_none()) {
        return Err(Error::UnknownCheckId(bad.clone()));
    }
    let mut checks = Vec::with_capacity(ids.len());
    for id in ids {
        checks.push(run_check(inst, id, config)?.0);
    }
    Ok(LawReport::new(suite, inst.descriptor(), config.max_size, config.budget, checks))
}

/// The effect-category axioms, the purity closure checks and the two
/// diagnostics (symmetry, replacement for all morphisms).
pub fn check_effect_axioms<I: CartesianEffectCategory>(inst: &I, config: &LawConfig) -> Result<LawReport> {
    run_suite(inst, "effect", &suite_ids("effect"), config)
}

pub fn purity_closure_check<I: CartesianEffectCategory>(inst: &I, config: &LawConfig) -> Result<LawReport> {
    let ids: Vec<String> = custom::CHECKS
        .iter()
        .filter(|c| c.id.starts_with("purity.") || c.id.starts_with("diag.purity."))
        .map(|c| c.id.to_string())
        .collect();
    run_suite(inst, "purity", &ids, config)
}

/// First counterexample, in enumeration order, to a registered negative claim.
pub fn find_witness<I: CartesianEffectCategory>(
    inst: &I,
    id: &str,
    config: &LawConfig,
) -> Result<Option<Assignment<I::Morphism>>> {
    match spec(id) {
        Some(s) if s.kind == LawKind::Negative => Ok(run_check(inst, id, config)?.1),
        _ => Err(Error::UnknownCheckId(format!("{id} is not a registered negative claim"))),
    }
}

/// Independently re-evaluates a candidate counterexample for any check.
/// `Ok(true)` means the assignment does violate the statement.
pub fn recheck<I: CartesianEffectCategory>(inst: &I, id: &str, a: &Assignment<I::Morphism>) -> Result<bool> {
    if let Some(s) = spec(id) {
        return is_counterexample(inst, Statement { decls: &s.decls, hyps: &s.hyps, show: &s.show }, a);
    }
    if let Some(c) = custom::info(id) {
        return custom::is_counterexample(inst, c, a);
    }
    Err(Error::UnknownCheckId(id.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{PartialMaps, StateMaps};

    #[test]
    fn manifest_matches_checked_in_copy() {
        let expected = include_str!("../../law_manifest.txt");
        assert_eq!(manifest_text(), expected, "regenerate law_manifest.txt with `effcat --format text`");
    }

    #[test]
    fn ids_are_unique() {
        let m = manifest();
        for w in m.windows(2) {
            assert_ne!(w[0].id, w[1].id);
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let r = run_suite(&PartialMaps, "x", &["no.such.law".to_string()], &LawConfig::default());
        assert_eq!(r.unwrap_err(), Error::UnknownCheckId("no.such.law".into()));
        assert!(find_witness(&PartialMaps, "def.effect.reflexive", &LawConfig::default()).is_err());
    }

    #[test]
    fn empty_object_range_passes_vacuously() {
        let config = LawConfig { max_size: 0, budget: 10 };
        let r = check_effect_axioms(&PartialMaps, &config).unwrap();
        assert!(r.checks.iter().filter(|c| c.kind == LawKind::Law).all(|c| c.status == Status::Pass));
        assert!(r.checks.iter().all(|c| c.tuples == 0));
    }

    #[test]
    fn diagnostics_split_the_models() {
        let config = LawConfig::default();
        let p = check_effect_axioms(&PartialMaps, &config).unwrap();
        assert!(p.ok());
        assert_eq!(p.check("diag.semi_symmetric").unwrap().status, Status::Refuted);
        assert_eq!(p.check("diag.replacement_all").unwrap().status, Status::Holds);
        let s = check_effect_axioms(&StateMaps::new(2).unwrap(), &config).unwrap();
        assert!(s.ok());
        assert_eq!(s.check("diag.semi_symmetric").unwrap().status, Status::Holds);
        assert_eq!(s.check("diag.replacement_all").unwrap().status, Status::Refuted);
    }
}
