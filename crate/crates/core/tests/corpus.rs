use effcat::instances::{PartialMaps, StateMaps};
use effcat::laws::{LawConfig, Status};
use effcat::proof::{check_corpus, check_paths, check_sources, soundness, Verdict};
use std::path::{Path, PathBuf};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../proofs")
}

fn mutation(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/mutations").join(file)
}

#[test]
fn shipped_corpus_is_valid() {
    let r = check_corpus(&corpus_dir()).unwrap();
    for s in &r.scripts {
        assert!(s.verdict.is_valid(), "{}: {:?}", s.name, s.verdict);
    }
    assert!(r.valid >= 8);
    for name in [
        "congruence_pair",
        "composition_pair",
        "composition_pair_product",
        "composition_product",
        "swap_pair",
        "swap_product",
        "seq_lproduct",
        "seq_comp",
        "seq_swap",
        "seq_val",
        "seq_terminal",
        "seq_com",
        "seq_prod_1",
        "seq_prod_2",
        "seq_pair_1",
        "seq_pair_2",
    ] {
        assert!(r.get(name).is_some_and(|s| s.verdict.is_valid()), "{name} missing or invalid");
    }
}

/// File, offending step, and a fragment of the reason.
const MUTATIONS: &[(&str, &str, &str)] = &[
    ("sym_le.eqp", "e2", "sym_≲ is not a rule"),
    ("repl_le_impure.eqp", "a", "repl_≲ outer morphism not pure (`k`)"),
    ("dangling_premise.eqp", "d", "premise `(c3)` is not an earlier step"),
    ("ill_typed.eqp", "a1", "type error: cannot compose `p1[Z2,Z1]`"),
    ("wrong_rule.eqp", "c2", "not an instance of trans_≡"),
    ("goal_mismatch.eqp", "k2", "goal mismatch"),
    ("impure_point.eqp", "a1", "pure_pair.p1 side condition: `v2` := `x2 . bang[Y1]` is not pure"),
    ("unknown_rule.eqp", "c", "unknown rule or lemma `prod.p1`"),
];

#[test]
fn mutations_are_rejected_at_the_right_step() {
    for (file, step, reason) in MUTATIONS {
        let r = check_paths(&[corpus_dir(), mutation(file)]).unwrap();
        let bad: Vec<_> = r.scripts.iter().filter(|s| !s.verdict.is_valid()).collect();
        assert_eq!(bad.len(), 1, "{file}: exactly the mutant fails");
        assert!(bad[0].path.ends_with(file));
        match &bad[0].verdict {
            Verdict::Invalid { step: s, reason: why, .. } => {
                assert_eq!(s, step, "{file}");
                assert!(why.contains(reason), "{file}: {why}");
            }
            Verdict::Valid => unreachable!(),
        }
    }
}

#[test]
fn invalid_lemmas_poison_their_users() {
    let base = "name: base\nobjects X\narbitrary f : X -> X\ngoal: f == f\n(a): f == f ; by sym_eq[a]\n";
    let user = "name: user\nobjects Y\narbitrary g : Y -> Y\ngoal: g == g\n(a): g == g ; by base\n";
    let r = check_sources(&[("base.eqp".into(), base.into()), ("user.eqp".into(), user.into())]);
    assert!(matches!(&r.get("user").unwrap().verdict,
        Verdict::Invalid { reason, .. } if reason == "lemma `base` is not valid"));
}

#[test]
fn citation_cycles_and_duplicates_are_rejected() {
    let a = "name: a\nobjects X\narbitrary f : X -> X\ngoal: f == f\n(s): f == f ; by b\n";
    let b = "name: b\nobjects X\narbitrary f : X -> X\ngoal: f == f\n(s): f == f ; by a\n";
    let r = check_sources(&[("a.eqp".into(), a.into()), ("b.eqp".into(), b.into())]);
    assert_eq!(r.valid, 0);
    let r = check_sources(&[("a.eqp".into(), b.into()), ("b.eqp".into(), b.into())]);
    assert!(r.scripts.iter().any(|s| matches!(&s.verdict,
        Verdict::Invalid { reason, .. } if reason.starts_with("duplicate script name"))));
}

#[test]
fn lemmas_are_instantiated_not_copied() {
    // A lemma's symbols are metavariables: citing it with other terms works.
    let lemma = "name: lem\nobjects X, Y\narbitrary f : X -> Y\ngoal: id[Y] . f == f\n(a): id[Y] . f == f ; by unit_left\n";
    let user = "name: use\nobjects A\npure v : A -> A*A\ngoal: id[A*A] . v == v\n(a): id[A*A] . v == v ; by lem\n";
    let r = check_sources(&[("l.eqp".into(), lemma.into()), ("u.eqp".into(), user.into())]);
    assert!(r.ok(), "{}", r.to_text());
}

#[test]
fn unparsable_scripts_are_reported_not_fatal() {
    let r = check_sources(&[("x.eqp".into(), "name: x\ngoal f == \n".into())]);
    assert_eq!(r.invalid, 1);
    assert_eq!(r.scripts[0].name, "x");
}

#[test]
fn corpus_goals_hold_at_size_one() {
    let r = check_corpus(&corpus_dir()).unwrap();
    let scripts = r.valid_scripts();
    let cfg = LawConfig { max_size: 1, budget: 1_000_000 };
    for rep in [soundness(&PartialMaps, &scripts, &cfg).unwrap(), soundness(&StateMaps::new(2).unwrap(), &scripts, &cfg).unwrap()] {
        assert!(rep.checks.iter().all(|c| c.status == Status::Pass), "{}", rep.to_text());
    }
}

#[test]
fn report_rendering_names_the_failing_step() {
    let r = check_paths(&[mutation("sym_le.eqp")]).unwrap();
    let law = r.to_law_report();
    assert!(!law.ok());
    let c = law.check("proof.mut_sym_le").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(c.reason.as_deref().unwrap().contains("step (e2): sym_≲ is not a rule"));
}
