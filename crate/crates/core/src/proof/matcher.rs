//! First-order matching of rule patterns against script judgments.

use super::Rule;
use crate::syntax::{Decls, Judgment, Obj, Term};
use std::collections::HashMap;

/// Why a rule does not apply, ordered by how close the match came.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Shape(String),
    Type(String),
    Purity { var: String, term: Term },
}

impl Failure {
    pub fn rank(&self) -> u8 {
        match self {
            Failure::Shape(_) => 0,
            Failure::Type(_) => 1,
            Failure::Purity { .. } => 2,
        }
    }
}

#[derive(Default)]
struct Subst {
    objs: HashMap<String, Obj>,
    terms: HashMap<String, Term>,
}

struct Matcher<'r> {
    vars: &'r Decls,
    s: Subst,
}

impl Matcher<'_> {
    fn obj(&mut self, pat: &Obj, t: &Obj) -> bool {
        match (pat, t) {
            (Obj::Base(n), _) if self.vars.has_object(n) => match self.s.objs.get(n) {
                Some(bound) => bound == t,
                None => {
                    self.s.objs.insert(n.clone(), t.clone());
                    true
                }
            },
            (Obj::Prod(a, b), Obj::Prod(c, d)) => self.obj(a, c) && self.obj(b, d),
            _ => pat == t,
        }
    }

    fn term(&mut self, pat: &Term, t: &Term) -> bool {
        use Term as T;
        match (pat, t) {
            (T::Sym(n), _) if self.vars.symbol(n).is_some() => match self.s.terms.get(n) {
                Some(bound) => bound == t,
                None => {
                    self.s.terms.insert(n.clone(), t.clone());
                    true
                }
            },
            (T::Id(a), T::Id(b))
            | (T::Bang(a), T::Bang(b))
            | (T::Rho(a), T::Rho(b))
            | (T::Diag(a), T::Diag(b)) => self.obj(a, b),
            (T::Proj1(a, b), T::Proj1(c, d))
            | (T::Proj2(a, b), T::Proj2(c, d))
            | (T::Swap(a, b), T::Swap(c, d)) => self.obj(a, c) && self.obj(b, d),
            (T::Assoc(a, b, c), T::Assoc(x, y, z)) | (T::AssocInv(a, b, c), T::AssocInv(x, y, z)) => {
                self.obj(a, x) && self.obj(b, y) && self.obj(c, z)
            }
            (T::Comp(a, b), T::Comp(c, d))
            | (T::Pair(a, b), T::Pair(c, d))
            | (T::Prod(a, b), T::Prod(c, d))
            | (T::SeqL(a, b), T::SeqL(c, d))
            | (T::SeqR(a, b), T::SeqR(c, d))
            | (T::LPair(a, b), T::LPair(c, d))
            | (T::RPair(a, b), T::RPair(c, d)) => self.term(a, c) && self.term(b, d),
            _ => pat == t,
        }
    }

    fn judgment(&mut self, pat: &Judgment, j: &Judgment) -> bool {
        pat.rel == j.rel && self.term(&pat.lhs, &j.lhs) && self.term(&pat.rhs, &j.rhs)
    }
}

/// Finds one substitution making `conclusion` and every premise instances
/// of `rule`, then checks the metavariables' types and purity. Script
/// judgments are assumed well-typed under `decls`.
pub fn instantiate(
    rule: &Rule,
    premises: &[(&str, &Judgment)],
    conclusion: &Judgment,
    decls: &Decls,
) -> Result<(), Failure> {
    if premises.len() != rule.premises.len() {
        return Err(Failure::Shape(format!(
            "expects {} premise(s), {} given",
            rule.premises.len(),
            premises.len()
        )));
    }
    let mut m = Matcher { vars: &rule.decls, s: Subst::default() };
    if !m.judgment(&rule.conclusion, conclusion) {
        return Err(Failure::Shape(format!("conclusion is not of the form `{}`", rule.conclusion)));
    }
    for ((label, j), pat) in premises.iter().zip(&rule.premises) {
        if !m.judgment(pat, j) {
            return Err(Failure::Shape(format!("premise `({label})` is not of the form `{pat}` here")));
        }
    }
    let mut impure = None;
    for d in &rule.decls.symbols {
        let Some(t) = m.s.terms.get(&d.name).cloned() else {
            return Err(Failure::Shape(format!("metavariable `{}` is not determined", d.name)));
        };
        let ty = decls.synth(&t).map_err(Failure::Type)?;
        if !(m.obj(&d.dom, &ty.dom) && m.obj(&d.cod, &ty.cod)) {
            return Err(Failure::Type(format!(
                "`{}` := `{t}` has type {} -> {}, which does not fit {} -> {}",
                d.name, ty.dom, ty.cod, d.dom, d.cod
            )));
        }
        if d.pure && !ty.pure && impure.is_none() {
            impure = Some(Failure::Purity { var: d.name.clone(), term: t });
        }
    }
    match impure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}
