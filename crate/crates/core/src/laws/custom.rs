//! Checks that are not equations between terms.

use crate::cartesian;
use crate::effect::{enumerate_hom, enumerate_pure, CartesianEffectCategory};
use crate::error::{Error, Result};
use crate::finite::FinSet;
use crate::semantics::{obj_size, Assignment, Bounds, Outcome, SkipNote};
use crate::syntax::{parse_decls, Decls, LawKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CustomCheck {
    pub id: &'static str,
    pub kind: LawKind,
    pub suite: &'static str,
    pub says: &'static str,
    pub statement: &'static str,
    decls: &'static str,
}

impl CustomCheck {
    pub fn decls(&self) -> Decls {
        parse_decls(self.decls).expect("coded check declarations parse")
    }
}

pub const CHECKS: &[CustomCheck] = &[
    CustomCheck {
        id: "purity.identity",
        kind: LawKind::Law,
        suite: "effect",
        says: "identities are pure",
        statement: "pure(id[X])",
        decls: "objects X",
    },
    CustomCheck {
        id: "purity.composition",
        kind: LawKind::Law,
        suite: "effect",
        says: "a composite of pure morphisms is pure",
        statement: "pure(v) and pure(w) imply pure(w . v)",
        decls: "objects X Y Z\npure v : X -> Y\npure w : Y -> Z",
    },
    CustomCheck {
        id: "diag.purity.composition_iff",
        kind: LawKind::Diagnostic,
        suite: "effect",
        says: "a composite is pure only when both parts are",
        statement: "pure(g . f) iff pure(f) and pure(g)",
        decls: "objects X Y Z\narbitrary f : X -> Y\narbitrary g : Y -> Z",
    },
    CustomCheck {
        id: "iso.purity",
        kind: LawKind::Law,
        suite: "semi",
        says: "structural morphisms are pure",
        statement: "pure(swap[A,B]), pure(assoc[A,B,C]), pure(associnv[A,B,C]), pure(rho[A]), pure(<id[A], bang[A]>), pure(diag[A])",
        decls: "objects A B C",
    },
    CustomCheck {
        id: "def.semi_pair.pure_coincide",
        kind: LawKind::Law,
        suite: "semi",
        says: "on two pure morphisms both semi-pair constructions agree",
        statement: "pair_fv(v1, v2) == pair_vf(v1, v2)",
        decls: "objects X Y1 Y2\npure v1 : X -> Y1\npure v2 : X -> Y2",
    },
];

pub fn info(id: &str) -> Option<&'static CustomCheck> {
    CHECKS.iter().find(|c| c.id == id)
}

/// Whether the property holds for object sizes and symbols given in
/// declaration order.
fn holds<I: CartesianEffectCategory>(inst: &I, c: &CustomCheck, o: &[FinSet], m: &[&I::Morphism]) -> Result<bool> {
    Ok(match c.id {
        "purity.identity" => inst.is_pure(&inst.identity(o[0])),
        "purity.composition" => inst.is_pure(&inst.compose(m[1], m[0])?),
        "diag.purity.composition_iff" => {
            let (f, g) = (m[0], m[1]);
            inst.is_pure(&inst.compose(g, f)?) == (inst.is_pure(f) && inst.is_pure(g))
        }
        "iso.purity" => {
            let (x, y, z) = (o[0], o[1], o[2]);
            let rho = cartesian::unit_proj(inst, x);
            [
                cartesian::swap(inst, x, y),
                cartesian::assoc(inst, x, y, z),
                cartesian::assoc_inv(inst, x, y, z),
                rho.forward,
                rho.backward,
                cartesian::diagonal(inst, x),
            ]
            .iter()
            .all(|m| inst.is_pure(m))
        }
        "def.semi_pair.pure_coincide" => inst.pair_fv(m[0], m[1])? == inst.pair_vf(m[0], m[1])?,
        other => return Err(Error::UnknownCheckId(other.into())),
    })
}

/// Reads an assignment back into declaration order.
pub fn positional<'a, M>(decls: &Decls, a: &'a Assignment<M>) -> Result<(Vec<FinSet>, Vec<&'a M>)> {
    let map = a.object_map();
    let objs = decls
        .objects
        .iter()
        .map(|n| obj_size(&crate::syntax::Obj::Base(n.clone()), &map))
        .collect::<Result<Vec<_>>>()?;
    let syms = decls
        .symbols
        .iter()
        .map(|d| a.symbol(&d.name).ok_or_else(|| Error::AssignmentMismatch(format!("symbol `{}` is unassigned", d.name))))
        .collect::<Result<Vec<_>>>()?;
    Ok((objs, syms))
}

pub fn is_counterexample<I: CartesianEffectCategory>(
    inst: &I,
    c: &CustomCheck,
    a: &Assignment<I::Morphism>,
) -> Result<bool> {
    let decls = c.decls();
    crate::semantics::check_assignment(inst, &decls, a)?;
    let (o, m) = positional(&decls, a)?;
    Ok(!holds(inst, c, &o, &m)?)
}

pub fn sweep<I: CartesianEffectCategory>(
    inst: &I,
    c: &CustomCheck,
    decls: &Decls,
    bounds: &Bounds,
) -> Result<Outcome<I::Morphism>> {
    forall(inst, decls, bounds, |o, m| holds(inst, c, o, m))
}

/// Plain nested enumeration over the declared objects and symbols, the
/// last symbol varying fastest. `pred` receives sizes and morphisms in
/// declaration order and returns whether the property holds there.
pub fn forall<I: CartesianEffectCategory>(
    inst: &I,
    decls: &Decls,
    bounds: &Bounds,
    mut pred: impl FnMut(&[FinSet], &[&I::Morphism]) -> Result<bool>,
) -> Result<Outcome<I::Morphism>> {
    let nobj = decls.objects.len();
    let radix = bounds.objects.len();
    let total = radix.checked_pow(nobj as u32).unwrap_or(usize::MAX);
    let (mut object_tuples, mut tuples, mut skipped) = (0u64, 0u64, Vec::new());
    'objects: for t in 0..total {
        let mut rest = t;
        let mut sizes = vec![FinSet::UNIT; nobj];
        for k in (0..nobj).rev() {
            sizes[k] = bounds.objects[rest % radix];
            rest /= radix;
        }
        let named: Vec<(String, FinSet)> = decls.objects.iter().cloned().zip(sizes.iter().copied()).collect();
        let map = named.iter().cloned().collect();
        let mut homs = Vec::new();
        for d in &decls.symbols {
            let (x, y) = (obj_size(&d.dom, &map)?, obj_size(&d.cod, &map)?);
            let h = if d.pure {
                enumerate_pure(inst, x, y, bounds.budget)
            } else {
                enumerate_hom(inst, x, y, bounds.budget)
            };
            match h {
                Ok(h) => homs.push(h),
                Err(e @ Error::BudgetExceeded { .. }) => {
                    skipped.push(SkipNote { objects: named, reason: format!("`{}`: {e}", d.name) });
                    continue 'objects;
                }
                Err(e) => return Err(e),
            }
        }
        object_tuples += 1;
        if homs.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; homs.len()];
        loop {
            tuples += 1;
            let current: Vec<&I::Morphism> = idx.iter().zip(&homs).map(|(&i, h)| &h[i]).collect();
            let verdict = pred(&sizes, &current);
            if !matches!(verdict, Ok(true)) {
                let witness = Assignment {
                    objects: named,
                    symbols: decls.symbols.iter().zip(current).map(|(d, m)| (d.name.clone(), m.clone())).collect(),
                };
                let error = verdict.err().map(|e| e.to_string());
                return Ok(Outcome::Violated { witness, object_tuples, tuples, error });
            }
            let mut k = idx.len();
            loop {
                if k == 0 {
                    continue 'objects;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < homs[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    Ok(Outcome::Holds { object_tuples, tuples, skipped })
}
