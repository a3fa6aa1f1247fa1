//! The translation between partial maps and Maybe-Kleisli maps, checked
//! exhaustively. Kleisli pairs go through the monad's strength, so the
//! `pair` checks compare two independent constructions of the semi-pairs.

use crate::effect::{CartesianEffectCategory, EffectCategory};
use crate::error::Result;
use crate::finite::FinSet;
use crate::instances::{from_kleisli, to_kleisli, MaybeKleisli, PartialMaps};
use crate::laws::custom::{forall, positional};
use crate::laws::{verdict, LawConfig, LawReport, Quantifier};
use crate::semantics::Bounds;
use crate::syntax::{parse_decls, LawKind};

pub const CHECKS: &[(&str, &str)] = &[
    ("kleisli.round_trip.partial", "from(to f) = f for every partial map f"),
    ("kleisli.round_trip.kleisli", "to(from k) = k for every Kleisli map k"),
    ("kleisli.identity", "to(id) = η"),
    ("kleisli.composition", "to(g . f) = to g ∘K to f"),
    ("kleisli.purity", "f total iff to f factors through η"),
    ("kleisli.semi_eq", "f <= g iff to f <= to g"),
    ("kleisli.pair_fv", "to <f, v> = strength route <to f, to v>"),
    ("kleisli.pair_vf", "to <v, f> = mirrored strength route <to v, to f>"),
];

fn decls_of(id: &str) -> &'static str {
    match id {
        "kleisli.round_trip.partial" | "kleisli.round_trip.kleisli" | "kleisli.purity" => {
            "objects X Y\narbitrary f : X -> Y"
        }
        "kleisli.identity" => "objects X",
        "kleisli.composition" => "objects X Y Z\narbitrary f : X -> Y\narbitrary g : Y -> Z",
        "kleisli.semi_eq" => "objects X Y\narbitrary f : X -> Y\narbitrary g : X -> Y",
        "kleisli.pair_fv" => "objects X Y1 Y2\narbitrary f : X -> Y1\npure v : X -> Y2",
        _ => "objects X Y1 Y2\npure v : X -> Y1\narbitrary f : X -> Y2",
    }
}

/// Sizes `0..=max`: the empty carrier is part of the round trip.
fn bounds(config: &LawConfig) -> Bounds {
    Bounds { objects: (0..=config.max_size).map(FinSet::new).collect(), ..config.bounds() }
}

fn holds_partial(id: &str, o: &[FinSet], m: &[&crate::instances::PartialMap]) -> Result<bool> {
    let (p, k) = (PartialMaps, MaybeKleisli);
    Ok(match id {
        "kleisli.round_trip.partial" => from_kleisli(&to_kleisli(m[0])) == *m[0],
        "kleisli.identity" => to_kleisli(&p.identity(o[0])) == k.identity(o[0]),
        "kleisli.composition" => {
            to_kleisli(&p.compose(m[1], m[0])?) == k.compose(&to_kleisli(m[1]), &to_kleisli(m[0]))?
        }
        "kleisli.purity" => p.is_pure(m[0]) == k.is_pure(&to_kleisli(m[0])),
        "kleisli.semi_eq" => p.semi_eq(m[0], m[1]) == k.semi_eq(&to_kleisli(m[0]), &to_kleisli(m[1])),
        "kleisli.pair_fv" => {
            to_kleisli(&p.pair_fv(m[0], m[1])?) == k.pair_fv(&to_kleisli(m[0]), &to_kleisli(m[1]))?
        }
        "kleisli.pair_vf" => {
            to_kleisli(&p.pair_vf(m[0], m[1])?) == k.pair_vf(&to_kleisli(m[0]), &to_kleisli(m[1]))?
        }
        other => return Err(crate::error::Error::UnknownCheckId(other.into())),
    })
}

/// All translation checks at carrier sizes `0..=config.max_size`.
pub fn check_translation(config: &LawConfig) -> Result<LawReport> {
    let b = bounds(config);
    let mut checks = Vec::new();
    for &(id, statement) in CHECKS {
        let decls = parse_decls(decls_of(id)).expect("translation declarations parse");
        let quantifiers = Quantifier::from_decls(&decls);
        let check = if id == "kleisli.round_trip.kleisli" {
            let outcome = forall(&MaybeKleisli, &decls, &b, |_, m| Ok(to_kleisli(&from_kleisli(m[0])) == *m[0]))?;
            verdict(id, LawKind::Law, "kleisli", statement, statement.into(), quantifiers, "kleisli-maybe".into(), &outcome, |w| {
                let (_, m) = positional(&decls, w)?;
                Ok(to_kleisli(&from_kleisli(m[0])) != *m[0])
            })
        } else {
            let outcome = forall(&PartialMaps, &decls, &b, |o, m| holds_partial(id, o, m))?;
            verdict(id, LawKind::Law, "kleisli", statement, statement.into(), quantifiers, "partial".into(), &outcome, |w| {
                let (o, m) = positional(&decls, w)?;
                Ok(!holds_partial(id, &o, &m)?)
            })
        };
        checks.push(check);
    }
    Ok(LawReport::new("kleisli", "partial<->kleisli-maybe".into(), config.max_size, config.budget, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_holds_up_to_two() {
        let r = check_translation(&LawConfig { max_size: 2, budget: 1_000_000 }).unwrap();
        assert!(r.ok(), "{}", r.to_text());
        assert_eq!(r.checks.len(), CHECKS.len());
    }
}
