//! Arrow operations derived from a cartesian effect category, and checks of
//! the nine Arrow laws.
//!
//! `arr` embeds pure morphisms, `>>>` is reversed composition and `first`
//! is the semi-product with an identity. The pure functions the laws
//! mention (products with identities, `fst`, `assoc`) are built here as
//! plain index tables and lifted, so each law compares the instance's
//! constructions against an independent value-level computation.

use crate::cartesian;
use crate::effect::CartesianEffectCategory;
use crate::error::{Error, Result};
use crate::finite::FinSet;
use crate::laws::custom::forall;
use crate::laws::{verdict, LawCheck, LawConfig, LawReport, Quantifier, Status};
use crate::semantics::{Assignment, Outcome};
use crate::syntax::{parse_decls, LawKind};

/// Thin wrapper: arrows from `X` to `Y` are the instance's morphisms.
pub struct DerivedArrow<'a, I> {
    pub inst: &'a I,
}

impl<'a, I: CartesianEffectCategory> DerivedArrow<'a, I> {
    pub fn new(inst: &'a I) -> Self {
        DerivedArrow { inst }
    }

    /// `arr v`; only pure morphisms embed.
    pub fn arr(&self, v: &I::Morphism) -> Result<I::Morphism> {
        if self.inst.is_pure(v) {
            Ok(v.clone())
        } else {
            Err(Error::PurityViolation(format!("arr applied to non-pure {v}")))
        }
    }

    /// `arr` of a total function given by its table.
    pub fn arr_fn(&self, x: FinSet, y: FinSet, table: &[usize]) -> Result<I::Morphism> {
        self.inst.lift_pure(x, y, table)
    }

    /// `f >>> g`.
    pub fn then(&self, f: &I::Morphism, g: &I::Morphism) -> Result<I::Morphism> {
        self.inst.compose(g, f)
    }

    /// `first f : X×Z -> Y×Z`.
    pub fn first(&self, f: &I::Morphism, z: FinSet) -> Result<I::Morphism> {
        cartesian::semi_product_fv(self.inst, f, &self.inst.identity(z))
    }

    /// `second f = arr swap >>> first f >>> arr swap : Z×X -> Z×Y`.
    pub fn second(&self, f: &I::Morphism, z: FinSet) -> Result<I::Morphism> {
        let (x, y) = (self.inst.dom(f), self.inst.cod(f));
        let into = self.arr_fn(FinSet::new(z.size * x.size), FinSet::new(x.size * z.size), &swap_table(z, x))?;
        let out = self.arr_fn(FinSet::new(y.size * z.size), FinSet::new(z.size * y.size), &swap_table(y, z))?;
        self.then(&self.then(&into, &self.first(f, z)?)?, &out)
    }

    /// `f *** g = first f >>> second g`.
    pub fn split(&self, f: &I::Morphism, g: &I::Morphism) -> Result<I::Morphism> {
        let first = self.first(f, self.inst.dom(g))?;
        self.then(&first, &self.second(g, self.inst.cod(f))?)
    }

    /// `f &&& g = arr (λb → (b,b)) >>> (f *** g)`.
    pub fn fanout(&self, f: &I::Morphism, g: &I::Morphism) -> Result<I::Morphism> {
        let x = self.inst.dom(f);
        let dup: Vec<usize> = (0..x.size).map(|e| e * x.size + e).collect();
        let d = self.arr_fn(x, FinSet::new(x.size * x.size), &dup)?;
        self.then(&d, &self.split(f, g)?)
    }
}

/// `(a, b) ↦ (b, a)` from `A×B` to `B×A`.
pub fn swap_table(a: FinSet, b: FinSet) -> Vec<usize> {
    (0..a.size * b.size).map(|e| (e % b.size) * a.size + e / b.size).collect()
}

/// `fst : A×B -> A`.
pub fn fst_table(a: FinSet, b: FinSet) -> Vec<usize> {
    (0..a.size * b.size).map(|e| e / b.size).collect()
}

/// `t1 × t2` for tables `X1 -> Y1` and `X2 -> Y2`.
pub fn product_table(t1: &[usize], t2: &[usize], y2: FinSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(t1.len() * t2.len());
    for &a in t1 {
        for &b in t2 {
            out.push(a * y2.size + b);
        }
    }
    out
}

/// `((a, b), c) ↦ (a, (b, c))`.
pub fn assoc_table(a: FinSet, b: FinSet, c: FinSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.size * b.size * c.size);
    for x in 0..a.size {
        for y in 0..b.size {
            for z in 0..c.size {
                out.push(x * (b.size * c.size) + (y * c.size + z));
            }
        }
    }
    out
}

/// `(id, statement)` for the laws and combinator identities.
pub const LAWS: &[(&str, &str)] = &[
    ("arrow.law1", "arr id >>> f = f"),
    ("arrow.law2", "f >>> arr id = f"),
    ("arrow.law3", "(f >>> g) >>> h = f >>> (g >>> h)"),
    ("arrow.law4", "arr (w . v) = arr v >>> arr w"),
    ("arrow.law5", "first (arr v) = arr (v × id)"),
    ("arrow.law6", "first (f >>> g) = first f >>> first g"),
    ("arrow.law7", "first f >>> arr (id × v) = arr (id × v) >>> first f"),
    ("arrow.law8", "first f >>> arr fst = arr fst >>> f, for every second component Z"),
    ("arrow.law9", "first (first f) >>> arr assoc = arr assoc >>> first f"),
    ("arrow.second", "arr swap >>> first f >>> arr swap = semi-product of id and f"),
    ("arrow.split", "first f >>> second g = f |>< g"),
    ("arrow.fanout", "arr (λb → (b,b)) >>> (f *** g) = <f, g>_l"),
    ("arrow.fanout_below", "(f &&& g) >>> arr fst <= f"),
];

pub const FANOUT_ID: &str = "arrow.fanout_not_product";
pub const FANOUT_STATEMENT: &str = "(f &&& g) >>> arr fst = f";

fn decls_of(id: &str) -> &'static str {
    match id {
        "arrow.law1" | "arrow.law2" => "objects X Y\narbitrary f : X -> Y",
        "arrow.law3" => "objects X Y Z W\narbitrary f : X -> Y\narbitrary g : Y -> Z\narbitrary h : Z -> W",
        "arrow.law4" => "objects X Y Z\npure v : X -> Y\npure w : Y -> Z",
        "arrow.law5" => "objects X Y Z\npure v : X -> Y",
        "arrow.law6" => "objects X Y Z W\narbitrary f : X -> Y\narbitrary g : Y -> Z",
        "arrow.law7" => "objects X Y Z W\narbitrary f : X -> Y\npure v : Z -> W",
        "arrow.law8" | "arrow.second" => "objects X Y Z\narbitrary f : X -> Y",
        "arrow.law9" => "objects X Y Z W\narbitrary f : X -> Y",
        "arrow.split" => "objects X1 X2 Y1 Y2\narbitrary f : X1 -> Y1\narbitrary g : X2 -> Y2",
        _ => "objects X Y1 Y2\narbitrary f : X -> Y1\narbitrary g : X -> Y2",
    }
}

fn holds<I: CartesianEffectCategory>(a: &DerivedArrow<'_, I>, id: &str, o: &[FinSet], m: &[&I::Morphism]) -> Result<bool> {
    let inst = a.inst;
    let table = |v: &I::Morphism| inst.pure_table(v).ok_or_else(|| Error::PurityViolation(format!("{v} is not pure")));
    let prod = |x: FinSet, y: FinSet| FinSet::new(x.size * y.size);
    Ok(match id {
        "arrow.law1" => a.then(&a.arr(&inst.identity(o[0]))?, m[0])? == *m[0],
        "arrow.law2" => a.then(m[0], &a.arr(&inst.identity(o[1]))?)? == *m[0],
        "arrow.law3" => a.then(&a.then(m[0], m[1])?, m[2])? == a.then(m[0], &a.then(m[1], m[2])?)?,
        "arrow.law4" => {
            let (v, w) = (table(m[0])?, table(m[1])?);
            let wv: Vec<usize> = v.iter().map(|&y| w[y]).collect();
            a.arr_fn(o[0], o[2], &wv)? == a.then(&a.arr(m[0])?, &a.arr(m[1])?)?
        }
        "arrow.law5" => {
            let id_z: Vec<usize> = o[2].elements().collect();
            let vz = product_table(&table(m[0])?, &id_z, o[2]);
            a.first(&a.arr(m[0])?, o[2])? == a.arr_fn(prod(o[0], o[2]), prod(o[1], o[2]), &vz)?
        }
        "arrow.law6" => a.first(&a.then(m[0], m[1])?, o[3])? == a.then(&a.first(m[0], o[3])?, &a.first(m[1], o[3])?)?,
        "arrow.law7" => {
            let (x, y, z, w) = (o[0], o[1], o[2], o[3]);
            let v = table(m[1])?;
            let id_y: Vec<usize> = y.elements().collect();
            let id_x: Vec<usize> = x.elements().collect();
            let after = a.arr_fn(prod(y, z), prod(y, w), &product_table(&id_y, &v, w))?;
            let before = a.arr_fn(prod(x, z), prod(x, w), &product_table(&id_x, &v, w))?;
            a.then(&a.first(m[0], z)?, &after)? == a.then(&before, &a.first(m[0], w)?)?
        }
        "arrow.law8" => {
            let (x, y, z) = (o[0], o[1], o[2]);
            let fst_y = a.arr_fn(prod(y, z), y, &fst_table(y, z))?;
            let fst_x = a.arr_fn(prod(x, z), x, &fst_table(x, z))?;
            a.then(&a.first(m[0], z)?, &fst_y)? == a.then(&fst_x, m[0])?
        }
        "arrow.law9" => {
            let (x, y, z, w) = (o[0], o[1], o[2], o[3]);
            let assoc_y = a.arr_fn(prod(prod(y, z), w), prod(y, prod(z, w)), &assoc_table(y, z, w))?;
            let assoc_x = a.arr_fn(prod(prod(x, z), w), prod(x, prod(z, w)), &assoc_table(x, z, w))?;
            let lhs = a.then(&a.first(&a.first(m[0], z)?, w)?, &assoc_y)?;
            lhs == a.then(&assoc_x, &a.first(m[0], prod(z, w))?)?
        }
        "arrow.second" => a.second(m[0], o[2])? == cartesian::semi_product_vf(inst, &inst.identity(o[2]), m[0])?,
        "arrow.split" => a.split(m[0], m[1])? == cartesian::seq_product_left(inst, m[0], m[1])?,
        "arrow.fanout" => a.fanout(m[0], m[1])? == cartesian::seq_pair_left(inst, m[0], m[1])?,
        "arrow.fanout_below" | FANOUT_ID => {
            let (x, y1, y2) = (o[0], o[1], o[2]);
            let fst = a.arr_fn(prod(y1, y2), y1, &fst_table(y1, y2))?;
            let projected = a.then(&a.fanout(m[0], m[1])?, &fst)?;
            if id == FANOUT_ID {
                projected == *m[0]
            } else {
                let _ = x;
                inst.semi_eq(&projected, m[0])
            }
        }
        other => return Err(Error::UnknownCheckId(other.into())),
    })
}

fn run_one<I: CartesianEffectCategory>(
    inst: &I,
    id: &str,
    statement: &str,
    config: &LawConfig,
) -> Result<(LawCheck, Option<Assignment<I::Morphism>>)> {
    let a = DerivedArrow::new(inst);
    let decls = parse_decls(decls_of(id)).expect("arrow law declarations parse");
    let outcome = forall(inst, &decls, &config.bounds(), |o, m| holds(&a, id, o, m))?;
    let kind = if id == FANOUT_ID { LawKind::Negative } else { LawKind::Law };
    let check = verdict(
        id,
        kind,
        "arrows",
        statement,
        statement.into(),
        Quantifier::from_decls(&decls),
        inst.descriptor(),
        &outcome,
        |w| {
            let (o, m) = crate::laws::custom::positional(&decls, w)?;
            Ok(!holds(&a, id, &o, &m)?)
        },
    );
    let witness = match outcome {
        Outcome::Violated { witness, .. } => Some(witness),
        Outcome::Holds { .. } => None,
    };
    Ok((check, witness))
}

/// Checks the structure the derivation relies on before trusting it.
fn precheck<I: CartesianEffectCategory>(inst: &I, config: &LawConfig) -> Result<()> {
    let small = LawConfig { max_size: config.max_size.min(2), budget: config.budget };
    for id in [
        "purity.identity",
        "purity.composition",
        "def.semi_pair.fv.q1",
        "def.semi_pair.fv.q2",
        "def.semi_product.fv.q1",
        "def.semi_product.fv.q2",
    ] {
        let (c, _) = crate::laws::run_check(inst, id, &small)?;
        if c.status == Status::Fail {
            return Err(Error::Contract(format!("{} violates {id}; Arrow laws not checked", inst.descriptor())));
        }
    }
    Ok(())
}

/// Laws 1-9, the combinator identities, the universal `fanout ≲` clause and
/// the search for a fanout that is not a product. `only` restricts the run
/// to the given ids (the contract precheck always runs).
pub fn check_arrow_laws<I: CartesianEffectCategory>(
    inst: &I,
    config: &LawConfig,
    only: Option<&[String]>,
) -> Result<LawReport> {
    precheck(inst, config)?;
    let mut all: Vec<(&str, &str)> = LAWS.to_vec();
    all.push((FANOUT_ID, FANOUT_STATEMENT));
    if let Some(ids) = only {
        if let Some(bad) = ids.iter().find(|i| !all.iter().any(|(id, _)| id == i)) {
            return Err(Error::UnknownCheckId(bad.clone()));
        }
        all.retain(|(id, _)| ids.iter().any(|i| i == id));
    }
    let mut checks = Vec::new();
    for (id, statement) in all {
        checks.push(run_one(inst, id, statement, config)?.0);
    }
    Ok(LawReport::new("arrows", inst.descriptor(), config.max_size, config.budget, checks))
}

/// Result of [`check_fanout_not_product`].
#[derive(Debug, Clone)]
pub struct FanoutFinding<M> {
    /// First `(f, g)` with `(f &&& g) >>> arr fst ≠ f`, if any.
    pub witness: Option<Assignment<M>>,
    /// The universal check of `(f &&& g) >>> arr fst ≲ f`.
    pub below: LawCheck,
}

pub fn check_fanout_not_product<I: CartesianEffectCategory>(
    inst: &I,
    config: &LawConfig,
) -> Result<FanoutFinding<I::Morphism>> {
    let (_, witness) = run_one(inst, FANOUT_ID, FANOUT_STATEMENT, config)?;
    let (below, _) = run_one(inst, "arrow.fanout_below", "(f &&& g) >>> arr fst <= f", config)?;
    Ok(FanoutFinding { witness, below })
}

/// Re-evaluates a candidate counterexample to an Arrow check.
pub fn recheck<I: CartesianEffectCategory>(inst: &I, id: &str, w: &Assignment<I::Morphism>) -> Result<bool> {
    let decls = parse_decls(decls_of(id)).expect("arrow law declarations parse");
    crate::semantics::check_assignment(inst, &decls, w)?;
    let (o, m) = crate::laws::custom::positional(&decls, w)?;
    Ok(!holds(&DerivedArrow::new(inst), id, &o, &m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::EffectCategory;
    use crate::instances::{PartialMaps, StateMaps};

    #[test]
    fn law5_identity_case() {
        let p = PartialMaps;
        let a = DerivedArrow::new(&p);
        let two = FinSet::new(2);
        let lhs = a.first(&a.arr(&p.identity(two)).unwrap(), two).unwrap();
        let rhs = a.arr_fn(FinSet::new(4), FinSet::new(4), &[0, 1, 2, 3]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn arr_rejects_effects() {
        let st = StateMaps::new(2).unwrap();
        let w = crate::instances::parse_state("S=2, 1->1 = [(0,0)->(1,0), (1,0)->(1,0)]").unwrap();
        assert!(DerivedArrow::new(&st).arr(&w).is_err());
    }

    #[test]
    fn value_tables() {
        let (two, three) = (FinSet::new(2), FinSet::new(3));
        assert_eq!(swap_table(two, three), vec![0, 2, 4, 1, 3, 5]);
        assert_eq!(fst_table(two, three), vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(product_table(&[1, 0], &[0, 0, 1], two), vec![2, 2, 3, 0, 0, 1]);
    }

    #[test]
    fn state_fanout_is_not_a_product() {
        let st = StateMaps::new(2).unwrap();
        let f = check_fanout_not_product(&st, &LawConfig { max_size: 1, budget: 1_000_000 }).unwrap();
        let w = f.witness.expect("state witness");
        assert!(recheck(&st, FANOUT_ID, &w).unwrap());
        assert_eq!(f.below.status, Status::Pass);
        let p = check_fanout_not_product(&PartialMaps, &LawConfig::default()).unwrap();
        assert_eq!(p.below.status, Status::Pass);
    }
}
