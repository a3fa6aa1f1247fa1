//! Derived combinators built only from the instance's pairs, projections
//! and composition: semi-products, the structural isomorphisms, the
//! diagonal, and sequential products and pairs.

use crate::effect::CartesianEffectCategory;
use crate::error::{Error, Result};
use crate::finite::FinSet;

/// A pair of mutually inverse pure morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralIso<M> {
    pub forward: M,
    pub backward: M,
}

/// `f × v = ⟨f∘p1, v∘p2⟩` with `v` pure.
pub fn semi_product_fv<I: CartesianEffectCategory>(
    inst: &I,
    f: &I::Morphism,
    v: &I::Morphism,
) -> Result<I::Morphism> {
    if !inst.is_pure(v) {
        return Err(Error::PurityViolation(format!("semi-product component {v} is not pure")));
    }
    let (x1, x2) = (inst.dom(f), inst.dom(v));
    let a = inst.compose(f, &inst.proj1(x1, x2))?;
    let b = inst.compose(v, &inst.proj2(x1, x2))?;
    inst.pair_fv(&a, &b)
}

/// `v × f = ⟨v∘p1, f∘p2⟩` with `v` pure.
pub fn semi_product_vf<I: CartesianEffectCategory>(
    inst: &I,
    v: &I::Morphism,
    f: &I::Morphism,
) -> Result<I::Morphism> {
    if !inst.is_pure(v) {
        return Err(Error::PurityViolation(format!("semi-product component {v} is not pure")));
    }
    let (x1, x2) = (inst.dom(v), inst.dom(f));
    let a = inst.compose(v, &inst.proj1(x1, x2))?;
    let b = inst.compose(f, &inst.proj2(x1, x2))?;
    inst.pair_vf(&a, &b)
}

/// Whichever semi-product applies, preferring the effect on the left.
pub fn semi_product<I: CartesianEffectCategory>(
    inst: &I,
    a: &I::Morphism,
    b: &I::Morphism,
) -> Result<I::Morphism> {
    if inst.is_pure(b) {
        semi_product_fv(inst, a, b)
    } else if inst.is_pure(a) {
        semi_product_vf(inst, a, b)
    } else {
        Err(Error::PurityViolation(format!("semi-product {a} × {b} needs a pure component")))
    }
}

/// `γ : x2 × x1 -> x1 × x2` and its inverse.
pub fn swap_iso<I: CartesianEffectCategory>(inst: &I, x1: FinSet, x2: FinSet) -> StructuralIso<I::Morphism> {
    StructuralIso { forward: swap(inst, x1, x2), backward: swap(inst, x2, x1) }
}

/// `γ : x2 × x1 -> x1 × x2`, the pair `⟨p2, p1⟩`.
pub fn swap<I: CartesianEffectCategory>(inst: &I, x1: FinSet, x2: FinSet) -> I::Morphism {
    inst.pair_fv(&inst.proj2(x2, x1), &inst.proj1(x2, x1)).expect("projections are pure")
}

/// `α : x1 × (x2 × x3) -> (x1 × x2) × x3` and its inverse.
pub fn assoc_iso<I: CartesianEffectCategory>(
    inst: &I,
    x1: FinSet,
    x2: FinSet,
    x3: FinSet,
) -> StructuralIso<I::Morphism> {
    StructuralIso { forward: assoc(inst, x1, x2, x3), backward: assoc_inv(inst, x1, x2, x3) }
}

/// `α = ⟨⟨p1, p1∘p2⟩, p2∘p2⟩`.
pub fn assoc<I: CartesianEffectCategory>(inst: &I, x1: FinSet, x2: FinSet, x3: FinSet) -> I::Morphism {
    let x23 = FinSet::new(x2.size * x3.size);
    let p1 = inst.proj1(x1, x23);
    let p2 = inst.proj2(x1, x23);
    let q1 = inst.compose(&inst.proj1(x2, x3), &p2).expect("typed");
    let q2 = inst.compose(&inst.proj2(x2, x3), &p2).expect("typed");
    let left = inst.pair_fv(&p1, &q1).expect("pure");
    inst.pair_fv(&left, &q2).expect("pure")
}

/// `α⁻¹ = ⟨p1∘p1, ⟨p2∘p1, p2⟩⟩`.
pub fn assoc_inv<I: CartesianEffectCategory>(inst: &I, x1: FinSet, x2: FinSet, x3: FinSet) -> I::Morphism {
    let x12 = FinSet::new(x1.size * x2.size);
    let p1 = inst.proj1(x12, x3);
    let p2 = inst.proj2(x12, x3);
    let a = inst.compose(&inst.proj1(x1, x2), &p1).expect("typed");
    let b = inst.compose(&inst.proj2(x1, x2), &p1).expect("typed");
    let right = inst.pair_fv(&b, &p2).expect("pure");
    inst.pair_fv(&a, &right).expect("pure")
}

/// `ρ : x × U -> x` with inverse `⟨id, ⟨⟩⟩`.
pub fn unit_proj<I: CartesianEffectCategory>(inst: &I, x: FinSet) -> StructuralIso<I::Morphism> {
    let forward = inst.proj1(x, FinSet::UNIT);
    let backward = inst.pair_fv(&inst.identity(x), &inst.bang(x)).expect("pure");
    StructuralIso { forward, backward }
}

/// `⟨id, id⟩ : x -> x × x`.
pub fn diagonal<I: CartesianEffectCategory>(inst: &I, x: FinSet) -> I::Morphism {
    let id = inst.identity(x);
    inst.pair_fv(&id, &id).expect("identities are pure")
}

/// `f1 ⋉ f2 = (id × f2) ∘ (f1 × id)`: `f1` runs first.
pub fn seq_product_left<I: CartesianEffectCategory>(
    inst: &I,
    f1: &I::Morphism,
    f2: &I::Morphism,
) -> Result<I::Morphism> {
    let first = semi_product_fv(inst, f1, &inst.identity(inst.dom(f2)))?;
    let second = semi_product_vf(inst, &inst.identity(inst.cod(f1)), f2)?;
    inst.compose(&second, &first)
}

/// `f1 ⋊ f2 = (f1 × id) ∘ (id × f2)`: `f2` runs first.
pub fn seq_product_right<I: CartesianEffectCategory>(
    inst: &I,
    f1: &I::Morphism,
    f2: &I::Morphism,
) -> Result<I::Morphism> {
    let first = semi_product_vf(inst, &inst.identity(inst.dom(f1)), f2)?;
    let second = semi_product_fv(inst, f1, &inst.identity(inst.cod(f2)))?;
    inst.compose(&second, &first)
}

/// `⟨f1, f2⟩_l = (f1 ⋉ f2) ∘ ⟨id, id⟩`.
pub fn seq_pair_left<I: CartesianEffectCategory>(
    inst: &I,
    f1: &I::Morphism,
    f2: &I::Morphism,
) -> Result<I::Morphism> {
    check_same_dom(inst, f1, f2)?;
    inst.compose(&seq_product_left(inst, f1, f2)?, &diagonal(inst, inst.dom(f1)))
}

/// `⟨f1, f2⟩_r = (f1 ⋊ f2) ∘ ⟨id, id⟩`.
pub fn seq_pair_right<I: CartesianEffectCategory>(
    inst: &I,
    f1: &I::Morphism,
    f2: &I::Morphism,
) -> Result<I::Morphism> {
    check_same_dom(inst, f1, f2)?;
    inst.compose(&seq_product_right(inst, f1, f2)?, &diagonal(inst, inst.dom(f1)))
}

fn check_same_dom<I: CartesianEffectCategory>(inst: &I, f1: &I::Morphism, f2: &I::Morphism) -> Result<()> {
    if inst.dom(f1) == inst.dom(f2) {
        Ok(())
    } else {
        Err(Error::SignatureMismatch(format!(
            "sequential pair components have domains {} and {}",
            inst.dom(f1),
            inst.dom(f2)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::EffectCategory;
    use crate::finite::product;
    use crate::instances::{PartialMap, PartialMaps, StateMap, StateMaps};

    #[test]
    fn swap_moves_every_element() {
        let p = PartialMaps;
        let (a, b) = (FinSet::new(2), FinSet::new(3));
        let g = swap(&p, a, b);
        let src = product(b, a);
        let dst = product(a, b);
        for e in 0..6 {
            let (y, x) = src.decode(e).unwrap();
            assert_eq!(g.get(e), Some(dst.encode(x, y).unwrap()));
        }
    }

    #[test]
    fn assoc_third_projection() {
        let p = PartialMaps;
        let two = FinSet::new(2);
        let four = FinSet::new(4);
        let a = assoc(&p, two, two, two);
        let lhs = p.compose(&p.proj2(four, two), &a).unwrap();
        let rhs = p.compose(&p.proj2(two, two), &p.proj2(two, four)).unwrap();
        assert_eq!(lhs, rhs);
        let iso = assoc_iso(&p, two, two, two);
        assert_eq!(p.compose(&iso.backward, &iso.forward).unwrap(), p.identity(FinSet::new(8)));
    }

    #[test]
    fn rho_is_a_bijection() {
        let p = PartialMaps;
        let iso = unit_proj(&p, FinSet::new(3));
        assert_eq!(iso.forward.entries(), vec![Some(0), Some(1), Some(2)]);
        assert_eq!(p.compose(&iso.forward, &iso.backward).unwrap(), p.identity(FinSet::new(3)));
    }

    #[test]
    fn partial_semi_product_undefined_left() {
        let p = PartialMaps;
        let f = PartialMap::new(FinSet::new(2), FinSet::new(2), &[Some(1), None]).unwrap();
        let v = p.identity(FinSet::new(2));
        let h = semi_product_fv(&p, &f, &v).unwrap();
        assert_eq!(h.get(1), Some(3));
        assert_eq!(h.get(2), None);
        assert_eq!(h.get(3), None);
    }

    #[test]
    fn state_semi_product_effect() {
        let st = StateMaps::new(2).unwrap();
        let one = FinSet::new(1);
        let f = StateMap::new(st.states(), one, one, &[(1, 0), (1, 0)]).unwrap();
        let v = st.lift_pure(FinSet::new(2), FinSet::new(2), &[1, 0]).unwrap();
        let h = semi_product_fv(&st, &f, &v).unwrap();
        assert_eq!(h.apply(0, 0), (1, 1));
        assert_eq!(h.apply(0, 1), (1, 0));
    }

    #[test]
    fn state_seq_product_reads_written_state() {
        let st = StateMaps::new(2).unwrap();
        let one = FinSet::new(1);
        let two = FinSet::new(2);
        let write1 = StateMap::new(st.states(), one, one, &[(1, 0), (1, 0)]).unwrap();
        let read = StateMap::new(st.states(), one, two, &[(0, 0), (1, 1)]).unwrap();
        let h = seq_product_left(&st, &write1, &read).unwrap();
        assert_eq!(h.apply(0, 0), (1, 1));
        let k = seq_product_right(&st, &write1, &read).unwrap();
        assert_eq!(k.apply(0, 0), (1, 0));
    }

    #[test]
    fn everywhere_undefined_sequential_pair() {
        let p = PartialMaps;
        let bot = PartialMap::new(FinSet::new(2), FinSet::new(2), &[None, None]).unwrap();
        let id = p.identity(FinSet::new(2));
        let h = seq_pair_left(&p, &bot, &id).unwrap();
        assert!(h.entries().iter().all(Option::is_none));
    }
}
