//! Hand-computed values for small morphisms in each model.

use effcat::cartesian::{
    assoc, seq_pair_left, seq_product_left, seq_product_right, semi_product_fv, semi_product_vf, swap,
    unit_proj,
};
use effcat::finite::product;
use effcat::instances::{from_kleisli, parse_partial, parse_state, to_kleisli, MaybeKleisli, PartialMaps, StateMaps};
use effcat::laws::{run_check, LawConfig, Status};
use effcat::{CartesianEffectCategory, EffectCategory, FinSet, Result};

fn fs(n: usize) -> FinSet {
    FinSet::new(n)
}

#[test]
fn partial_semi_product_is_undefined_where_the_effectful_side_is() {
    let p = PartialMaps;
    let f = parse_partial("2 -> 2 = [1, _]").unwrap();
    let v = parse_partial("2 -> 2 = [1, 0]").unwrap();
    let fv = semi_product_fv(&p, &f, &v).unwrap();
    // (0,0) -> (1,1), (0,1) -> (1,0), and nothing from x1 = 1.
    assert_eq!(fv, parse_partial("4 -> 4 = [3, 2, _, _]").unwrap());
    let vf = semi_product_vf(&p, &v, &f).unwrap();
    assert_eq!(vf, parse_partial("4 -> 4 = [3, _, 1, _]").unwrap());
}

#[test]
fn semi_product_rejects_an_impure_side() {
    let p = PartialMaps;
    let f = parse_partial("1 -> 1 = [_]").unwrap();
    assert!(semi_product_fv(&p, &f, &f).is_err());
}

#[test]
fn state_semi_product_keeps_the_written_state() {
    let st = StateMaps::new(2).unwrap();
    // Writes state 1 and returns 1.
    let f = parse_state("S=2, 1 -> 2 = [(0,0)->(1,1), (1,0)->(1,1)]").unwrap();
    let v = st.lift_pure(fs(2), fs(2), &[1, 0]).unwrap();
    let fv = semi_product_fv(&st, &f, &v).unwrap();
    let want = parse_state("S=2, 2 -> 4 = [(0,0)->(1,3), (0,1)->(1,2), (1,0)->(1,3), (1,1)->(1,2)]").unwrap();
    assert_eq!(fv, want);
}

#[test]
fn sequential_products_differ_in_the_state_model() {
    let st = StateMaps::new(2).unwrap();
    let write = parse_state("S=2, 1 -> 1 = [(0,0)->(1,0), (1,0)->(1,0)]").unwrap();
    let read = parse_state("S=2, 1 -> 2 = [(0,0)->(0,0), (1,0)->(1,1)]").unwrap();
    let left = seq_product_left(&st, &write, &read).unwrap();
    let right = seq_product_right(&st, &write, &read).unwrap();
    // The write happens first on the left, so the read sees state 1.
    assert_eq!(left.apply(0, 0), (1, 1));
    assert_eq!(right.apply(0, 0), (1, 0));
    assert!(!st.strong_eq(&left, &right));
    assert!(!st.semi_eq(&left, &right));
}

#[test]
fn sequential_pair_projection_is_only_below_in_state() {
    let st = StateMaps::new(2).unwrap();
    let f = st.identity(fs(1));
    let g = parse_state("S=2, 1 -> 1 = [(0,0)->(1,0), (1,0)->(1,0)]").unwrap();
    let pair = seq_pair_left(&st, &f, &g).unwrap();
    let q1 = st.compose(&st.proj1(fs(1), fs(1)), &pair).unwrap();
    assert_ne!(q1, f);
    assert!(st.semi_eq(&q1, &f));
}

#[test]
fn sequential_pair_of_undefined_is_undefined() {
    let p = PartialMaps;
    let f = parse_partial("2 -> 1 = [_, _]").unwrap();
    let g = parse_partial("2 -> 2 = [0, 1]").unwrap();
    let pair = seq_pair_left(&p, &f, &g).unwrap();
    assert_eq!(pair, parse_partial("2 -> 2 = [_, _]").unwrap());
    let q1 = p.compose(&p.proj1(fs(1), fs(2)), &pair).unwrap();
    assert!(p.semi_eq(&q1, &f));
}

#[test]
fn pure_sequential_product_is_the_product() {
    let p = PartialMaps;
    let a = parse_partial("2 -> 2 = [1, 0]").unwrap();
    let b = parse_partial("1 -> 3 = [2]").unwrap();
    let s = seq_product_left(&p, &a, &b).unwrap();
    assert_eq!(s, semi_product_fv(&p, &a, &b).unwrap());
    assert_eq!(s, parse_partial("2 -> 6 = [5, 2]").unwrap());
}

#[test]
fn swap_moves_every_element() {
    let p = PartialMaps;
    let g = swap(&p, fs(2), fs(3));
    let (ba, ab) = (product(fs(3), fs(2)), product(fs(2), fs(3)));
    for a in 0..2 {
        for b in 0..3 {
            let src = ba.encode(b, a).unwrap();
            assert_eq!(g.get(src), Some(ab.encode(a, b).unwrap()));
        }
    }
}

#[test]
fn associativity_isomorphism_on_eight_elements() {
    let p = PartialMaps;
    let a = assoc(&p, fs(2), fs(2), fs(2));
    // x1 × (x2 × x3) -> (x1 × x2) × x3 keeps the digits in order.
    for e in 0..8 {
        assert_eq!(a.get(e), Some(e));
    }
    let a = assoc(&p, fs(2), fs(3), fs(2));
    // (1, (2, 1)) is 1*6 + 2*2 + 1 = 11 and ((1, 2), 1) is (1*3 + 2)*2 + 1 = 11.
    assert_eq!(a.get(11), Some(11));
    // (0, (1, 0)) is 2 and ((0, 1), 0) is 2.
    assert_eq!(a.get(2), Some(2));
}

#[test]
fn unit_projection_is_a_bijection() {
    let p = PartialMaps;
    let r = unit_proj(&p, fs(3));
    assert_eq!(p.compose(&r.forward, &r.backward).unwrap(), p.identity(fs(3)));
    assert_eq!(p.compose(&r.backward, &r.forward).unwrap(), p.identity(fs(3)));
}

#[test]
fn hom_set_sizes() {
    let p = PartialMaps;
    assert_eq!(p.hom_cardinality(fs(2), fs(2)), 9);
    assert_eq!(p.hom(fs(2), fs(2)).count(), 9);
    assert_eq!(p.hom_cardinality(fs(2), fs(4)), 25);
    assert_eq!(p.hom(fs(0), fs(3)).count(), 1);
    let st = StateMaps::new(2).unwrap();
    assert_eq!(st.hom_cardinality(fs(1), fs(1)), 4);
    assert_eq!(st.hom_cardinality(fs(2), fs(2)), 256);
    // Pure state maps are the plain functions.
    assert_eq!(st.pure_hom(fs(2), fs(2)).count(), 4);
    assert_eq!(st.hom(fs(1), fs(2)).filter(|f| st.is_pure(f)).count(), 2);
}

#[test]
fn semi_equation_examples() {
    let p = PartialMaps;
    let less = parse_partial("2 -> 2 = [_, 1]").unwrap();
    let more = parse_partial("2 -> 2 = [0, 1]").unwrap();
    assert!(p.semi_eq(&less, &more));
    assert!(!p.semi_eq(&more, &less));
    let st = StateMaps::new(2).unwrap();
    let keep = st.identity(fs(1));
    let flip = parse_state("S=2, 1 -> 1 = [(0,0)->(1,0), (1,0)->(0,0)]").unwrap();
    assert!(st.semi_eq(&keep, &flip) && st.semi_eq(&flip, &keep));
    assert!(!st.strong_eq(&keep, &flip));
    assert!(!st.is_pure(&flip));
}

#[test]
fn kleisli_round_trip_counts() {
    let k = MaybeKleisli;
    let maps: Vec<_> = PartialMaps.hom(fs(2), fs(2)).collect();
    assert_eq!(maps.len(), 9);
    for f in &maps {
        assert_eq!(&from_kleisli(&to_kleisli(f)), f);
    }
    let pure = maps.iter().filter(|f| k.is_pure(&to_kleisli(f))).count();
    assert_eq!(pure, 4);
}

/// The partial-map model with a broken semi-equation: everything is below
/// everything.
struct Collapsed;

impl EffectCategory for Collapsed {
    type Morphism = <PartialMaps as EffectCategory>::Morphism;

    fn descriptor(&self) -> String {
        "collapsed".into()
    }
    fn dom(&self, f: &Self::Morphism) -> FinSet {
        PartialMaps.dom(f)
    }
    fn cod(&self, f: &Self::Morphism) -> FinSet {
        PartialMaps.cod(f)
    }
    fn identity(&self, x: FinSet) -> Self::Morphism {
        PartialMaps.identity(x)
    }
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism> {
        PartialMaps.compose(g, f)
    }
    fn is_pure(&self, f: &Self::Morphism) -> bool {
        PartialMaps.is_pure(f)
    }
    fn semi_eq(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        f.dom() == g.dom() && f.cod() == g.cod()
    }
    fn hom_cardinality(&self, x: FinSet, y: FinSet) -> u128 {
        PartialMaps.hom_cardinality(x, y)
    }
    fn hom(&self, x: FinSet, y: FinSet) -> Box<dyn Iterator<Item = Self::Morphism> + '_> {
        PartialMaps.hom(x, y)
    }
    fn lift_pure(&self, x: FinSet, y: FinSet, table: &[usize]) -> Result<Self::Morphism> {
        PartialMaps.lift_pure(x, y, table)
    }
    fn pure_table(&self, v: &Self::Morphism) -> Option<Vec<usize>> {
        PartialMaps.pure_table(v)
    }
}

impl CartesianEffectCategory for Collapsed {
    fn pair_fv(&self, f: &Self::Morphism, v: &Self::Morphism) -> Result<Self::Morphism> {
        PartialMaps.pair_fv(f, v)
    }
    fn pair_vf(&self, v: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism> {
        PartialMaps.pair_vf(v, f)
    }
}

#[test]
fn a_corrupted_model_is_caught_with_a_witness() {
    let cfg = LawConfig { max_size: 2, budget: 1_000_000 };
    let (check, witness) = run_check(&Collapsed, "def.effect.coincide.le_to_eq", &cfg).unwrap();
    assert_eq!(check.status, Status::Fail);
    assert!(check.witness.as_ref().unwrap().rechecked);
    let w = witness.unwrap();
    assert_ne!(w.symbol("v1"), w.symbol("v2"));
    // The genuine model passes the same check.
    let (check, _) = run_check(&PartialMaps, "def.effect.coincide.le_to_eq", &cfg).unwrap();
    assert_eq!(check.status, Status::Pass);
}
