//! Randomized invariants on morphisms too large to enumerate.

use effcat::cartesian::{semi_product_fv, seq_product_left, seq_product_right};
use effcat::instances::{from_kleisli, parse_partial, parse_state, to_kleisli, PartialMap, PartialMaps, StateMap, StateMaps};
use effcat::{CartesianEffectCategory, EffectCategory, FinSet};
use proptest::prelude::*;

fn partial(dom: usize, cod: usize) -> impl Strategy<Value = PartialMap> {
    proptest::collection::vec(proptest::option::of(0..cod), dom)
        .prop_map(move |e| PartialMap::new(FinSet::new(dom), FinSet::new(cod), &e).unwrap())
}

fn total(dom: usize, cod: usize) -> impl Strategy<Value = PartialMap> {
    proptest::collection::vec(0..cod, dom)
        .prop_map(move |t| PartialMaps.lift_pure(FinSet::new(dom), FinSet::new(cod), &t).unwrap())
}

const S: usize = 3;

fn state(dom: usize, cod: usize) -> impl Strategy<Value = StateMap> {
    proptest::collection::vec((0..S, 0..cod), S * dom)
        .prop_map(move |e| StateMap::new(FinSet::new(S), FinSet::new(dom), FinSet::new(cod), &e).unwrap())
}

fn state_pure(dom: usize, cod: usize) -> impl Strategy<Value = StateMap> {
    proptest::collection::vec(0..cod, dom).prop_map(move |t| {
        StateMaps::new(S).unwrap().lift_pure(FinSet::new(dom), FinSet::new(cod), &t).unwrap()
    })
}

proptest! {
    #[test]
    fn partial_composition_is_associative(f in partial(4, 5), g in partial(5, 3), h in partial(3, 6)) {
        let p = PartialMaps;
        let left = p.compose(&h, &p.compose(&g, &f).unwrap()).unwrap();
        let right = p.compose(&p.compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn state_composition_is_associative(f in state(2, 3), g in state(3, 2), h in state(2, 4)) {
        let st = StateMaps::new(S).unwrap();
        let left = st.compose(&h, &st.compose(&g, &f).unwrap()).unwrap();
        let right = st.compose(&st.compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn partial_semi_equation_is_antisymmetric(f in partial(5, 3), g in partial(5, 3)) {
        let p = PartialMaps;
        if p.semi_eq(&f, &g) && p.semi_eq(&g, &f) {
            prop_assert_eq!(f, g);
        }
    }

    #[test]
    fn weaker_than_equality_and_exact_on_pure(f in state(2, 2), v in state_pure(2, 2), w in state_pure(2, 2)) {
        let st = StateMaps::new(S).unwrap();
        prop_assert!(st.semi_eq(&f, &f));
        prop_assert_eq!(st.semi_eq(&v, &w), v == w);
    }

    #[test]
    fn semi_pair_projections_in_partial(f in partial(4, 3), v in total(4, 2)) {
        let p = PartialMaps;
        let pair = p.pair_fv(&f, &v).unwrap();
        let q1 = p.compose(&p.proj1(FinSet::new(3), FinSet::new(2)), &pair).unwrap();
        let q2 = p.compose(&p.proj2(FinSet::new(3), FinSet::new(2)), &pair).unwrap();
        prop_assert_eq!(&q1, &f);
        prop_assert!(p.semi_eq(&q2, &v));
    }

    #[test]
    fn semi_pair_projections_in_state(f in state(2, 3), v in state_pure(2, 2)) {
        let st = StateMaps::new(S).unwrap();
        let pair = st.pair_fv(&f, &v).unwrap();
        let q1 = st.compose(&st.proj1(FinSet::new(3), FinSet::new(2)), &pair).unwrap();
        let q2 = st.compose(&st.proj2(FinSet::new(3), FinSet::new(2)), &pair).unwrap();
        prop_assert_eq!(&q1, &f);
        prop_assert!(st.semi_eq(&q2, &v));
    }

    #[test]
    fn pure_second_factor_collapses_sequential_products(f in state(2, 2), v in state_pure(2, 3)) {
        let st = StateMaps::new(S).unwrap();
        let prod = semi_product_fv(&st, &f, &v).unwrap();
        prop_assert_eq!(&seq_product_left(&st, &f, &v).unwrap(), &prod);
        prop_assert_eq!(&seq_product_right(&st, &f, &v).unwrap(), &prod);
    }

    #[test]
    fn partial_sequential_products_agree(f1 in partial(2, 3), f2 in partial(3, 2)) {
        // Without state the order of evaluation is invisible.
        let p = PartialMaps;
        prop_assert_eq!(seq_product_left(&p, &f1, &f2).unwrap(), seq_product_right(&p, &f1, &f2).unwrap());
    }

    #[test]
    fn kleisli_round_trip(f in partial(6, 4)) {
        prop_assert_eq!(from_kleisli(&to_kleisli(&f)), f);
    }

    #[test]
    fn literals_round_trip(f in partial(5, 3), g in state(2, 3)) {
        prop_assert_eq!(parse_partial(&f.to_string()).unwrap(), f);
        prop_assert_eq!(parse_state(&g.to_string()).unwrap(), g);
    }
}
