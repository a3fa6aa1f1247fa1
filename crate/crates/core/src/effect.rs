//! The strict effect category contract and its cartesian extension.
//!
//! Strong equality is table equality. Purity is a decidable predicate
//! supplied by each instance, so the pure morphisms form a wide
//! subcategory with the same objects.

use crate::error::{Error, Result};
use crate::finite::{count_tables, FinSet, Tables};
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Morphism tables are tiny in every model we enumerate, so they live inline.
pub type Table = smallvec::SmallVec<[u32; 16]>;

pub trait EffectCategory: Sync {
    type Morphism: Clone + Eq + Hash + Debug + Display + Send + Sync;

    /// Short human-readable description, e.g. `state(|S|=2)`.
    fn descriptor(&self) -> String;

    fn dom(&self, f: &Self::Morphism) -> FinSet;
    fn cod(&self, f: &Self::Morphism) -> FinSet;
    fn identity(&self, x: FinSet) -> Self::Morphism;

    /// `g ∘ f`. Fails when `cod f ≠ dom g`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn is_pure(&self, f: &Self::Morphism) -> bool;

    fn strong_eq(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        f == g
    }

    fn semi_eq(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool;

    fn hom_cardinality(&self, x: FinSet, y: FinSet) -> u128;

    fn pure_cardinality(&self, x: FinSet, y: FinSet) -> u128 {
        count_tables(y.size, x.size)
    }

    /// Every morphism `x -> y`, each exactly once, in a fixed order.
    fn hom(&self, x: FinSet, y: FinSet) -> Box<dyn Iterator<Item = Self::Morphism> + '_>;

    /// Every pure morphism `x -> y`, in the order of their underlying tables.
    fn pure_hom(&self, x: FinSet, y: FinSet) -> Box<dyn Iterator<Item = Self::Morphism> + '_> {
        Box::new(
            Tables::new(x.size, y.size)
                .map(move |t| self.lift_pure(x, y, &t).expect("enumerated table is in range")),
        )
    }

    /// Embeds a total function of the underlying value category.
    fn lift_pure(&self, x: FinSet, y: FinSet, table: &[usize]) -> Result<Self::Morphism>;

    /// The underlying total function of a pure morphism.
    fn pure_table(&self, v: &Self::Morphism) -> Option<Vec<usize>>;

    fn check_composable(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<()> {
        if self.cod(f) == self.dom(g) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.dom(g),
                self.cod(g),
                self.dom(f),
                self.cod(f)
            )))
        }
    }
}

pub trait CartesianEffectCategory: EffectCategory {
    /// `⟨f, v⟩` with `v` pure: the first component carries the effect.
    fn pair_fv(&self, f: &Self::Morphism, v: &Self::Morphism) -> Result<Self::Morphism>;

    /// `⟨v, f⟩` with `v` pure.
    fn pair_vf(&self, v: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn bang(&self, x: FinSet) -> Self::Morphism {
        let zeros = vec![0; x.size];
        self.lift_pure(x, FinSet::UNIT, &zeros).expect("bang table")
    }

    /// `q1 : a × b -> a`.
    fn proj1(&self, a: FinSet, b: FinSet) -> Self::Morphism {
        let t: Vec<usize> = (0..a.size * b.size).map(|e| e / b.size).collect();
        self.lift_pure(FinSet::new(a.size * b.size), a, &t).expect("projection table")
    }

    /// `q2 : a × b -> b`.
    fn proj2(&self, a: FinSet, b: FinSet) -> Self::Morphism {
        let t: Vec<usize> = (0..a.size * b.size).map(|e| e % b.size).collect();
        self.lift_pure(FinSet::new(a.size * b.size), b, &t).expect("projection table")
    }
}

/// Enumerates `hom(x, y)` unless its cardinality exceeds `budget`.
pub fn enumerate_hom<I: EffectCategory>(
    inst: &I,
    x: FinSet,
    y: FinSet,
    budget: u64,
) -> Result<Vec<I::Morphism>> {
    let n = inst.hom_cardinality(x, y);
    if n > budget as u128 {
        return Err(Error::BudgetExceeded { dom: x.size, cod: y.size, cardinality: n, budget });
    }
    Ok(inst.hom(x, y).collect())
}

/// Enumerates the pure part of `hom(x, y)` unless it exceeds `budget`.
pub fn enumerate_pure<I: EffectCategory>(
    inst: &I,
    x: FinSet,
    y: FinSet,
    budget: u64,
) -> Result<Vec<I::Morphism>> {
    let n = inst.pure_cardinality(x, y);
    if n > budget as u128 {
        return Err(Error::BudgetExceeded { dom: x.size, cod: y.size, cardinality: n, budget });
    }
    Ok(inst.pure_hom(x, y).collect())
}

/// Chooses the semi-pair whose pure side is actually pure, preferring `⟨f, v⟩`.
pub fn pair<I: CartesianEffectCategory>(
    inst: &I,
    a: &I::Morphism,
    b: &I::Morphism,
) -> Result<I::Morphism> {
    if inst.is_pure(b) {
        inst.pair_fv(a, b)
    } else if inst.is_pure(a) {
        inst.pair_vf(a, b)
    } else {
        Err(Error::PurityViolation(format!(
            "pair ⟨{a}, {b}⟩ needs at least one pure component"
        )))
    }
}

pub(crate) fn to_table(v: &[usize]) -> Table {
    v.iter().map(|&e| e as u32).collect()
}

pub(crate) fn check_entries(v: &[usize], bound: usize, what: &str) -> Result<()> {
    match v.iter().find(|&&e| e >= bound) {
        Some(&e) => Err(Error::InvalidTable(format!("{what} entry {e} is not below {bound}"))),
        None => Ok(()),
    }
}
