//! Total maps `X -> Y + 1` composed in the Kleisli way, with `⊥` stored as
//! index `|Y|`. Pairing goes through the strength of the Maybe monad, which
//! makes it an independent route to the partial-map semi-pairs.

use super::partial::PartialMap;
use crate::effect::{CartesianEffectCategory, EffectCategory, Table};
use crate::error::{Error, Result};
use crate::finite::{count_tables, FinSet, Tables};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaybeKleisliMap {
    dom: FinSet,
    cod: FinSet,
    table: Table,
}

impl MaybeKleisliMap {
    /// `table[x]` is either an element of `cod` or `cod.size` for `⊥`.
    pub fn new(dom: FinSet, cod: FinSet, table: &[usize]) -> Result<Self> {
        if table.len() != dom.size {
            return Err(Error::InvalidTable(format!(
                "Kleisli map on {} elements given {} entries",
                dom.size,
                table.len()
            )));
        }
        crate::effect::check_entries(table, cod.size + 1, "Kleisli")?;
        Ok(MaybeKleisliMap { dom, cod, table: crate::effect::to_table(table) })
    }

    pub fn dom(&self) -> FinSet {
        self.dom
    }

    pub fn cod(&self) -> FinSet {
        self.cod
    }

    pub fn bottom(&self) -> usize {
        self.cod.size
    }

    pub fn get(&self, x: usize) -> usize {
        self.table[x] as usize
    }
}

impl fmt::Display for MaybeKleisliMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}+1 = [", self.dom.size, self.cod.size)?;
        for (i, &e) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if e as usize == self.cod.size {
                f.write_str("⊥")?;
            } else {
                write!(f, "{e}")?;
            }
        }
        f.write_str("]")
    }
}

/// The Kleisli category of the Maybe monad on finite sets.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaybeKleisli;

/// `η_X` for the Maybe monad is the identity on indices.
pub fn unit_eta(x: FinSet) -> MaybeKleisliMap {
    MaybeKleisliMap { dom: x, cod: x, table: (0..x.size as u32).collect() }
}

/// The strength `t : GY1 × Y2 -> G(Y1 × Y2)` as a plain function table.
pub fn strength(y1: FinSet, y2: FinSet) -> Vec<usize> {
    let bot = y1.size * y2.size;
    let mut t = Vec::with_capacity((y1.size + 1) * y2.size);
    for a in 0..=y1.size {
        for b in y2.elements() {
            t.push(if a == y1.size { bot } else { a * y2.size + b });
        }
    }
    t
}

/// The mirrored strength `t' : Y1 × GY2 -> G(Y1 × Y2)`.
pub fn strength_mirrored(y1: FinSet, y2: FinSet) -> Vec<usize> {
    let bot = y1.size * y2.size;
    let mut t = Vec::with_capacity(y1.size * (y2.size + 1));
    for a in y1.elements() {
        for b in 0..=y2.size {
            t.push(if b == y2.size { bot } else { a * y2.size + b });
        }
    }
    t
}

impl EffectCategory for MaybeKleisli {
    type Morphism = MaybeKleisliMap;

    fn descriptor(&self) -> String {
        "kleisli-maybe".to_string()
    }

    fn dom(&self, f: &MaybeKleisliMap) -> FinSet {
        f.dom
    }

    fn cod(&self, f: &MaybeKleisliMap) -> FinSet {
        f.cod
    }

    fn identity(&self, x: FinSet) -> MaybeKleisliMap {
        unit_eta(x)
    }

    fn compose(&self, g: &MaybeKleisliMap, f: &MaybeKleisliMap) -> Result<MaybeKleisliMap> {
        self.check_composable(g, f)?;
        let fb = f.cod.size as u32;
        let gb = g.cod.size as u32;
        let table = f.table.iter().map(|&y| if y == fb { gb } else { g.table[y as usize] }).collect();
        Ok(MaybeKleisliMap { dom: f.dom, cod: g.cod, table })
    }

    fn is_pure(&self, f: &MaybeKleisliMap) -> bool {
        f.table.iter().all(|&e| (e as usize) < f.cod.size)
    }

    fn semi_eq(&self, f: &MaybeKleisliMap, g: &MaybeKleisliMap) -> bool {
        f.dom == g.dom
            && f.cod == g.cod
            && f.table.iter().zip(&g.table).all(|(&a, &b)| a as usize == f.cod.size || a == b)
    }

    fn hom_cardinality(&self, x: FinSet, y: FinSet) -> u128 {
        count_tables(y.size + 1, x.size)
    }

    fn hom(&self, x: FinSet, y: FinSet) -> Box<dyn Iterator<Item = MaybeKleisliMap> + '_> {
        Box::new(Tables::new(x.size, y.size + 1).map(move |t| MaybeKleisliMap {
            dom: x,
            cod: y,
            table: crate::effect::to_table(&t),
        }))
    }

    fn lift_pure(&self, x: FinSet, y: FinSet, table: &[usize]) -> Result<MaybeKleisliMap> {
        crate::effect::check_entries(table, y.size, "function")?;
        MaybeKleisliMap::new(x, y, table)
    }

    fn pure_table(&self, v: &MaybeKleisliMap) -> Option<Vec<usize>> {
        if self.is_pure(v) {
            Some(v.table.iter().map(|&e| e as usize).collect())
        } else {
            None
        }
    }
}

impl CartesianEffectCategory for MaybeKleisli {
    fn pair_fv(&self, f: &MaybeKleisliMap, v: &MaybeKleisliMap) -> Result<MaybeKleisliMap> {
        let v0 = self.strong_pair_check(f, v, v)?;
        let t = strength(f.cod, v.cod);
        let table: Vec<usize> = (0..f.dom.size)
            .map(|x| t[f.get(x) * v.cod.size + v0[x]])
            .collect();
        MaybeKleisliMap::new(f.dom, FinSet::new(f.cod.size * v.cod.size), &table)
    }

    fn pair_vf(&self, v: &MaybeKleisliMap, f: &MaybeKleisliMap) -> Result<MaybeKleisliMap> {
        let v0 = self.strong_pair_check(v, f, v)?;
        let t = strength_mirrored(v.cod, f.cod);
        let table: Vec<usize> = (0..f.dom.size)
            .map(|x| t[v0[x] * (f.cod.size + 1) + f.get(x)])
            .collect();
        MaybeKleisliMap::new(f.dom, FinSet::new(v.cod.size * f.cod.size), &table)
    }
}

impl MaybeKleisli {
    fn strong_pair_check(
        &self,
        a: &MaybeKleisliMap,
        b: &MaybeKleisliMap,
        pure: &MaybeKleisliMap,
    ) -> Result<Vec<usize>> {
        if a.dom != b.dom {
            return Err(Error::SignatureMismatch(format!(
                "pair components have domains {} and {}",
                a.dom, b.dom
            )));
        }
        self.pure_table(pure)
            .ok_or_else(|| Error::PurityViolation(format!("pair component {pure} is not total")))
    }
}

pub fn to_kleisli(f: &PartialMap) -> MaybeKleisliMap {
    let bot = f.cod().size;
    let table: Vec<usize> = f.entries().into_iter().map(|e| e.unwrap_or(bot)).collect();
    MaybeKleisliMap { dom: f.dom(), cod: f.cod(), table: crate::effect::to_table(&table) }
}

pub fn from_kleisli(k: &MaybeKleisliMap) -> PartialMap {
    let entries: Vec<Option<usize>> = k
        .table
        .iter()
        .map(|&e| if e as usize == k.cod.size { None } else { Some(e as usize) })
        .collect();
    PartialMap::new(k.dom, k.cod, &entries).expect("Kleisli entries are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::partial::PartialMaps;

    #[test]
    fn round_trip_two_by_two() {
        let p = PartialMaps;
        let two = FinSet::new(2);
        let all: Vec<_> = p.hom(two, two).collect();
        assert_eq!(all.len(), 9);
        for f in &all {
            assert_eq!(&from_kleisli(&to_kleisli(f)), f);
        }
    }

    #[test]
    fn bottom_and_identity() {
        let bot = PartialMap::new(FinSet::new(2), FinSet::new(3), &[None, None]).unwrap();
        let k = to_kleisli(&bot);
        assert_eq!(k.get(0), 3);
        assert_eq!(k.get(1), 3);
        let id = PartialMaps.identity(FinSet::new(3));
        assert_eq!(to_kleisli(&id), unit_eta(FinSet::new(3)));
    }

    #[test]
    fn strength_sends_bottom_to_bottom() {
        let t = strength(FinSet::new(2), FinSet::new(3));
        assert_eq!(t.len(), 9);
        assert!(t[6..].iter().all(|&e| e == 6));
        assert_eq!(t[4], 4);
    }
}
