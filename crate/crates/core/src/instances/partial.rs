//! Finite sets with partial maps. Pure means total; `f ≲ g` means `f` is a
//! restriction of `g`.

use crate::effect::{CartesianEffectCategory, EffectCategory, Table};
use crate::error::{Error, Result};
use crate::finite::{count_tables, FinSet, Tables};
use std::fmt;

const BOT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    dom: FinSet,
    cod: FinSet,
    table: Table,
}

impl PartialMap {
    pub fn new(dom: FinSet, cod: FinSet, entries: &[Option<usize>]) -> Result<Self> {
        if entries.len() != dom.size {
            return Err(Error::InvalidTable(format!(
                "partial map on {} elements given {} entries",
                dom.size,
                entries.len()
            )));
        }
        let mut table = Table::with_capacity(entries.len());
        for e in entries {
            match *e {
                Some(y) => {
                    cod.check(y)?;
                    table.push(y as u32);
                }
                None => table.push(BOT),
            }
        }
        Ok(PartialMap { dom, cod, table })
    }

    pub fn dom(&self) -> FinSet {
        self.dom
    }

    pub fn cod(&self) -> FinSet {
        self.cod
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        match self.table[x] {
            BOT => None,
            y => Some(y as usize),
        }
    }

    pub fn entries(&self) -> Vec<Option<usize>> {
        (0..self.dom.size).map(|x| self.get(x)).collect()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|&e| e != BOT)
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} = [", self.dom.size, self.cod.size)?;
        for (i, e) in self.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match e {
                Some(y) => write!(f, "{y}")?,
                None => f.write_str("_")?,
            }
        }
        f.write_str("]")
    }
}

/// The cartesian effect category of partial maps between finite sets.
#[derive(Debug, Clone, Copy, Default)]
pub struct PartialMaps;

impl EffectCategory for PartialMaps {
    type Morphism = PartialMap;

    fn descriptor(&self) -> String {
        "partial".to_string()
    }

    fn dom(&self, f: &PartialMap) -> FinSet {
        f.dom
    }

    fn cod(&self, f: &PartialMap) -> FinSet {
        f.cod
    }

    fn identity(&self, x: FinSet) -> PartialMap {
        PartialMap { dom: x, cod: x, table: (0..x.size as u32).collect() }
    }

    fn compose(&self, g: &PartialMap, f: &PartialMap) -> Result<PartialMap> {
        self.check_composable(g, f)?;
        let table = f
            .table
            .iter()
            .map(|&y| if y == BOT { BOT } else { g.table[y as usize] })
            .collect();
        Ok(PartialMap { dom: f.dom, cod: g.cod, table })
    }

    fn is_pure(&self, f: &PartialMap) -> bool {
        f.is_total()
    }

    fn semi_eq(&self, f: &PartialMap, g: &PartialMap) -> bool {
        f.dom == g.dom
            && f.cod == g.cod
            && f.table.iter().zip(&g.table).all(|(&a, &b)| a == BOT || a == b)
    }

    fn hom_cardinality(&self, x: FinSet, y: FinSet) -> u128 {
        count_tables(y.size + 1, x.size)
    }

    fn hom(&self, x: FinSet, y: FinSet) -> Box<dyn Iterator<Item = PartialMap> + '_> {
        Box::new(Tables::new(x.size, y.size + 1).map(move |t| PartialMap {
            dom: x,
            cod: y,
            table: t.iter().map(|&e| if e == y.size { BOT } else { e as u32 }).collect(),
        }))
    }

    fn lift_pure(&self, x: FinSet, y: FinSet, table: &[usize]) -> Result<PartialMap> {
        let entries: Vec<Option<usize>> = table.iter().map(|&e| Some(e)).collect();
        PartialMap::new(x, y, &entries)
    }

    fn pure_table(&self, v: &PartialMap) -> Option<Vec<usize>> {
        v.entries().into_iter().collect()
    }
}

impl CartesianEffectCategory for PartialMaps {
    fn pair_fv(&self, f: &PartialMap, v: &PartialMap) -> Result<PartialMap> {
        pair_with(f, v, false)
    }

    fn pair_vf(&self, v: &PartialMap, f: &PartialMap) -> Result<PartialMap> {
        pair_with(v, f, true)
    }
}

// Defined exactly where the effectful component is defined.
fn pair_with(a: &PartialMap, b: &PartialMap, left_pure: bool) -> Result<PartialMap> {
    if a.dom != b.dom {
        return Err(Error::SignatureMismatch(format!(
            "pair components have domains {} and {}",
            a.dom, b.dom
        )));
    }
    let pure = if left_pure { a } else { b };
    if !pure.is_total() {
        return Err(Error::PurityViolation(format!("pair component {pure} is not total")));
    }
    let n2 = b.cod.size as u32;
    let table = a
        .table
        .iter()
        .zip(&b.table)
        .map(|(&y1, &y2)| if y1 == BOT || y2 == BOT { BOT } else { y1 * n2 + y2 })
        .collect();
    Ok(PartialMap { dom: a.dom, cod: FinSet::new(a.cod.size * b.cod.size), table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(d: usize, c: usize, e: &[Option<usize>]) -> PartialMap {
        PartialMap::new(FinSet::new(d), FinSet::new(c), e).unwrap()
    }

    #[test]
    fn hom_counts() {
        let p = PartialMaps;
        let (x, y) = (FinSet::new(2), FinSet::new(1));
        assert_eq!(p.hom(x, y).count(), 4);
        assert_eq!(p.hom(x, y).filter(|f| p.is_pure(f)).count(), 1);
        assert_eq!(p.hom(FinSet::new(2), FinSet::new(2)).count(), 9);
        assert_eq!(p.hom(FinSet::new(2), FinSet::new(4)).count(), 25);
        let empty: Vec<_> = p.hom(FinSet::new(0), FinSet::new(3)).collect();
        assert_eq!(empty.len(), 1);
        assert!(p.is_pure(&empty[0]));
    }

    #[test]
    fn composition_examples() {
        let p = PartialMaps;
        let f = pm(2, 2, &[Some(1), None]);
        assert_eq!(p.compose(&p.identity(FinSet::new(2)), &f).unwrap(), f);
        let g = pm(2, 2, &[Some(0), None]);
        assert_eq!(p.compose(&g, &f).unwrap().get(0), None);
        assert!(p.compose(&f, &pm(1, 3, &[Some(0)])).is_err());
    }

    #[test]
    fn semi_product_clauses_by_hand() {
        let p = PartialMaps;
        let f = pm(1, 2, &[None]);
        let v = pm(1, 2, &[Some(1)]);
        let h = p.pair_fv(&f, &v).unwrap();
        assert_eq!(h.get(0), None);
        assert!(p.pair_fv(&v, &f).is_err());
    }

    #[test]
    fn semi_eq_is_restriction() {
        let p = PartialMaps;
        let bot = pm(2, 2, &[None, None]);
        let id = p.identity(FinSet::new(2));
        assert!(p.semi_eq(&bot, &id));
        assert!(!p.semi_eq(&id, &bot));
    }
}
