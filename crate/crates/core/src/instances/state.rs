//! Maps `S × X -> S × Y` for a fixed finite state set `S`. A morphism is
//! pure when it leaves the state alone and its value ignores the state.
//! `f ≲ g` compares value components only.

use crate::effect::{CartesianEffectCategory, EffectCategory, Table};
use crate::error::{Error, Result};
use crate::finite::{count_tables, FinSet, Tables};
use std::fmt;

/// Entry `i = s·|X| + x` holds `s'·|Y| + y` for `f(s, x) = (s', y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateMap {
    states: FinSet,
    dom: FinSet,
    cod: FinSet,
    table: Table,
}

impl StateMap {
    /// `entries` lists `(s', y)` for every `(s, x)` in row-major order.
    pub fn new(states: FinSet, dom: FinSet, cod: FinSet, entries: &[(usize, usize)]) -> Result<Self> {
        if entries.len() != states.size * dom.size {
            return Err(Error::InvalidTable(format!(
                "state map on {}×{} given {} entries",
                states.size,
                dom.size,
                entries.len()
            )));
        }
        let mut table = Table::with_capacity(entries.len());
        for &(s, y) in entries {
            states.check(s)?;
            cod.check(y)?;
            table.push((s * cod.size + y) as u32);
        }
        Ok(StateMap { states, dom, cod, table })
    }

    pub fn states(&self) -> FinSet {
        self.states
    }

    pub fn dom(&self) -> FinSet {
        self.dom
    }

    pub fn cod(&self) -> FinSet {
        self.cod
    }

    pub fn apply(&self, s: usize, x: usize) -> (usize, usize) {
        let e = self.table[s * self.dom.size + x] as usize;
        (e / self.cod.size, e % self.cod.size)
    }

    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.table.len());
        for s in self.states.elements() {
            for x in self.dom.elements() {
                out.push(self.apply(s, x));
            }
        }
        out
    }

    fn values(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.cod.size as u32;
        self.table.iter().map(move |&e| e % n)
    }
}

impl fmt::Display for StateMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={}, {}->{} = [", self.states.size, self.dom.size, self.cod.size)?;
        let mut first = true;
        for s in self.states.elements() {
            for x in self.dom.elements() {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                let (t, y) = self.apply(s, x);
                write!(f, "({s},{x})->({t},{y})")?;
            }
        }
        f.write_str("]")
    }
}

/// The cartesian effect category of state-passing maps over a fixed `S`.
#[derive(Debug, Clone, Copy)]
pub struct StateMaps {
    states: FinSet,
}

impl StateMaps {
    pub fn new(states: usize) -> Result<Self> {
        if states == 0 {
            return Err(Error::Contract("the state set must be nonempty".into()));
        }
        Ok(StateMaps { states: FinSet::new(states) })
    }

    pub fn states(&self) -> FinSet {
        self.states
    }

    fn same_states(&self, f: &StateMap) -> Result<()> {
        if f.states == self.states {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "morphism over |S|={} used in instance with |S|={}",
                f.states.size, self.states.size
            )))
        }
    }

    /// `(s, x) ↦ (s', (a, b))` where the effect comes from `eff` and the
    /// other component is the state-independent value of `pure`.
    fn pair_with(&self, a: &StateMap, b: &StateMap, left_pure: bool) -> Result<StateMap> {
        self.same_states(a)?;
        self.same_states(b)?;
        if a.dom != b.dom {
            return Err(Error::SignatureMismatch(format!(
                "pair components have domains {} and {}",
                a.dom, b.dom
            )));
        }
        let (eff, pure) = if left_pure { (b, a) } else { (a, b) };
        let v0 = self
            .pure_table(pure)
            .ok_or_else(|| Error::PurityViolation(format!("pair component {pure} is not pure")))?;
        let cod = FinSet::new(a.cod.size * b.cod.size);
        let nx = a.dom.size;
        let mut table = Table::with_capacity(eff.table.len());
        for (i, &e) in eff.table.iter().enumerate() {
            let (s2, y) = (e as usize / eff.cod.size, e as usize % eff.cod.size);
            let w = v0[i % nx];
            let value = if left_pure { w * b.cod.size + y } else { y * b.cod.size + w };
            table.push((s2 * cod.size + value) as u32);
        }
        Ok(StateMap { states: self.states, dom: a.dom, cod, table })
    }
}

impl EffectCategory for StateMaps {
    type Morphism = StateMap;

    fn descriptor(&self) -> String {
        format!("state(|S|={})", self.states.size)
    }

    fn dom(&self, f: &StateMap) -> FinSet {
        f.dom
    }

    fn cod(&self, f: &StateMap) -> FinSet {
        f.cod
    }

    fn identity(&self, x: FinSet) -> StateMap {
        StateMap {
            states: self.states,
            dom: x,
            cod: x,
            table: (0..(self.states.size * x.size) as u32).collect(),
        }
    }

    fn compose(&self, g: &StateMap, f: &StateMap) -> Result<StateMap> {
        self.check_composable(g, f)?;
        self.same_states(f)?;
        self.same_states(g)?;
        // f's entry (s', y) is exactly g's row index s'·|Y| + y.
        let table = f.table.iter().map(|&e| g.table[e as usize]).collect();
        Ok(StateMap { states: self.states, dom: f.dom, cod: g.cod, table })
    }

    fn is_pure(&self, f: &StateMap) -> bool {
        let nx = f.dom.size;
        let ny = f.cod.size as u32;
        f.table.iter().enumerate().all(|(i, &e)| {
            let s = (i / nx) as u32;
            e / ny == s && e % ny == f.table[i % nx] % ny
        })
    }

    fn semi_eq(&self, f: &StateMap, g: &StateMap) -> bool {
        f.dom == g.dom && f.cod == g.cod && f.values().eq(g.values())
    }

    fn hom_cardinality(&self, x: FinSet, y: FinSet) -> u128 {
        count_tables(self.states.size * y.size, self.states.size * x.size)
    }

    fn hom(&self, x: FinSet, y: FinSet) -> Box<dyn Iterator<Item = StateMap> + '_> {
        let n = self.states.size;
        Box::new(Tables::new(n * x.size, n * y.size).map(move |t| StateMap {
            states: self.states,
            dom: x,
            cod: y,
            table: t.iter().map(|&e| e as u32).collect(),
        }))
    }

    fn lift_pure(&self, x: FinSet, y: FinSet, table: &[usize]) -> Result<StateMap> {
        if table.len() != x.size {
            return Err(Error::InvalidTable(format!(
                "function on {} elements given {} entries",
                x.size,
                table.len()
            )));
        }
        crate::effect::check_entries(table, y.size, "function")?;
        let mut out = Table::with_capacity(self.states.size * x.size);
        for s in self.states.elements() {
            for &v in table {
                out.push((s * y.size + v) as u32);
            }
        }
        Ok(StateMap { states: self.states, dom: x, cod: y, table: out })
    }

    fn pure_table(&self, v: &StateMap) -> Option<Vec<usize>> {
        if self.is_pure(v) {
            Some(v.table[..v.dom.size].iter().map(|&e| (e as usize) % v.cod.size).collect())
        } else {
            None
        }
    }
}

impl CartesianEffectCategory for StateMaps {
    fn pair_fv(&self, f: &StateMap, v: &StateMap) -> Result<StateMap> {
        self.pair_with(f, v, false)
    }

    fn pair_vf(&self, v: &StateMap, f: &StateMap) -> Result<StateMap> {
        self.pair_with(v, f, true)
    }
}
