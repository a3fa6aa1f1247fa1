//! Finite carriers with dense element indices and row-major products.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// A finite set `{0, .., size-1}`. The empty carrier is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FinSet {
    pub size: usize,
}

impl FinSet {
    /// The one-element terminal carrier.
    pub const UNIT: FinSet = FinSet { size: 1 };

    pub const fn new(size: usize) -> Self {
        FinSet { size }
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn contains(self, e: usize) -> bool {
        e < self.size
    }

    pub fn check(self, e: usize) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: e, size: self.size })
        }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size)
    }
}

/// `left × right` with `(a, b) ↔ a·|right| + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSet {
    pub left: FinSet,
    pub right: FinSet,
}

impl ProductSet {
    pub fn carrier(self) -> FinSet {
        FinSet::new(self.left.size * self.right.size)
    }

    pub fn size(self) -> usize {
        self.left.size * self.right.size
    }

    pub fn encode(self, a: usize, b: usize) -> Result<usize> {
        self.left.check(a)?;
        self.right.check(b)?;
        Ok(self.encode_unchecked(a, b))
    }

    pub fn decode(self, e: usize) -> Result<(usize, usize)> {
        self.carrier().check(e)?;
        Ok(self.decode_unchecked(e))
    }

    #[inline]
    pub fn encode_unchecked(self, a: usize, b: usize) -> usize {
        a * self.right.size + b
    }

    #[inline]
    pub fn decode_unchecked(self, e: usize) -> (usize, usize) {
        (e / self.right.size, e % self.right.size)
    }
}

pub fn product(a: FinSet, b: FinSet) -> ProductSet {
    ProductSet { left: a, right: b }
}

pub fn encode_pair(p: ProductSet, a: usize, b: usize) -> Result<usize> {
    p.encode(a, b)
}

pub fn decode_pair(p: ProductSet, e: usize) -> Result<(usize, usize)> {
    p.decode(e)
}

/// Iterates every function table `dom -> cod` in lexicographic order,
/// first entry most significant. Yields exactly one (empty) table when
/// `dom` is 0 and none when `cod` is 0 and `dom` is not.
pub struct Tables {
    current: Option<Vec<usize>>,
    radix: usize,
}

impl Tables {
    pub fn new(dom: usize, cod: usize) -> Self {
        let current = if dom > 0 && cod == 0 { None } else { Some(vec![0; dom]) };
        Tables { current, radix: cod }
    }
}

impl Iterator for Tables {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        let mut carried = true;
        while i > 0 && carried {
            i -= 1;
            next[i] += 1;
            if next[i] == self.radix {
                next[i] = 0;
            } else {
                carried = false;
            }
        }
        if !carried {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub fn count_tables(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_sizes() {
        assert_eq!(product(FinSet::new(2), FinSet::new(3)).size(), 6);
        assert_eq!(product(FinSet::UNIT, FinSet::new(4)).size(), 4);
        assert_eq!(product(FinSet::new(0), FinSet::new(4)).size(), 0);
    }

    #[test]
    fn encode_decode_examples() {
        let p = product(FinSet::new(2), FinSet::new(3));
        assert_eq!(encode_pair(p, 1, 2), Ok(5));
        assert_eq!(decode_pair(p, 5), Ok((1, 2)));
        let q = product(FinSet::UNIT, FinSet::new(7));
        assert_eq!(encode_pair(q, 0, 4), Ok(4));
        assert!(matches!(encode_pair(p, 2, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(decode_pair(p, 6), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn unit_product_is_iso() {
        let x = FinSet::new(5);
        let p = product(FinSet::UNIT, x);
        for e in x.elements() {
            assert_eq!(p.decode(e).unwrap(), (0, e));
        }
    }

    #[test]
    fn table_enumeration_counts() {
        assert_eq!(Tables::new(2, 3).count(), 9);
        assert_eq!(Tables::new(0, 3).count(), 1);
        assert_eq!(Tables::new(2, 0).count(), 0);
        assert_eq!(Tables::new(0, 0).count(), 1);
        let all: Vec<_> = Tables::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(count_tables(3, 2), 9);
    }
}
