use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{Element, FiniteAlgebra};

/// A subset of the universe `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(n: usize) -> ElementSet {
        ElementSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> ElementSet {
        let mut s = ElementSet::empty(n);
        s.bits.insert_range(..);
        s
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = Element>) -> ElementSet {
        let mut s = ElementSet::empty(n);
        for e in elements {
            s.insert(e);
        }
        s
    }

    /// Subset whose members are the set bits of `mask` (`n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> ElementSet {
        ElementSet::from_elements(n, (0..n).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, e: Element) -> bool {
        self.bits.contains(e)
    }

    /// Returns whether `e` was newly inserted.
    #[inline]
    pub fn insert(&mut self, e: Element) -> bool {
        !self.bits.put(e)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet { bits }
    }

    /// `{x : x ≤ top}`.
    pub fn down_set(alg: &FiniteAlgebra, top: Element) -> ElementSet {
        ElementSet::from_elements(alg.size(), alg.elements().filter(|&x| alg.leq(x, top)))
    }

    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        let items: Vec<String> = self.iter().map(|e| alg.label(e)).collect();
        format!("{{{}}}", items.join(", "))
    }

    /// Cardinality first, then the sorted member lists.
    pub fn canonical_cmp(&self, other: &ElementSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a = ElementSet::from_elements(5, [0, 2]);
        let b = ElementSet::from_elements(5, [2, 4]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert!(ElementSet::from_elements(5, [2]).is_subset(&a));
        assert_eq!(ElementSet::from_mask(5, 0b10101).to_vec(), vec![0, 2, 4]);
        assert_eq!(ElementSet::full(3).len(), 3);
        assert_eq!(a.to_string(), "{0,2}");
    }
}
