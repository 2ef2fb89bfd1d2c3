//! Equivalence relations on a finite universe.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Element, FiniteAlgebra};
use crate::elemset::ElementSet;

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
}

/// An equivalence relation in canonical form: blocks sorted by least
/// element, elements sorted within blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    class: Vec<usize>,
    blocks: Vec<Vec<Element>>,
}

impl Partition {
    /// Builds the canonical form from any block labelling.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut relabel = std::collections::HashMap::new();
        let mut class = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<Element>> = Vec::new();
        for (x, l) in labels.iter().enumerate() {
            let next = relabel.len();
            let c = *relabel.entry(l).or_insert(next);
            if c == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[c].push(x);
            class.push(c);
        }
        Partition { class, blocks }
    }

    pub fn from_union_find(uf: &mut UnionFind) -> Partition {
        let labels: Vec<usize> = (0..uf.len()).map(|x| uf.find(x)).collect();
        Partition::from_labels(&labels)
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Element>]) -> Partition {
        let mut uf = UnionFind::new(n);
        for b in blocks {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        Partition::from_union_find(&mut uf)
    }

    /// Δ, the identity relation.
    pub fn discrete(n: usize) -> Partition {
        Partition::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// ∇, the full relation.
    pub fn full(n: usize) -> Partition {
        Partition::from_labels(&vec![0; n])
    }

    pub fn universe(&self) -> usize {
        self.class.len()
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn class_of(&self, x: Element) -> usize {
        self.class[x]
    }

    #[inline]
    pub fn related(&self, a: Element, b: Element) -> bool {
        self.class[a] == self.class[b]
    }

    pub fn block_of(&self, x: Element) -> &[Element] {
        &self.blocks[self.class[x]]
    }

    /// The coset `[x]`.
    pub fn coset(&self, x: Element) -> ElementSet {
        ElementSet::from_elements(self.universe(), self.block_of(x).iter().copied())
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.universe()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Refinement order: `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| other.related(b[0], x)))
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let labels: Vec<usize> = (0..self.universe())
            .map(|x| self.class[x] * other.num_blocks() + other.class[x])
            .collect();
        Partition::from_labels(&labels)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.universe());
        for p in [self, other] {
            for b in &p.blocks {
                for &x in &b[1..] {
                    uf.union(b[0], x);
                }
            }
        }
        Partition::from_union_find(&mut uf)
    }

    /// Whether `self ∘ other = other ∘ self` as relations.
    pub fn permutes_with(&self, other: &Partition) -> bool {
        self.permutation_witness(other).is_none()
    }

    /// A pair in exactly one of the two relational products, if any.
    pub fn permutation_witness(&self, other: &Partition) -> Option<(Element, Element)> {
        let n = self.universe();
        // reach[c][d]: some element lies in self-block c and other-block d
        let mut reach = vec![vec![false; other.num_blocks()]; self.num_blocks()];
        for y in 0..n {
            reach[self.class[y]][other.class[y]] = true;
        }
        for x in 0..n {
            for z in 0..n {
                // x self y other z, and x other y' self z
                let fwd = reach[self.class[x]][other.class[z]];
                let bwd = reach[self.class[z]][other.class[x]];
                if fwd != bwd {
                    return Some((x, z));
                }
            }
        }
        None
    }

    /// Whether `self ∘ other` is the full relation.
    pub fn composes_to_full(&self, other: &Partition) -> bool {
        // every (self-block, other-block) pair must meet
        let mut reach = vec![vec![false; other.num_blocks()]; self.num_blocks()];
        for y in 0..self.universe() {
            reach[self.class[y]][other.class[y]] = true;
        }
        reach.iter().all(|row| row.iter().all(|&b| b))
    }

    /// Orders by number of blocks (descending), then block lists.
    pub fn canonical_cmp(&self, other: &Partition) -> Ordering {
        other
            .num_blocks()
            .cmp(&self.num_blocks())
            .then_with(|| self.blocks.cmp(&other.blocks))
    }

    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|&x| alg.label(x)).collect();
                format!("{{{}}}", items.join(", "))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        f.write_str(&blocks.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_labels() {
        let p = Partition::from_labels(&[7, 3, 7, 3, 9]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3], vec![4]]);
        assert_eq!(p.to_string(), "{0,2}{1,3}{4}");
        assert!(Partition::discrete(5).refines(&p));
        assert!(p.refines(&Partition::full(5)));
    }

    #[test]
    fn permutability_of_product_factor_pair() {
        // the two projection kernels of a 2x2 product
        let a = Partition::from_blocks(4, &[vec![0, 1], vec![2, 3]]);
        let b = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        assert!(a.permutes_with(&b));
        assert!(a.composes_to_full(&b));
        assert!(a.meet(&b).is_discrete());
        assert!(a.join(&b).is_full());
        // two chains that do not permute
        let c = Partition::from_blocks(3, &[vec![0, 1]]);
        let d = Partition::from_blocks(3, &[vec![1, 2]]);
        assert!(!c.permutes_with(&d));
    }

    fn labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0..n, n)
    }

    proptest! {
        #[test]
        fn meet_and_join_are_bounds(a in labels(7), b in labels(7)) {
            let (p, q) = (Partition::from_labels(&a), Partition::from_labels(&b));
            let (m, j) = (p.meet(&q), p.join(&q));
            prop_assert!(m.refines(&p) && m.refines(&q));
            prop_assert!(p.refines(&j) && q.refines(&j));
            prop_assert_eq!(p.meet(&p), p.clone());
            prop_assert_eq!(p.join(&q), q.join(&p));
            let blocks: usize = p.blocks().iter().map(Vec::len).sum();
            prop_assert_eq!(blocks, 7);
        }
    }
}
