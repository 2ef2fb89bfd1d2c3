//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write as _;

use crate::algebra::{Element, FiniteAlgebra};
use crate::ideal::IdealLattice;
use crate::partition::Partition;

/// Pairs `(i, j)` with `i` covered by `j`, in lexicographic order.
pub fn covers(len: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |i: usize, j: usize| i != j && leq(i, j);
    let mut out = Vec::new();
    for i in 0..len {
        for j in 0..len {
            if lt(i, j) && !(0..len).any(|k| lt(i, k) && lt(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders nodes `n0, n1, ..` in the given order with their covering edges.
pub fn hasse(name: &str, labels: &[String], leq: impl Fn(usize, usize) -> bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
    }
    for (i, j) in covers(labels.len(), leq) {
        let _ = writeln!(out, "  n{i} -> n{j};");
    }
    out.push_str("}\n");
    out
}

pub fn congruence_dot(alg: &FiniteAlgebra, congruences: &[Partition]) -> String {
    let labels: Vec<String> = congruences.iter().map(|p| p.render(alg)).collect();
    hasse("Con", &labels, |i, j| {
        congruences[i].refines(&congruences[j])
    })
}

pub fn ideal_dot(alg: &FiniteAlgebra, lat: &IdealLattice) -> String {
    let labels: Vec<String> = lat.ideals.iter().map(|s| s.render(alg)).collect();
    hasse("Id", &labels, |i, j| lat.leq[i][j])
}

pub fn center_dot(alg: &FiniteAlgebra, central: &[Element]) -> String {
    let labels: Vec<String> = central.iter().map(|&e| alg.label(e)).collect();
    hasse("Ce", &labels, |i, j| alg.leq(central[i], central[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{center, corpus, ideal, Limits};

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    #[test]
    fn ideal_chain_of_l3() {
        let alg = corpus::l3();
        let lat = ideal::all_ideals(&alg, &Limits::default()).unwrap();
        let dot = ideal_dot(&alg, &lat);
        assert_eq!(
            dot,
            "digraph \"Id\" {\n  rankdir=BT;\n  node [shape=box];\n  n0 [label=\"{0}\"];\n  n1 [label=\"{0, h[1], 1[2]}\"];\n  n0 -> n1;\n}\n"
        );
    }

    #[test]
    fn center_diamond() {
        let alg = corpus::b2xb2();
        let c = center::center(&alg, &Limits::default()).unwrap();
        let dot = center_dot(&alg, &c.central);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(edges(&dot), 4);
        assert!(!dot.contains("n0 -> n3"));
    }

    #[test]
    fn trivial_is_a_point() {
        let alg = corpus::trivial();
        let lat = ideal::all_ideals(&alg, &Limits::default()).unwrap();
        let dot = ideal_dot(&alg, &lat);
        assert_eq!(dot.matches("[label=").count(), 1);
        assert_eq!(edges(&dot), 0);
    }

    #[test]
    fn covers_are_a_transitive_reduction() {
        assert_eq!(covers(4, |i, j| i <= j), vec![(0, 1), (1, 2), (2, 3)]);
    }
}
