//! Principal congruences, unary-polynomial pair closure and `Con(A)`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::algebra::{Element, FiniteAlgebra};
use crate::axioms::identity_witness;
use crate::config::Limits;
use crate::error::Result;
use crate::partition::{Partition, UnionFind};
use crate::report::Check;
use crate::term::Term;

/// Least congruence containing every pair in `pairs`.
///
/// Union-find fixpoint: each merge of `(c, d)` schedules the merges of
/// `(f(c, x), f(d, x))`, `(f(x, c), f(x, d))` for both binary operations
/// and `(α(c), α(d))`.
pub fn generate_congruence(
    alg: &FiniteAlgebra,
    pairs: impl IntoIterator<Item = (Element, Element)>,
) -> Partition {
    let mut uf = UnionFind::new(alg.size());
    let mut queue: Vec<(Element, Element)> = pairs.into_iter().collect();
    while let Some((c, d)) = queue.pop() {
        if !uf.union(c, d) {
            continue;
        }
        queue.push((alg.alpha(c), alg.alpha(d)));
        for x in alg.elements() {
            queue.push((alg.add(c, x), alg.add(d, x)));
            queue.push((alg.add(x, c), alg.add(x, d)));
            queue.push((alg.mul(c, x), alg.mul(d, x)));
            queue.push((alg.mul(x, c), alg.mul(x, d)));
        }
    }
    Partition::from_union_find(&mut uf)
}

/// θ(a, b).
pub fn principal_congruence(alg: &FiniteAlgebra, a: Element, b: Element) -> Partition {
    generate_congruence(alg, [(a, b)])
}

/// First failure of the substitution property, rendered with element names.
pub fn congruence_violation(alg: &FiniteAlgebra, p: &Partition) -> Option<String> {
    // compatibility on the spanning star of each block implies it everywhere
    for block in p.blocks() {
        let c = block[0];
        for &d in &block[1..] {
            let bad = |what: &str, u: Element, v: Element| {
                (!p.related(u, v)).then(|| {
                    format!(
                        "{} ~ {} but {what}: {} !~ {}",
                        alg.label(c),
                        alg.label(d),
                        alg.label(u),
                        alg.label(v)
                    )
                })
            };
            if let Some(w) = bad("alpha", alg.alpha(c), alg.alpha(d)) {
                return Some(w);
            }
            for x in alg.elements() {
                let found = bad(&format!("_+{}", alg.label(x)), alg.add(c, x), alg.add(d, x))
                    .or_else(|| bad(&format!("{}+_", alg.label(x)), alg.add(x, c), alg.add(x, d)))
                    .or_else(|| bad(&format!("_*{}", alg.label(x)), alg.mul(c, x), alg.mul(d, x)))
                    .or_else(|| bad(&format!("{}*_", alg.label(x)), alg.mul(x, c), alg.mul(x, d)));
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

pub fn is_congruence(alg: &FiniteAlgebra, p: &Partition) -> bool {
    congruence_violation(alg, p).is_none()
}

/// A set of ordered pairs over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    bits: FixedBitSet,
}

impl PairSet {
    pub fn new(n: usize) -> PairSet {
        PairSet {
            n,
            bits: FixedBitSet::with_capacity(n * n),
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: Element, b: Element) -> bool {
        self.bits.contains(a * self.n + b)
    }

    pub fn insert(&mut self, a: Element, b: Element) -> bool {
        !self.bits.put(a * self.n + b)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        let n = self.n;
        self.bits.ones().map(move |i| (i / n, i % n))
    }

    /// Equivalence relation generated by the pairs.
    pub fn equivalence_closure(&self) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for (a, b) in self.iter() {
            uf.union(a, b);
        }
        Partition::from_union_find(&mut uf)
    }

    /// Whether the set, as a relation, is exactly `p`.
    pub fn equals_partition(&self, p: &Partition) -> bool {
        self.first_difference(p).is_none()
    }

    /// A pair in exactly one of the two relations.
    pub fn first_difference(&self, p: &Partition) -> Option<(Element, Element)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .find(|&(a, b)| self.contains(a, b) != p.related(a, b))
    }
}

/// `{(p(a), p(b)) : p ∈ Pol₁(A)}`, computed as the subalgebra of `A²`
/// generated by `(a, b)` and the diagonal.
pub fn polynomial_pairs(alg: &FiniteAlgebra, a: Element, b: Element) -> PairSet {
    let mut set = PairSet::new(alg.size());
    let mut list: Vec<(Element, Element)> = Vec::new();
    for x in alg.elements() {
        if set.insert(x, x) {
            list.push((x, x));
        }
    }
    if set.insert(a, b) {
        list.push((a, b));
    }
    let mut i = 0;
    while i < list.len() {
        let (p1, q1) = list[i];
        let mut fresh = vec![(alg.alpha(p1), alg.alpha(q1))];
        for &(p2, q2) in &list[..=i] {
            fresh.push((alg.add(p1, p2), alg.add(q1, q2)));
            fresh.push((alg.add(p2, p1), alg.add(q2, q1)));
            fresh.push((alg.mul(p1, p2), alg.mul(q1, q2)));
            fresh.push((alg.mul(p2, p1), alg.mul(q2, q1)));
        }
        for (p, q) in fresh {
            if set.insert(p, q) {
                list.push((p, q));
            }
        }
        i += 1;
    }
    set
}

/// Compares θ(a,b) with the raw polynomial pair set.
///
/// The equivalence generated by the pairs always equals θ(a,b); in a
/// congruence-permutable algebra the pair set is already that congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WernerComparison {
    pub congruence: Partition,
    pub pairs: PairSet,
    pub closure_matches: bool,
    /// A pair where the raw pair set differs from θ(a, b).
    pub raw_difference: Option<(Element, Element)>,
}

pub fn werner_comparison(alg: &FiniteAlgebra, a: Element, b: Element) -> WernerComparison {
    let congruence = principal_congruence(alg, a, b);
    let pairs = polynomial_pairs(alg, a, b);
    WernerComparison {
        closure_matches: pairs.equivalence_closure() == congruence,
        raw_difference: pairs.first_difference(&congruence),
        congruence,
        pairs,
    }
}

/// Every congruence of `alg`, in canonical order (Δ first, ∇ last).
pub fn all_congruences(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Partition>> {
    limits.guard(alg.size())?;
    let n = alg.size();
    let pairs: Vec<(Element, Element)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let principals: Vec<Partition> = pairs
        .par_iter()
        .map(|&(a, b)| principal_congruence(alg, a, b))
        .collect();

    let mut seen: HashSet<Partition> = HashSet::new();
    let mut members: Vec<Partition> = Vec::new();
    for p in std::iter::once(Partition::discrete(n)).chain(principals) {
        if seen.insert(p.clone()) {
            members.push(p);
        }
    }
    // close under binary joins
    let mut start = 0;
    while start < members.len() {
        let end = members.len();
        let mut fresh = Vec::new();
        for i in start..end {
            for j in 0..i {
                let joined = members[i].join(&members[j]);
                if !seen.contains(&joined) {
                    seen.insert(joined.clone());
                    fresh.push(joined);
                }
            }
        }
        start = end;
        members.extend(fresh);
    }
    members.sort_by(Partition::canonical_cmp);
    Ok(members)
}

pub fn malcev_term() -> Term {
    Term::parse("((x*y')'*z' + (z*y')'*x')'").expect("valid term")
}

pub fn gumm_ursini_term() -> Term {
    Term::parse("x'*y").expect("valid term")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevReport {
    pub congruences: Vec<Partition>,
    pub checks: Vec<Check>,
}

impl MalcevReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::is_ok)
    }
}

/// Mal'cev identities, pairwise permutability, 0-regularity and the
/// Gumm–Ursini identities. Failures are recorded with witnesses; the input
/// is never rejected.
pub fn malcev_and_regularity_report(alg: &FiniteAlgebra, limits: &Limits) -> Result<MalcevReport> {
    let p = malcev_term();
    let bind = |pairs: &[(&str, &str)]| {
        let map = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Term::var(*v)))
            .collect();
        p.substitute(&map)
    };
    let x = Term::var("x");
    let y = Term::var("y");
    let mut checks = Vec::new();

    let pxyy = bind(&[("x", "x"), ("y", "y"), ("z", "y")]);
    checks.push(Check::from_witness(
        "malcev:p(x,y,y)=x",
        identity_witness(alg, &pxyy, &x, false).map(|w| w.render(alg)),
    ));
    let pxxy = bind(&[("x", "x"), ("y", "x"), ("z", "y")]);
    checks.push(Check::from_witness(
        "malcev:p(x,x,y)=y",
        identity_witness(alg, &pxxy, &y, false).map(|w| w.render(alg)),
    ));

    let congruences = all_congruences(alg, limits)?;
    let mut perm = None;
    'outer: for (i, a) in congruences.iter().enumerate() {
        for b in &congruences[i + 1..] {
            if let Some((u, v)) = a.permutation_witness(b) {
                perm = Some(format!(
                    "theta={} phi={} at ({}, {})",
                    a.render(alg),
                    b.render(alg),
                    alg.label(u),
                    alg.label(v)
                ));
                break 'outer;
            }
        }
    }
    checks.push(Check::from_witness("permutability", perm));

    let mut kernels = std::collections::HashMap::new();
    let mut regular = None;
    for c in &congruences {
        if let Some(prev) = kernels.insert(c.coset(alg.zero()), c) {
            regular = Some(format!(
                "{} and {} share the 0-coset {}",
                prev.render(alg),
                c.render(alg),
                c.coset(alg.zero()).render(alg)
            ));
            break;
        }
    }
    checks.push(Check::from_witness("regularity:kernel-injective", regular));

    let s = gumm_ursini_term();
    let sxx = s.substitute(&[("y".to_string(), x.clone())].into_iter().collect());
    let s0x = s.substitute(
        &[("x".to_string(), Term::Zero), ("y".to_string(), x.clone())]
            .into_iter()
            .collect(),
    );
    checks.push(Check::from_witness(
        "gumm-ursini:s(x,x)=0",
        identity_witness(alg, &sxx, &Term::Zero, false).map(|w| w.render(alg)),
    ));
    checks.push(Check::from_witness(
        "gumm-ursini:s(0,x)=x",
        identity_witness(alg, &s0x, &x, false).map(|w| w.render(alg)),
    ));
    Ok(MalcevReport {
        congruences,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn l3_principal_congruence_is_full() {
        let l3 = corpus::l3();
        assert!(principal_congruence(&l3, 1, 0).is_full());
        assert!(principal_congruence(&l3, 1, 1).is_discrete());
    }

    #[test]
    fn b2xb2_principal_congruence() {
        let alg = corpus::b2xb2();
        // (1,0) = 2, (0,0) = 0, (0,1) = 1, (1,1) = 3
        let p = principal_congruence(&alg, 2, 0);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(is_congruence(&alg, &p));
    }

    #[test]
    fn polynomial_pairs_examples() {
        let l3 = corpus::l3();
        let pairs = polynomial_pairs(&l3, 1, 0);
        assert!(pairs.contains(2, 0));
        // explicit witness p(x) = (x'*x')'
        let p = Term::parse("(x'*x')'").unwrap();
        let env = |v| [("x".to_string(), v)].into_iter().collect();
        assert_eq!(crate::term::eval_term(&l3, &p, &env(1)).unwrap(), 2);
        assert_eq!(crate::term::eval_term(&l3, &p, &env(0)).unwrap(), 0);

        let diag = polynomial_pairs(&l3, 2, 2);
        assert_eq!(diag.len(), 3);
        assert!(diag.iter().all(|(a, b)| a == b));

        let b2 = corpus::b2();
        assert_eq!(polynomial_pairs(&b2, 1, 0).len(), 4);
    }

    #[test]
    fn congruence_lattices() {
        let lim = Limits::default();
        let l3 = all_congruences(&corpus::l3(), &lim).unwrap();
        assert_eq!(l3.len(), 2);
        assert!(l3[0].is_discrete() && l3[1].is_full());
        assert_eq!(all_congruences(&corpus::b2(), &lim).unwrap().len(), 2);
        let b2b2 = all_congruences(&corpus::b2xb2(), &lim).unwrap();
        assert_eq!(b2b2.len(), 4);
        // Boolean: the two atoms are complements
        assert!(b2b2[1].meet(&b2b2[2]).is_discrete());
        assert!(b2b2[1].join(&b2b2[2]).is_full());
    }

    #[test]
    fn malcev_report_on_lukasiewicz_inputs() {
        for alg in [corpus::l3(), corpus::b2(), corpus::b2xl3()] {
            let r = malcev_and_regularity_report(&alg, &Limits::default()).unwrap();
            assert!(r.all_passed(), "{:?}", r.checks);
        }
    }

    #[test]
    fn malcev_report_on_g3_records_failures() {
        let g3 = corpus::g3();
        let r = malcev_and_regularity_report(&g3, &Limits::default()).unwrap();
        assert!(!r.all_passed());
        assert!(r
            .checks
            .iter()
            .filter(|c| !c.is_ok())
            .all(|c| c.witness.is_some()));
        // h*h' = h in G3, so s(x,x)=0 fails at x=h
        let gu = r
            .checks
            .iter()
            .find(|c| c.id == "gumm-ursini:s(x,x)=0")
            .unwrap();
        assert_eq!(gu.witness.as_deref(), Some("x=h[1] (lhs=h[1], rhs=0)"));
    }

    #[test]
    fn werner_on_g3_is_reported_not_assumed() {
        let g3 = corpus::g3();
        for a in g3.elements() {
            for b in g3.elements() {
                let w = werner_comparison(&g3, a, b);
                assert!(w.closure_matches);
            }
        }
    }
}
