//! Ideals of Łukasiewicz near semirings and their correspondence with
//! congruence kernels.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{Element, FiniteAlgebra};
use crate::axioms::{check_axioms, Class};
use crate::config::Limits;
use crate::congruence::{all_congruences, polynomial_pairs, principal_congruence};
use crate::elemset::ElementSet;
use crate::error::Result;
use crate::partition::Partition;
use crate::report::Check;

/// The first condition an alleged ideal violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealViolation {
    MissingZero,
    /// `a·b^α ∈ S` and `b ∈ S` but `a ∉ S`.
    I1 {
        a: Element,
        b: Element,
    },
    /// `a^α·b, b^α·a ∈ S` but `(ac)^α·(bc)` (`right`) or `(ca)^α·(cb)` is not.
    I2 {
        a: Element,
        b: Element,
        c: Element,
        right: bool,
    },
}

impl IdealViolation {
    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        let l = |x: Element| alg.label(x);
        match *self {
            IdealViolation::MissingZero => "0 not in S".to_string(),
            IdealViolation::I1 { a, b } => format!(
                "(I1) a={} b={} (a*b'={} in S, b in S, a not in S)",
                l(a),
                l(b),
                l(alg.mul(a, alg.alpha(b)))
            ),
            IdealViolation::I2 { a, b, c, right } => {
                let value = if right {
                    alg.mul(alg.alpha(alg.mul(a, c)), alg.mul(b, c))
                } else {
                    alg.mul(alg.alpha(alg.mul(c, a)), alg.mul(c, b))
                };
                let shape = if right {
                    "(a*c)'*(b*c)"
                } else {
                    "(c*a)'*(c*b)"
                };
                format!(
                    "(I2) a={} b={} c={} ({shape}={} not in S)",
                    l(a),
                    l(b),
                    l(c),
                    l(value)
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealCheck {
    pub violation: Option<IdealViolation>,
    /// Failure of the derived rule: `a^α·b, b^α·a ∈ S` but `a·b^α ∉ S`.
    pub i3_witness: Option<(Element, Element)>,
}

impl IdealCheck {
    pub fn is_ideal(&self) -> bool {
        self.violation.is_none()
    }
}

fn i1_violation(alg: &FiniteAlgebra, s: &ElementSet) -> Option<(Element, Element)> {
    alg.elements().filter(|&a| !s.contains(a)).find_map(|a| {
        s.iter()
            .find(|&b| s.contains(alg.mul(a, alg.alpha(b))))
            .map(|b| (a, b))
    })
}

fn related(alg: &FiniteAlgebra, s: &ElementSet, a: Element, b: Element) -> bool {
    s.contains(alg.mul(alg.alpha(a), b)) && s.contains(alg.mul(alg.alpha(b), a))
}

fn i2_violation(alg: &FiniteAlgebra, s: &ElementSet) -> Option<IdealViolation> {
    for a in alg.elements() {
        for b in alg.elements() {
            if !related(alg, s, a, b) {
                continue;
            }
            for c in alg.elements() {
                let right = alg.mul(alg.alpha(alg.mul(a, c)), alg.mul(b, c));
                if !s.contains(right) {
                    return Some(IdealViolation::I2 {
                        a,
                        b,
                        c,
                        right: true,
                    });
                }
                let left = alg.mul(alg.alpha(alg.mul(c, a)), alg.mul(c, b));
                if !s.contains(left) {
                    return Some(IdealViolation::I2 {
                        a,
                        b,
                        c,
                        right: false,
                    });
                }
            }
        }
    }
    None
}

/// Decides (I1) and (I2) exhaustively and reports (I3) alongside.
///
/// Witness order is lexicographic with `a` outermost.
pub fn is_ideal(alg: &FiniteAlgebra, s: &ElementSet) -> IdealCheck {
    let violation = if !s.contains(alg.zero()) {
        Some(IdealViolation::MissingZero)
    } else if let Some((a, b)) = i1_violation(alg, s) {
        Some(IdealViolation::I1 { a, b })
    } else {
        i2_violation(alg, s)
    };
    let i3_witness = alg
        .elements()
        .flat_map(|a| alg.elements().map(move |b| (a, b)))
        .find(|&(a, b)| related(alg, s, a, b) && !s.contains(alg.mul(a, alg.alpha(b))));
    IdealCheck {
        violation,
        i3_witness,
    }
}

/// Least ideal containing `seed`.
pub fn generate_ideal(alg: &FiniteAlgebra, seed: &ElementSet) -> ElementSet {
    let mut s = seed.clone();
    s.insert(alg.zero());
    loop {
        let mut changed = false;
        while let Some((a, _)) = i1_violation(alg, &s) {
            s.insert(a);
            changed = true;
        }
        for a in alg.elements() {
            for b in alg.elements() {
                if !related(alg, &s, a, b) {
                    continue;
                }
                for c in alg.elements() {
                    changed |= s.insert(alg.mul(alg.alpha(alg.mul(a, c)), alg.mul(b, c)));
                    changed |= s.insert(alg.mul(alg.alpha(alg.mul(c, a)), alg.mul(c, b)));
                }
            }
        }
        if !changed {
            return s;
        }
    }
}

/// Why the relation `a^α·b, b^α·a ∈ I` is not a congruence with kernel `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaDiagnostic {
    NotReflexive(Element),
    NotTransitive(Element, Element, Element),
    NotCongruence(String),
    WrongKernel(ElementSet),
}

impl ThetaDiagnostic {
    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        match self {
            ThetaDiagnostic::NotReflexive(a) => format!("not reflexive at {}", alg.label(*a)),
            ThetaDiagnostic::NotTransitive(a, b, c) => format!(
                "not transitive: {0} ~ {1} and {1} ~ {2} but not {0} ~ {2}",
                alg.label(*a),
                alg.label(*b),
                alg.label(*c)
            ),
            ThetaDiagnostic::NotCongruence(w) => format!("not a congruence: {w}"),
            ThetaDiagnostic::WrongKernel(k) => format!("0-coset is {}", k.render(alg)),
        }
    }
}

/// θ(I) from `a θ b ⇔ a^α·b, b^α·a ∈ I`, verified to be a congruence whose
/// 0-coset is `I`.
pub fn theta_of_ideal(
    alg: &FiniteAlgebra,
    i: &ElementSet,
) -> std::result::Result<Partition, ThetaDiagnostic> {
    let n = alg.size();
    if let Some(a) = alg.elements().find(|&a| !related(alg, i, a, a)) {
        return Err(ThetaDiagnostic::NotReflexive(a));
    }
    for a in 0..n {
        for b in 0..n {
            if !related(alg, i, a, b) {
                continue;
            }
            for c in 0..n {
                if related(alg, i, b, c) && !related(alg, i, a, c) {
                    return Err(ThetaDiagnostic::NotTransitive(a, b, c));
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| related(alg, i, a, b)).unwrap())
        .collect();
    let p = Partition::from_labels(&labels);
    if let Some(w) = crate::congruence::congruence_violation(alg, &p) {
        return Err(ThetaDiagnostic::NotCongruence(w));
    }
    let kernel = p.coset(alg.zero());
    if &kernel != i {
        return Err(ThetaDiagnostic::WrongKernel(kernel));
    }
    Ok(p)
}

/// `Id(A)` with its order, operations and pseudocomplements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    /// All ideals in canonical order: `{0}` first, `A` last.
    pub ideals: Vec<ElementSet>,
    /// `leq[i][j]` iff ideal `i` is contained in ideal `j`.
    pub leq: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub pseudocomplement: Vec<usize>,
    /// Kernels of congruences, in the order of `all_congruences`.
    pub kernels: Vec<ElementSet>,
    pub congruences: Vec<Partition>,
    /// True when the subset scan was skipped and the ideals are the kernels.
    pub oracle_partial: bool,
    /// A set found by exactly one of the subset scan and the kernel images.
    pub mismatch: Option<ElementSet>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, s: &ElementSet) -> Option<usize> {
        self.ideals.iter().position(|i| i == s)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.ideals.len() - 1
    }
}

/// Every ideal, by subset scan up to the threshold and always also as
/// congruence kernels.
pub fn all_ideals(alg: &FiniteAlgebra, limits: &Limits) -> Result<IdealLattice> {
    check_axioms(alg, Class::LukNrs).require(alg)?;
    let congruences = all_congruences(alg, limits)?;
    let kernels: Vec<ElementSet> = congruences.iter().map(|c| c.coset(alg.zero())).collect();
    let mut from_kernels = kernels.clone();
    from_kernels.sort_by(ElementSet::canonical_cmp);
    from_kernels.dedup();

    let n = alg.size();
    let oracle_partial = n > limits.ideal_threshold;
    let mut mismatch = None;
    let ideals = if oracle_partial {
        from_kernels
    } else {
        let zero = alg.zero();
        let rest: Vec<Element> = alg.elements().filter(|&x| x != zero).collect();
        let mut scanned: Vec<ElementSet> = (0u64..1 << rest.len())
            .into_par_iter()
            .filter_map(|mask| {
                let members = rest
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &x)| x);
                let s = ElementSet::from_elements(n, members.chain([zero]));
                is_ideal(alg, &s).is_ideal().then_some(s)
            })
            .collect();
        scanned.sort_by(ElementSet::canonical_cmp);
        if scanned != from_kernels {
            mismatch = scanned
                .iter()
                .find(|s| !from_kernels.contains(s))
                .or_else(|| from_kernels.iter().find(|s| !scanned.contains(s)))
                .cloned();
        }
        scanned
    };

    let index: HashMap<ElementSet, usize> = ideals
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let m = ideals.len();
    let leq: Vec<Vec<bool>> = ideals
        .iter()
        .map(|a| ideals.iter().map(|b| a.is_subset(b)).collect())
        .collect();
    let lookup = |s: &ElementSet| -> usize {
        // joins and meets of ideals are ideals; fall back to the top on a
        // non-ideal so the lattice checks report the defect
        index.get(s).copied().unwrap_or(m - 1)
    };
    let join: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| lookup(&generate_ideal(alg, &ideals[i].union(&ideals[j]))))
                .collect()
        })
        .collect();
    let meet: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| lookup(&ideals[i].intersection(&ideals[j])))
                .collect()
        })
        .collect();
    let pseudocomplement = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| meet[i][j] == 0)
                .fold(0, |acc, j| join[acc][j])
        })
        .collect();
    Ok(IdealLattice {
        ideals,
        leq,
        join,
        meet,
        pseudocomplement,
        kernels,
        congruences,
        oracle_partial,
        mismatch,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinComparison {
    pub via_coset: ElementSet,
    pub generated: ElementSet,
}

impl JoinComparison {
    pub fn agrees(&self) -> bool {
        self.via_coset == self.generated
    }
}

/// `[I]_{θ(J)}` next to the least ideal containing `I ∪ J`.
pub fn ideal_join_via_coset(
    alg: &FiniteAlgebra,
    i: &ElementSet,
    j: &ElementSet,
) -> std::result::Result<JoinComparison, ThetaDiagnostic> {
    let theta = theta_of_ideal(alg, j)?;
    let via_coset = ElementSet::from_elements(
        alg.size(),
        alg.elements()
            .filter(|&a| i.iter().any(|x| theta.related(a, x))),
    );
    Ok(JoinComparison {
        via_coset,
        generated: generate_ideal(alg, &i.union(j)),
    })
}

/// `I*`: the largest ideal meeting `i` in `{0}`.
pub fn pseudocomplement(alg: &FiniteAlgebra, lattice: &IdealLattice, i: &ElementSet) -> ElementSet {
    let zero = ElementSet::from_elements(alg.size(), [alg.zero()]);
    let seed = lattice
        .ideals
        .iter()
        .filter(|j| j.intersection(i) == zero)
        .fold(zero.clone(), |acc, j| acc.union(j));
    generate_ideal(alg, &seed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalIdeal {
    /// 0-coset of θ(a, 0).
    pub ideal: ElementSet,
    /// `{c : (c, 0) = (p(a), p(0))}` over unary polynomials `p`.
    pub polynomial_images: ElementSet,
}

pub fn principal_ideal(alg: &FiniteAlgebra, a: Element) -> PrincipalIdeal {
    let ideal = principal_congruence(alg, a, alg.zero()).coset(alg.zero());
    let pairs = polynomial_pairs(alg, a, alg.zero());
    let polynomial_images = ElementSet::from_elements(
        alg.size(),
        alg.elements().filter(|&c| pairs.contains(c, alg.zero())),
    );
    PrincipalIdeal {
        ideal,
        polynomial_images,
    }
}

/// Whether `s` satisfies: `0 ∈ s`, closed under `+`, and `a·c = c·a ∈ s`
/// for `a ∈ s`. Returns the first failing condition.
pub fn semiring_conditions(alg: &FiniteAlgebra, s: &ElementSet) -> Option<String> {
    if !s.contains(alg.zero()) {
        return Some("(i) 0 not in S".into());
    }
    for a in s.iter() {
        for b in s.iter() {
            if !s.contains(alg.add(a, b)) {
                return Some(format!(
                    "(ii) {} + {} = {} not in S",
                    alg.label(a),
                    alg.label(b),
                    alg.label(alg.add(a, b))
                ));
            }
        }
    }
    for a in s.iter() {
        for c in alg.elements() {
            let (ac, ca) = (alg.mul(a, c), alg.mul(c, a));
            if ac != ca || !s.contains(ac) {
                return Some(format!(
                    "(iii) a={} c={} (a*c={}, c*a={})",
                    alg.label(a),
                    alg.label(c),
                    alg.label(ac),
                    alg.label(ca)
                ));
            }
        }
    }
    None
}

/// Compares the semiring-style ideal conditions with [`is_ideal`] on `s`.
pub fn subset_claim(alg: &FiniteAlgebra, s: &ElementSet) -> Check {
    let conditions = semiring_conditions(alg, s);
    let ideal = is_ideal(alg, s);
    let id = format!("claim:semiring-ideal {}", s.render(alg));
    let witness = match (conditions, ideal.violation) {
        (None, None) | (Some(_), Some(_)) => None,
        (None, Some(v)) => Some(format!(
            "conditions (i)-(iii) hold, is_ideal false: {}",
            v.render(alg)
        )),
        (Some(c), None) => Some(format!("is_ideal true, condition fails: {c}")),
    };
    Check::comparison(id, witness)
}

/// Compares `{a·c : c ∈ A}` with the principal ideal of `a`.
pub fn element_claim(alg: &FiniteAlgebra, a: Element) -> Check {
    let computed = ElementSet::from_elements(alg.size(), alg.elements().map(|c| alg.mul(a, c)));
    let oracle = principal_ideal(alg, a).ideal;
    let witness = (computed != oracle).then(|| {
        format!(
            "computed {} vs oracle {}",
            computed.render(alg),
            oracle.render(alg)
        )
    });
    Check::comparison(format!("claim:principal-ideal {}", alg.label(a)), witness)
}

/// Both semiring claims over every subset (up to the threshold) and every element.
pub fn semiring_claims_report(alg: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Check>> {
    limits.guard(alg.size())?;
    check_axioms(alg, Class::LukRs).require(alg)?;
    let n = alg.size();
    let mut checks = Vec::new();
    if n <= limits.ideal_threshold {
        let mut subsets: Vec<ElementSet> = (0u64..1 << n)
            .map(|mask| ElementSet::from_mask(n, mask))
            .collect();
        subsets.sort_by(ElementSet::canonical_cmp);
        checks.extend(subsets.iter().map(|s| subset_claim(alg, s)));
    }
    checks.extend(alg.elements().map(|a| element_claim(alg, a)));
    Ok(checks)
}

fn set_of(alg: &FiniteAlgebra, items: &[Element]) -> ElementSet {
    ElementSet::from_elements(alg.size(), items.iter().copied())
}

/// Structural checks on `Id(A)` and its correspondence with `Con(A)`.
///
/// Families for the join-distributive law are exhausted when the lattice
/// has at most `family_cap` ideals.
pub fn lattice_checks(alg: &FiniteAlgebra, lat: &IdealLattice, family_cap: usize) -> Vec<Check> {
    let m = lat.len();
    let name = |i: usize| lat.ideals[i].render(alg);
    let mut checks = Vec::new();

    checks.push(Check::from_witness(
        "ideals:scan-equals-kernels",
        lat.mismatch
            .as_ref()
            .map(|s| format!("{} found by only one method", s.render(alg))),
    ));

    // θ(I) and [0]_θ are mutually inverse
    let mut bij = None;
    for (i, ideal) in lat.ideals.iter().enumerate() {
        match theta_of_ideal(alg, ideal) {
            Err(d) => {
                bij = Some(format!("theta({}) {}", name(i), d.render(alg)));
                break;
            }
            Ok(p) if !lat.congruences.contains(&p) => {
                bij = Some(format!("theta({}) is not in Con(A)", name(i)));
                break;
            }
            Ok(_) => {}
        }
    }
    if bij.is_none() {
        for c in &lat.congruences {
            let k = c.coset(alg.zero());
            if theta_of_ideal(alg, &k).as_ref() != Ok(c) {
                bij = Some(format!("theta([0]) differs from {}", c.render(alg)));
                break;
            }
        }
    }
    if bij.is_none() && lat.congruences.len() != m {
        bij = Some(format!(
            "|Con(A)|={} but |Id(A)|={m}",
            lat.congruences.len()
        ));
    }
    checks.push(Check::from_witness("ideals:kernel-bijection", bij));

    // lattice order
    let mut order = None;
    'ord: for i in 0..m {
        for j in 0..m {
            let (jn, mt) = (lat.join[i][j], lat.meet[i][j]);
            let lub = lat.leq[i][jn]
                && lat.leq[j][jn]
                && (0..m).all(|k| !(lat.leq[i][k] && lat.leq[j][k]) || lat.leq[jn][k]);
            let glb = lat.leq[mt][i]
                && lat.leq[mt][j]
                && (0..m).all(|k| !(lat.leq[k][i] && lat.leq[k][j]) || lat.leq[k][mt]);
            if !lub || !glb {
                order = Some(format!("I={} J={}", name(i), name(j)));
                break 'ord;
            }
        }
    }
    let bounds = lat.ideals.first() == Some(&set_of(alg, &[alg.zero()]))
        && lat.ideals.last() == Some(&ElementSet::full(alg.size()));
    if order.is_none() && !bounds {
        order = Some("bounds are not {0} and A".into());
    }
    checks.push(Check::from_witness("ideals:lattice", order));

    // I ↦ θ(I) preserves meets and joins
    let mut iso = None;
    let thetas: Vec<Option<Partition>> = lat
        .ideals
        .iter()
        .map(|i| theta_of_ideal(alg, i).ok())
        .collect();
    'iso: for i in 0..m {
        for j in 0..m {
            let (Some(a), Some(b)) = (&thetas[i], &thetas[j]) else {
                iso = Some(format!("theta undefined at {}", name(i)));
                break 'iso;
            };
            let ok = thetas[lat.join[i][j]].as_ref() == Some(&a.join(b))
                && thetas[lat.meet[i][j]].as_ref() == Some(&a.meet(b));
            if !ok {
                iso = Some(format!("I={} J={}", name(i), name(j)));
                break 'iso;
            }
        }
    }
    checks.push(Check::from_witness("ideals:iso-con", iso));

    let mut dist = None;
    'dist: for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if lat.meet[i][lat.join[j][k]] != lat.join[lat.meet[i][j]][lat.meet[i][k]] {
                    dist = Some(format!("I={} J={} K={}", name(i), name(j), name(k)));
                    break 'dist;
                }
            }
        }
    }
    checks.push(Check::from_witness("ideals:distributive", dist));

    if m <= family_cap {
        let mut fam = None;
        'fam: for j in 0..m {
            for mask in 0u64..1 << m {
                let members: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
                let big = members.iter().fold(0, |acc, &k| lat.join[acc][k]);
                let lhs = lat.meet[j][big];
                let rhs = members
                    .iter()
                    .fold(0, |acc, &k| lat.join[acc][lat.meet[j][k]]);
                if lhs != rhs {
                    let fam_names: Vec<String> = members.iter().map(|&k| name(k)).collect();
                    fam = Some(format!("J={} family=[{}]", name(j), fam_names.join(" ")));
                    break 'fam;
                }
            }
        }
        checks.push(Check::from_witness("ideals:join-distributive", fam));
    }

    let zero = set_of(alg, &[alg.zero()]);
    let mut pc = None;
    for i in 0..m {
        let star = lat.pseudocomplement[i];
        let largest =
            lat.meet[i][star] == 0 && (0..m).all(|j| lat.meet[i][j] != 0 || lat.leq[j][star]);
        let double = lat.pseudocomplement[star];
        let ok = largest
            && lat.leq[i][double]
            && lat.pseudocomplement[double] == star
            && pseudocomplement(alg, lat, &lat.ideals[i]) == lat.ideals[star]
            && lat.ideals[i].intersection(&lat.ideals[star]) == zero;
        if !ok {
            pc = Some(format!("I={} I*={}", name(i), name(star)));
            break;
        }
        if let Some(j) = (0..m)
            .find(|&j| lat.leq[i][j] && !lat.leq[lat.pseudocomplement[j]][lat.pseudocomplement[i]])
        {
            pc = Some(format!("I={} J={} but J* not in I*", name(i), name(j)));
            break;
        }
    }
    checks.push(Check::from_witness("ideals:pseudocomplement", pc));

    let mut coset_join = None;
    'cj: for i in 0..m {
        for j in 0..m {
            match ideal_join_via_coset(alg, &lat.ideals[i], &lat.ideals[j]) {
                Ok(c) if c.agrees() && c.generated == lat.ideals[lat.join[i][j]] => {}
                Ok(c) => {
                    coset_join = Some(format!(
                        "I={} J={}: coset {} vs generated {}",
                        name(i),
                        name(j),
                        c.via_coset.render(alg),
                        c.generated.render(alg)
                    ));
                    break 'cj;
                }
                Err(d) => {
                    coset_join = Some(format!("J={} {}", name(j), d.render(alg)));
                    break 'cj;
                }
            }
        }
    }
    checks.push(Check::from_witness("ideals:join-via-coset", coset_join));

    let mut convex = None;
    'cv: for ideal in &lat.ideals {
        for c in ideal.iter() {
            if let Some(b) = alg
                .elements()
                .find(|&b| alg.leq(b, c) && !ideal.contains(b))
            {
                convex = Some(format!(
                    "{} contains {} but not {}",
                    ideal.render(alg),
                    alg.label(c),
                    alg.label(b)
                ));
                break 'cv;
            }
        }
    }
    checks.push(Check::from_witness("ideals:convex", convex));
    checks
}

/// `{I* : I ∈ Id(A)}` as lattice indices, sorted and deduplicated.
pub fn skeleton_indices(lat: &IdealLattice) -> Vec<usize> {
    let mut out: Vec<usize> = lat.pseudocomplement.clone();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether the skeleton is a Boolean lattice under `∩` and `(I*∩J*)*`.
pub fn skeleton_boolean_violation(alg: &FiniteAlgebra, lat: &IdealLattice) -> Option<String> {
    let skel = skeleton_indices(lat);
    let star = &lat.pseudocomplement;
    let sjoin = |i: usize, j: usize| star[lat.meet[star[i]][star[j]]];
    let name = |i: usize| lat.ideals[i].render(alg);
    for &i in &skel {
        if star[star[i]] != i {
            return Some(format!("{} is not regular", name(i)));
        }
        if sjoin(i, star[i]) != lat.top() || lat.meet[i][star[i]] != lat.bottom() {
            return Some(format!("{} has no complement", name(i)));
        }
        for &j in &skel {
            if !skel.contains(&lat.meet[i][j]) || !skel.contains(&sjoin(i, j)) {
                return Some(format!("not closed at {} {}", name(i), name(j)));
            }
            for &k in &skel {
                if lat.meet[i][sjoin(j, k)] != sjoin(lat.meet[i][j], lat.meet[i][k]) {
                    return Some(format!(
                        "not distributive at {} {} {}",
                        name(i),
                        name(j),
                        name(k)
                    ));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(alg: &FiniteAlgebra, xs: &[Element]) -> ElementSet {
        set_of(alg, xs)
    }

    #[test]
    fn l3_zero_h_fails_i1() {
        let l3 = corpus::l3();
        let c = is_ideal(&l3, &set(&l3, &[0, 1]));
        assert_eq!(c.violation, Some(IdealViolation::I1 { a: 2, b: 1 }));
        assert!(c
            .violation
            .unwrap()
            .render(&l3)
            .starts_with("(I1) a=1[2] b=h[1]"));
    }

    #[test]
    fn trivial_ideals() {
        for alg in [corpus::l3(), corpus::b2xl3(), corpus::l4()] {
            assert!(is_ideal(&alg, &set(&alg, &[0])).is_ideal());
            assert!(is_ideal(&alg, &ElementSet::full(alg.size())).is_ideal());
        }
    }

    #[test]
    fn generation() {
        let l3 = corpus::l3();
        assert_eq!(generate_ideal(&l3, &set(&l3, &[1])), ElementSet::full(3));
        assert_eq!(generate_ideal(&l3, &ElementSet::empty(3)), set(&l3, &[0]));
        let bl = corpus::b2xl3();
        // (1,0) is index 3
        assert_eq!(generate_ideal(&bl, &set(&bl, &[3])), set(&bl, &[0, 3]));
    }

    #[test]
    fn theta_examples() {
        let alg = corpus::b2xb2();
        assert!(theta_of_ideal(&alg, &set(&alg, &[0]))
            .unwrap()
            .is_discrete());
        assert!(theta_of_ideal(&alg, &ElementSet::full(4))
            .unwrap()
            .is_full());
        let p = theta_of_ideal(&alg, &set(&alg, &[0, 2])).unwrap();
        assert_eq!(p, principal_congruence(&alg, 2, 0));

        let l3 = corpus::l3();
        let d = theta_of_ideal(&l3, &set(&l3, &[0, 1])).unwrap_err();
        assert_eq!(d, ThetaDiagnostic::NotTransitive(0, 1, 2));
    }

    #[test]
    fn lattices_of_small_algebras() {
        let lim = Limits::default();
        let l3 = all_ideals(&corpus::l3(), &lim).unwrap();
        assert_eq!(
            l3.ideals,
            vec![set(&corpus::l3(), &[0]), ElementSet::full(3)]
        );
        let bl = corpus::b2xl3();
        let lat = all_ideals(&bl, &lim).unwrap();
        assert_eq!(
            lat.ideals,
            vec![
                set(&bl, &[0]),
                set(&bl, &[0, 3]),
                set(&bl, &[0, 1, 2]),
                ElementSet::full(6)
            ]
        );
        assert!(lat.mismatch.is_none());
        let a = lat.index_of(&set(&bl, &[0, 3])).unwrap();
        let b = lat.index_of(&set(&bl, &[0, 1, 2])).unwrap();
        assert_eq!(lat.pseudocomplement[a], b);
        assert_eq!(lat.join[a][b], lat.top());
        for c in lattice_checks(&bl, &lat, 16) {
            assert!(c.is_ok(), "{c}");
        }
    }

    #[test]
    fn principal_ideals() {
        let l3 = corpus::l3();
        let p = principal_ideal(&l3, 1);
        assert_eq!(p.ideal, ElementSet::full(3));
        assert_eq!(p.polynomial_images, ElementSet::full(3));
        assert_eq!(principal_ideal(&l3, 0).ideal, set(&l3, &[0]));
    }

    #[test]
    fn l3_claims_disagree_exactly_twice() {
        let l3 = corpus::l3();
        let checks = semiring_claims_report(&l3, &Limits::default()).unwrap();
        let bad: Vec<String> = checks
            .iter()
            .filter(|c| !c.is_ok())
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            bad,
            vec![
                "DISAGREE claim:semiring-ideal {0, h[1]} :: conditions (i)-(iii) hold, is_ideal false: (I1) a=1[2] b=h[1] (a*b'=h[1] in S, b in S, a not in S)",
                "DISAGREE claim:principal-ideal h[1] :: computed {0, h[1]} vs oracle {0, h[1], 1[2]}",
            ]
        );
    }

    #[test]
    fn b2_claims_agree() {
        let checks = semiring_claims_report(&corpus::b2(), &Limits::default()).unwrap();
        assert_eq!(checks.len(), 6);
        assert!(checks.iter().all(Check::is_ok));
    }

    #[test]
    fn claims_reject_non_semiring() {
        assert!(semiring_claims_report(&corpus::g3(), &Limits::default()).is_err());
    }
}
