//! Central elements, interval algebras `[0, e]` and direct decompositions.

use rayon::prelude::*;

use crate::algebra::{product, Element, FiniteAlgebra, Homomorphism};
use crate::axioms::{check_axioms, Class};
use crate::config::Limits;
use crate::congruence::{all_congruences, principal_congruence};
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::ideal::{
    generate_ideal, principal_ideal, skeleton_boolean_violation, skeleton_indices, IdealLattice,
};
use crate::partition::Partition;
use crate::report::Check;

/// `q(x, y, z) = x·y + x^α·z`.
pub fn q(alg: &FiniteAlgebra, x: Element, y: Element, z: Element) -> Element {
    alg.add(alg.mul(x, y), alg.mul(alg.alpha(x), z))
}

/// First failure of the equational characterization (a)–(d) of centrality.
pub fn syntactic_centrality(alg: &FiniteAlgebra, e: Element) -> Option<String> {
    let l = |x: Element| alg.label(x);
    let qe = |y, z| q(alg, e, y, z);
    if let Some(a) = alg.elements().find(|&a| qe(a, a) != a) {
        return Some(format!("(a) a={} (q(e,a,a)={})", l(a), l(qe(a, a))));
    }
    for a in alg.elements() {
        for b in alg.elements() {
            for c in alg.elements() {
                let mid = qe(a, c);
                let left = qe(qe(a, b), c);
                let right = qe(a, qe(b, c));
                if left != mid || right != mid {
                    return Some(format!(
                        "(b) a={} b={} c={} ({}, {}, {})",
                        l(a),
                        l(b),
                        l(c),
                        l(left),
                        l(mid),
                        l(right)
                    ));
                }
            }
        }
    }
    for (name, k) in [("0", alg.zero()), ("1", alg.one())] {
        if qe(k, k) != k {
            return Some(format!("(c) f={name}"));
        }
    }
    for a in alg.elements() {
        for b in alg.elements() {
            if qe(alg.alpha(a), alg.alpha(b)) != alg.alpha(qe(a, b)) {
                return Some(format!("(c) f=alpha a={} b={}", l(a), l(b)));
            }
        }
    }
    type Op = fn(&FiniteAlgebra, Element, Element) -> Element;
    let binary: [(&str, Op); 2] = [("+", FiniteAlgebra::add), ("*", FiniteAlgebra::mul)];
    for (name, f) in binary {
        for a1 in alg.elements() {
            for a2 in alg.elements() {
                for b1 in alg.elements() {
                    for b2 in alg.elements() {
                        let lhs = qe(f(alg, a1, a2), f(alg, b1, b2));
                        let rhs = f(alg, qe(a1, b1), qe(a2, b2));
                        if lhs != rhs {
                            return Some(format!(
                                "(c) f={name} a=({}, {}) b=({}, {})",
                                l(a1),
                                l(a2),
                                l(b1),
                                l(b2)
                            ));
                        }
                    }
                }
            }
        }
    }
    if qe(alg.one(), alg.zero()) != e {
        return Some(format!("(d) q(e,1,0)={}", l(qe(alg.one(), alg.zero()))));
    }
    None
}

/// Whether θ(e,0) and θ(e,1) are complementary factor congruences.
pub fn semantic_centrality(alg: &FiniteAlgebra, e: Element) -> Option<String> {
    let t0 = principal_congruence(alg, e, alg.zero());
    let t1 = principal_congruence(alg, e, alg.one());
    factor_pair_violation(alg, &t0, &t1)
}

fn factor_pair_violation(alg: &FiniteAlgebra, a: &Partition, b: &Partition) -> Option<String> {
    let meet = a.meet(b);
    if let Some(block) = meet.blocks().iter().find(|blk| blk.len() > 1) {
        return Some(format!(
            "meet is not trivial: {} ~ {}",
            alg.label(block[0]),
            alg.label(block[1])
        ));
    }
    if let Some((x, y)) = a.permutation_witness(b) {
        return Some(format!(
            "congruences do not permute at ({}, {})",
            alg.label(x),
            alg.label(y)
        ));
    }
    if !a.composes_to_full(b) {
        return Some("join is not the full relation".into());
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Syntactic,
    Semantic,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "syntactic" => Ok(Method::Syntactic),
            "semantic" => Ok(Method::Semantic),
            "both" => Ok(Method::Both),
            other => Err(Error::Usage(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centrality {
    pub central: bool,
    pub witness: Option<String>,
    /// Set when both methods ran and reached different verdicts.
    pub disagreement: Option<String>,
}

pub fn is_central(alg: &FiniteAlgebra, e: Element, method: Method) -> Centrality {
    let syn = || syntactic_centrality(alg, e);
    let sem = || semantic_centrality(alg, e);
    match method {
        Method::Syntactic => {
            let w = syn();
            Centrality {
                central: w.is_none(),
                witness: w,
                disagreement: None,
            }
        }
        Method::Semantic => {
            let w = sem();
            Centrality {
                central: w.is_none(),
                witness: w,
                disagreement: None,
            }
        }
        Method::Both => {
            let (a, b) = (syn(), sem());
            let disagreement = (a.is_none() != b.is_none()).then(|| {
                format!(
                    "syntactic: {}, semantic: {}",
                    a.as_deref().unwrap_or("central"),
                    b.as_deref().unwrap_or("central")
                )
            });
            Centrality {
                central: a.is_none(),
                witness: a.or(b),
                disagreement,
            }
        }
    }
}

/// First Boolean-algebra law failing on `elems` under `·`, `+`, `α`.
pub fn boolean_violation(alg: &FiniteAlgebra, elems: &[Element]) -> Option<String> {
    let l = |x: Element| alg.label(x);
    let inside = |x: Element| elems.contains(&x);
    if !inside(alg.zero()) || !inside(alg.one()) {
        return Some("0 or 1 missing".into());
    }
    for &x in elems {
        if !inside(alg.alpha(x)) {
            return Some(format!("not closed under alpha at {}", l(x)));
        }
        if alg.mul(x, alg.alpha(x)) != alg.zero() || alg.add(x, alg.alpha(x)) != alg.one() {
            return Some(format!("{} has no complement", l(x)));
        }
        for &y in elems {
            let (m, j) = (alg.mul(x, y), alg.add(x, y));
            if !inside(m) || !inside(j) {
                return Some(format!("not closed at ({}, {})", l(x), l(y)));
            }
            if m != alg.mul(y, x) {
                return Some(format!("meet not commutative at ({}, {})", l(x), l(y)));
            }
            if alg.mul(x, j) != x || alg.add(x, m) != x {
                return Some(format!("absorption fails at ({}, {})", l(x), l(y)));
            }
            if (m == x) != alg.leq(x, y) {
                return Some(format!("order mismatch at ({}, {})", l(x), l(y)));
            }
            for &z in elems {
                if alg.mul(alg.mul(x, y), z) != alg.mul(x, alg.mul(y, z)) {
                    return Some(format!(
                        "meet not associative at ({}, {}, {})",
                        l(x),
                        l(y),
                        l(z)
                    ));
                }
                if alg.mul(x, alg.add(y, z)) != alg.add(m, alg.mul(x, z)) {
                    return Some(format!(
                        "not distributive at ({}, {}, {})",
                        l(x),
                        l(y),
                        l(z)
                    ));
                }
            }
        }
    }
    None
}

/// `Ce(A)` with its verification results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub central: Vec<Element>,
    /// Factor congruence pairs `(θ(e,0), θ(e,1))`, aligned with `central`.
    pub factor_pairs: Vec<(Partition, Partition)>,
    pub checks: Vec<Check>,
}

impl CenterReport {
    pub fn contains(&self, e: Element) -> bool {
        self.central.contains(&e)
    }
}

pub fn center(alg: &FiniteAlgebra, limits: &Limits) -> Result<CenterReport> {
    limits.guard(alg.size())?;
    check_axioms(alg, Class::Inrs).require(alg)?;
    let verdicts: Vec<Centrality> = alg
        .elements()
        .into_par_iter()
        .map(|e| is_central(alg, e, Method::Both))
        .collect();
    let central: Vec<Element> = alg.elements().filter(|&e| verdicts[e].central).collect();
    let mut checks = Vec::new();

    let disagreement = verdicts.iter().enumerate().find_map(|(e, v)| {
        v.disagreement
            .as_ref()
            .map(|d| format!("e={} {d}", alg.label(e)))
    });
    checks.push(Check::from_witness("center:methods-agree", disagreement));
    checks.push(Check::from_witness(
        "center:boolean",
        boolean_violation(alg, &central),
    ));

    let factor_pairs: Vec<(Partition, Partition)> = central
        .iter()
        .map(|&e| {
            (
                principal_congruence(alg, e, alg.zero()),
                principal_congruence(alg, e, alg.one()),
            )
        })
        .collect();
    let congruences = all_congruences(alg, limits)?;
    let mut factors: Vec<&Partition> = congruences
        .iter()
        .filter(|a| {
            congruences
                .iter()
                .any(|b| factor_pair_violation(alg, a, b).is_none())
        })
        .collect();
    factors.sort_by(|a, b| a.canonical_cmp(b));
    let mut images: Vec<&Partition> = factor_pairs.iter().map(|(t0, _)| t0).collect();
    images.sort_by(|a, b| a.canonical_cmp(b));
    let injective = images.windows(2).all(|w| w[0] != w[1]);
    let bij = if !injective {
        Some("two central elements share theta(e,0)".into())
    } else if images != factors {
        Some(format!(
            "{} central elements but {} factor congruences",
            images.len(),
            factors.len()
        ))
    } else {
        None
    };
    checks.push(Check::from_witness("center:factor-congruences", bij));
    Ok(CenterReport {
        central,
        factor_pairs,
        checks,
    })
}

/// Arithmetic of central elements, checked for every central `e`.
pub fn central_laws_report(
    alg: &FiniteAlgebra,
    central: &[Element],
    limits: &Limits,
) -> Vec<Check> {
    let l = |x: Element| alg.label(x);
    let mut checks = Vec::new();
    let mut push = |id: &str, w: Option<String>| checks.push(Check::from_witness(id, w));
    let pairs = || {
        central.iter().flat_map(move |&e| {
            alg.elements()
                .flat_map(move |a| alg.elements().map(move |b| (e, a, b)))
        })
    };

    push(
        "central:idempotent",
        central
            .iter()
            .find(|&&e| alg.mul(e, e) != e)
            .map(|&e| format!("e={}", l(e))),
    );
    push(
        "central:commutes",
        pairs()
            .find(|&(e, a, _)| alg.mul(e, a) != alg.mul(a, e))
            .map(|(e, a, _)| format!("e={} a={}", l(e), l(a))),
    );
    push(
        "central:associates",
        pairs()
            .find(|&(e, a, b)| alg.mul(alg.mul(e, a), b) != alg.mul(a, alg.mul(e, b)))
            .map(|(e, a, b)| format!("e={} a={} b={}", l(e), l(a), l(b))),
    );
    push(
        "central:below-absorbs",
        pairs()
            .find(|&(e, a, _)| alg.leq(a, e) && alg.mul(a, e) != a)
            .map(|(e, a, _)| format!("e={} a={}", l(e), l(a))),
    );
    push(
        "central:meet",
        pairs()
            .find(|&(e, b, _)| {
                let m = alg.mul(e, b);
                !(alg.leq(m, e)
                    && alg.leq(m, b)
                    && alg
                        .elements()
                        .all(|c| !(alg.leq(c, e) && alg.leq(c, b)) || alg.leq(c, m)))
            })
            .map(|(e, b, _)| format!("e={} b={}", l(e), l(b))),
    );

    let n = alg.size();
    let dist = if n <= limits.ideal_threshold {
        central.iter().find_map(|&e| {
            (0u64..1 << n).find_map(|mask| {
                let members: Vec<Element> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
                let join = members.iter().fold(alg.zero(), |acc, &x| alg.add(acc, x));
                let lhs = alg.mul(e, join);
                let rhs = members
                    .iter()
                    .fold(alg.zero(), |acc, &x| alg.add(acc, alg.mul(e, x)));
                (lhs != rhs).then(|| {
                    let names: Vec<String> = members.iter().map(|&x| l(x)).collect();
                    format!("e={} family=[{}]", l(e), names.join(" "))
                })
            })
        })
    } else {
        pairs()
            .find(|&(e, a, b)| alg.mul(e, alg.add(a, b)) != alg.add(alg.mul(e, a), alg.mul(e, b)))
            .map(|(e, a, b)| format!("e={} family=[{} {}]", l(e), l(a), l(b)))
    };
    push("central:distributes", dist);
    checks
}

/// `[0, e]` with operations relativized by `e·_`, constants `0` and `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalAlgebra {
    pub e: Element,
    /// Original element ids, ascending; index `i` of `algebra` is `elements[i]`.
    pub elements: Vec<Element>,
    pub algebra: FiniteAlgebra,
}

impl IntervalAlgebra {
    pub fn local(&self, x: Element) -> Option<Element> {
        self.elements.binary_search(&x).ok()
    }
}

fn require_central(alg: &FiniteAlgebra, e: Element) -> Result<()> {
    alg.check_element(e)?;
    match syntactic_centrality(alg, e) {
        None => Ok(()),
        Some(w) => Err(Error::NotCentral {
            element: alg.label(e),
            reason: w,
        }),
    }
}

/// Builds `A_e`; rejects non-central `e`.
pub fn interval_algebra(alg: &FiniteAlgebra, e: Element) -> Result<IntervalAlgebra> {
    require_central(alg, e)?;
    let mut elements: Vec<Element> = alg.elements().map(|b| alg.mul(e, b)).collect();
    elements.sort_unstable();
    elements.dedup();
    let down: Vec<Element> = alg.elements().filter(|&x| alg.leq(x, e)).collect();
    if elements != down {
        return Err(Error::NotCentral {
            element: alg.label(e),
            reason: "e*A differs from [0, e]".into(),
        });
    }
    let idx = |x: Element| elements.binary_search(&x).expect("closed under e*_");
    let m = elements.len();
    let at = |i: usize| elements[i];
    let algebra = FiniteAlgebra::from_fn(
        m,
        |i, j| idx(alg.mul(e, alg.add(at(i), at(j)))),
        |i, j| idx(alg.mul(e, alg.mul(at(i), at(j)))),
        |i| idx(alg.mul(e, alg.alpha(at(i)))),
        idx(alg.zero()),
        idx(e),
    )?
    .with_names(elements.iter().map(|&x| alg.name(x)).collect::<Vec<_>>())?;
    Ok(IntervalAlgebra {
        e,
        elements,
        algebra,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub e: Element,
    pub factor: IntervalAlgebra,
    pub cofactor: IntervalAlgebra,
    pub product: FiniteAlgebra,
    /// `a ↦ (e·a, e^α·a)` as a verified isomorphism onto `product`.
    pub iso: Homomorphism,
}

pub fn decompose(alg: &FiniteAlgebra, e: Element, limits: &Limits) -> Result<Decomposition> {
    let factor = interval_algebra(alg, e)?;
    let cofactor = interval_algebra(alg, alg.alpha(e))?;
    let product = product(&factor.algebra, &cofactor.algebra, limits)?;
    let m = cofactor.algebra.size();
    let map: Vec<Element> = alg
        .elements()
        .map(|a| {
            let x = factor.local(alg.mul(e, a)).expect("in [0, e]");
            let y = cofactor
                .local(alg.mul(alg.alpha(e), a))
                .expect("in [0, e']");
            x * m + y
        })
        .collect();
    let iso = Homomorphism::new(alg.clone(), product.clone(), map)?;
    if !iso.is_bijective() {
        return Err(Error::NotHomomorphism(format!(
            "pair map for {} is not bijective",
            alg.label(e)
        )));
    }
    Ok(Decomposition {
        e,
        factor,
        cofactor,
        product,
        iso,
    })
}

/// `I(e) = [0, e]`, `(I(e), I(e^α))` factor ideals and `I(e^α) = I(e)*`.
pub fn central_ideal_checks(alg: &FiniteAlgebra, lat: &IdealLattice, e: Element) -> Vec<Check> {
    let l = alg.label(e);
    let ie = principal_ideal(alg, e).ideal;
    let iea = principal_ideal(alg, alg.alpha(e)).ideal;
    let down = ElementSet::down_set(alg, e);
    let zero = ElementSet::from_elements(alg.size(), [alg.zero()]);
    let mut checks = vec![Check::from_witness(
        format!("central-ideal:interval {l}"),
        (ie != down).then(|| format!("I(e)={} but [0,e]={}", ie.render(alg), down.render(alg))),
    )];
    let factor = ie.intersection(&iea) == zero
        && generate_ideal(alg, &ie.union(&iea)) == ElementSet::full(alg.size());
    checks.push(Check::from_witness(
        format!("central-ideal:factor-pair {l}"),
        (!factor).then(|| format!("I(e)={} I(e')={}", ie.render(alg), iea.render(alg))),
    ));
    let star = lat
        .index_of(&ie)
        .map(|i| lat.ideals[lat.pseudocomplement[i]].clone());
    checks.push(Check::from_witness(
        format!("central-ideal:pseudocomplement {l}"),
        match star {
            Some(s) if s == iea => None,
            Some(s) => Some(format!(
                "I(e)*={} but I(e')={}",
                s.render(alg),
                iea.render(alg)
            )),
            None => Some(format!("I(e)={} is not in Id(A)", ie.render(alg))),
        },
    ));
    checks
}

/// `Skel(Id(A))` is Boolean and equals `{I(e) : e central}`.
pub fn skeleton_checks(alg: &FiniteAlgebra, lat: &IdealLattice, central: &[Element]) -> Vec<Check> {
    let skel: Vec<ElementSet> = skeleton_indices(lat)
        .into_iter()
        .map(|i| lat.ideals[i].clone())
        .collect();
    let mut from_center: Vec<ElementSet> = central
        .iter()
        .map(|&e| principal_ideal(alg, e).ideal)
        .collect();
    from_center.sort_by(ElementSet::canonical_cmp);
    let mut sorted = skel.clone();
    sorted.sort_by(ElementSet::canonical_cmp);
    let equal = (sorted != from_center).then(|| {
        let a: Vec<String> = sorted.iter().map(|s| s.render(alg)).collect();
        let b: Vec<String> = from_center.iter().map(|s| s.render(alg)).collect();
        format!("skeleton [{}] vs central [{}]", a.join(" "), b.join(" "))
    });
    let interval = skel
        .iter()
        .find(|s| {
            let top = s.iter().fold(alg.zero(), |acc, x| alg.add(acc, x));
            **s != ElementSet::down_set(alg, top)
        })
        .map(|s| format!("{} is not an interval [0,e]", s.render(alg)));
    vec![
        Check::from_witness("skeleton:boolean", skeleton_boolean_violation(alg, lat)),
        Check::from_witness("skeleton:central-ideals", equal),
        Check::from_witness("skeleton:intervals", interval),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_isomorphism;
    use crate::corpus;
    use crate::ideal::all_ideals;

    #[test]
    fn q_is_a_church_term() {
        let alg = corpus::b2xl3();
        for a in alg.elements() {
            for b in alg.elements() {
                assert_eq!(q(&alg, alg.one(), a, b), a);
                assert_eq!(q(&alg, alg.zero(), a, b), b);
            }
        }
        let l3 = corpus::l3();
        assert_eq!(q(&l3, 1, 2, 0), 1);
    }

    #[test]
    fn l3_middle_is_not_central() {
        let l3 = corpus::l3();
        let c = is_central(&l3, 1, Method::Both);
        assert!(!c.central);
        assert!(c.disagreement.is_none());
        assert_eq!(c.witness.as_deref(), Some("(a) a=h[1] (q(e,a,a)=0)"));
        for e in [0, 2] {
            assert!(is_central(&l3, e, Method::Both).central);
        }
    }

    #[test]
    fn centers() {
        let lim = Limits::default();
        assert_eq!(center(&corpus::l3(), &lim).unwrap().central, vec![0, 2]);
        let r = center(&corpus::b2xb2(), &lim).unwrap();
        assert_eq!(r.central, vec![0, 1, 2, 3]);
        assert!(r.checks.iter().all(Check::is_ok));
        let r = center(&corpus::b2xl3(), &lim).unwrap();
        assert_eq!(r.central, vec![0, 2, 3, 5]);
        assert!(r.checks.iter().all(Check::is_ok));
    }

    #[test]
    fn central_laws_on_b2xl3() {
        let alg = corpus::b2xl3();
        // e=(1,0)=3, a=(1,h)=4
        assert_eq!(alg.mul(3, 4), 3);
        assert_eq!(alg.mul(4, 3), 3);
        let checks = central_laws_report(&alg, &[0, 2, 3, 5], &Limits::default());
        assert!(checks.iter().all(Check::is_ok), "{checks:?}");
    }

    #[test]
    fn interval_algebras() {
        let alg = corpus::b2xl3();
        let a = interval_algebra(&alg, 2).unwrap();
        assert_eq!(a.elements, vec![0, 1, 2]);
        assert!(find_isomorphism(&a.algebra, &corpus::l3()).is_some());
        assert!(interval_algebra(&alg, 5).unwrap().algebra.same_tables(&alg));
        assert_eq!(interval_algebra(&alg, 0).unwrap().algebra.size(), 1);
        assert!(matches!(
            interval_algebra(&alg, 1),
            Err(Error::NotCentral { .. })
        ));
    }

    #[test]
    fn decompositions() {
        let lim = Limits::default();
        let alg = corpus::b2xl3();
        let d = decompose(&alg, 3, &lim).unwrap();
        assert_eq!((d.factor.algebra.size(), d.cofactor.algebra.size()), (2, 3));
        assert!(d.iso.is_bijective());
        let back = d.iso.inverse().unwrap();
        assert!(alg.elements().all(|x| back.apply(d.iso.apply(x)) == x));
        let top = decompose(&alg, 5, &lim).unwrap();
        assert_eq!(top.cofactor.algebra.size(), 1);
        let bb = corpus::b2xb2();
        let d = decompose(&bb, 2, &lim).unwrap();
        assert!(find_isomorphism(&d.product, &bb).is_some());
    }

    #[test]
    fn central_ideals_and_skeleton() {
        let lim = Limits::default();
        for alg in [corpus::l3(), corpus::b2xl3(), corpus::b2xb2(), corpus::l4()] {
            let lat = all_ideals(&alg, &lim).unwrap();
            let c = center(&alg, &lim).unwrap();
            for &e in &c.central {
                for chk in central_ideal_checks(&alg, &lat, e) {
                    assert!(chk.is_ok(), "{chk}");
                }
            }
            for chk in skeleton_checks(&alg, &lat, &c.central) {
                assert!(chk.is_ok(), "{chk}");
            }
        }
        let bb = corpus::b2xb2();
        let lat = all_ideals(&bb, &lim).unwrap();
        assert_eq!(skeleton_indices(&lat).len(), 4);
    }
}
