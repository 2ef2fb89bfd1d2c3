//! MV-algebras and the term translations to and from Łukasiewicz semirings.
//!
//! `M(A)`: `x ⊕ y = ((x^α + y)·y^α)^α`, `¬ = α`.
//! `R(B)`: `x + y = ¬(¬x ⊕ y) ⊕ y`, `x·y = ¬(¬x ⊕ ¬y)`, `α = ¬`, `1 = ¬0`.

use crate::algebra::{Element, FiniteAlgebra};
use crate::axioms::{check_axioms, Class};
use crate::config::Limits;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::ideal::is_ideal;
use crate::report::Check;

/// `⟨A, ⊕, ¬, 0⟩` on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MvAlgebra {
    size: usize,
    oplus: Vec<Element>,
    neg: Vec<Element>,
    zero: Element,
    names: Option<Vec<String>>,
}

impl MvAlgebra {
    pub fn new(oplus: Vec<Vec<Element>>, neg: Vec<Element>, zero: Element) -> Result<MvAlgebra> {
        let n = oplus.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        // reuse the table validation of the semiring constructor
        let shape = FiniteAlgebra::new(oplus.clone(), oplus, neg.clone(), zero, zero)?;
        Ok(MvAlgebra {
            size: n,
            oplus: shape.plus_rows().concat(),
            neg,
            zero,
            names: None,
        })
    }

    pub fn with_names<S: Into<String>>(
        mut self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<MvAlgebra> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.size {
            return Err(Error::Dimension {
                table: "names",
                row: None,
                expected: self.size,
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    #[inline]
    pub fn oplus(&self, a: Element, b: Element) -> Element {
        self.oplus[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.neg[a]
    }

    pub fn zero(&self) -> Element {
        self.zero
    }

    pub fn one(&self) -> Element {
        self.neg[self.zero]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn label(&self, a: Element) -> String {
        match &self.names {
            Some(names) if names[a] != a.to_string() => format!("{}[{a}]", names[a]),
            _ => a.to_string(),
        }
    }

    pub fn oplus_rows(&self) -> Vec<Vec<Element>> {
        self.oplus.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn neg_table(&self) -> &[Element] {
        &self.neg
    }

    /// `x ≤ y` iff `¬x ⊕ y = 1`.
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.oplus(self.neg(x), y) == self.one()
    }
}

/// The standard finite axiom set, one check per law.
pub fn mv_checks(mv: &MvAlgebra) -> Vec<Check> {
    let l = |x: Element| mv.label(x);
    let els = || mv.elements();
    let pairs = || els().flat_map(move |x| els().map(move |y| (x, y)));
    let (o, ng) = (|a, b| mv.oplus(a, b), |a| mv.neg(a));
    let mut checks = vec![Check::from_witness(
        "mv:commutative",
        pairs()
            .find(|&(x, y)| o(x, y) != o(y, x))
            .map(|(x, y)| format!("x={} y={}", l(x), l(y))),
    )];
    let assoc = pairs().find_map(|(x, y)| {
        els()
            .find(|&z| o(o(x, y), z) != o(x, o(y, z)))
            .map(|z| format!("x={} y={} z={}", l(x), l(y), l(z)))
    });
    checks.push(Check::from_witness("mv:associative", assoc));
    checks.push(Check::from_witness(
        "mv:zero",
        els()
            .find(|&x| o(x, mv.zero()) != x)
            .map(|x| format!("x={}", l(x))),
    ));
    checks.push(Check::from_witness(
        "mv:involution",
        els()
            .find(|&x| ng(ng(x)) != x)
            .map(|x| format!("x={}", l(x))),
    ));
    checks.push(Check::from_witness(
        "mv:lukasiewicz",
        pairs()
            .find(|&(x, y)| o(ng(o(ng(x), y)), y) != o(ng(o(ng(y), x)), x))
            .map(|(x, y)| format!("x={} y={}", l(x), l(y))),
    ));
    checks.push(Check::from_witness(
        "mv:absorbing",
        els()
            .find(|&x| o(x, mv.one()) != mv.one())
            .map(|x| format!("x={}", l(x))),
    ));
    checks
}

pub fn is_mv(mv: &MvAlgebra) -> bool {
    mv_checks(mv).iter().all(Check::is_ok)
}

/// `M(A)`; `alg` must be a Łukasiewicz semiring.
pub fn to_mv(alg: &FiniteAlgebra) -> Result<MvAlgebra> {
    check_axioms(alg, Class::LukRs).require(alg)?;
    Ok(to_mv_unchecked(alg))
}

fn to_mv_unchecked(alg: &FiniteAlgebra) -> MvAlgebra {
    let n = alg.size();
    let oplus = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let ya = alg.alpha(y);
                    alg.alpha(alg.mul(alg.add(alg.alpha(x), y), ya))
                })
                .collect()
        })
        .collect();
    let mv = MvAlgebra::new(oplus, alg.alpha_table().to_vec(), alg.zero()).expect("valid tables");
    match alg.names() {
        Some(names) => mv.with_names(names.to_vec()).expect("same size"),
        None => mv,
    }
}

/// `R(B)`; `mv` must satisfy the MV axioms.
pub fn from_mv(mv: &MvAlgebra) -> Result<FiniteAlgebra> {
    if let Some(c) = mv_checks(mv).into_iter().find(|c| !c.is_ok()) {
        return Err(Error::NotAdmitted {
            class: "mv".into(),
            reason: format!("{} fails at {}", c.id, c.witness.unwrap_or_default()),
        });
    }
    Ok(from_mv_unchecked(mv))
}

fn from_mv_unchecked(mv: &MvAlgebra) -> FiniteAlgebra {
    let (o, ng) = (|a, b| mv.oplus(a, b), |a| mv.neg(a));
    let alg = FiniteAlgebra::from_fn(
        mv.size(),
        |x, y| o(ng(o(ng(x), y)), y),
        |x, y| ng(o(ng(x), ng(y))),
        ng,
        mv.zero(),
        mv.one(),
    )
    .expect("valid tables");
    match mv.names() {
        Some(names) => alg.with_names(names.to_vec()).expect("same size"),
        None => alg,
    }
}

fn first_cell_difference(table: &str, a: &[Vec<Element>], b: &[Vec<Element>]) -> Option<String> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some(format!("{table}[{i}][{j}]: {x} vs {y}"));
            }
        }
    }
    None
}

fn algebra_difference(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<String> {
    if a.size() != b.size() {
        return Some(format!("size {} vs {}", a.size(), b.size()));
    }
    first_cell_difference("plus", &a.plus_rows(), &b.plus_rows())
        .or_else(|| first_cell_difference("times", &a.times_rows(), &b.times_rows()))
        .or_else(|| {
            (0..a.size())
                .find(|&i| a.alpha(i) != b.alpha(i))
                .map(|i| format!("alpha[{i}]: {} vs {}", a.alpha(i), b.alpha(i)))
        })
        .or_else(|| (a.zero() != b.zero()).then(|| format!("zero: {} vs {}", a.zero(), b.zero())))
        .or_else(|| (a.one() != b.one()).then(|| format!("one: {} vs {}", a.one(), b.one())))
}

fn mv_difference(a: &MvAlgebra, b: &MvAlgebra) -> Option<String> {
    if a.size() != b.size() {
        return Some(format!("size {} vs {}", a.size(), b.size()));
    }
    first_cell_difference("oplus", &a.oplus_rows(), &b.oplus_rows())
        .or_else(|| {
            (0..a.size())
                .find(|&i| a.neg(i) != b.neg(i))
                .map(|i| format!("neg[{i}]: {} vs {}", a.neg(i), b.neg(i)))
        })
        .or_else(|| (a.zero() != b.zero()).then(|| format!("zero: {} vs {}", a.zero(), b.zero())))
}

/// `R(M(A)) = A` cell for cell, with the class checks of `M(A)` along the way.
pub fn roundtrip_algebra(alg: &FiniteAlgebra) -> Result<Vec<Check>> {
    let mv = to_mv(alg)?;
    let mut checks = mv_checks(&mv);
    let back = from_mv_unchecked(&mv);
    checks.push(Check::from_witness(
        "roundtrip:R(M(A))=A",
        algebra_difference(&back, alg),
    ));
    Ok(checks)
}

/// `M(R(B)) = B` cell for cell, with the class checks of `R(B)` along the way.
pub fn roundtrip_mv(mv: &MvAlgebra) -> Result<Vec<Check>> {
    let alg = from_mv(mv)?;
    let mut checks = check_axioms(&alg, Class::LukRs).checks(&alg);
    let back = to_mv_unchecked(&alg);
    checks.push(Check::from_witness(
        "roundtrip:M(R(B))=B",
        mv_difference(&back, mv),
    ));
    Ok(checks)
}

/// Subsets containing 0, closed under `⊕` and downward closed.
pub fn is_mv_ideal(mv: &MvAlgebra, s: &ElementSet) -> bool {
    s.contains(mv.zero())
        && s.iter()
            .all(|a| s.iter().all(|b| s.contains(mv.oplus(a, b))))
        && s.iter()
            .all(|a| mv.elements().all(|b| !mv.leq(b, a) || s.contains(b)))
}

/// Compares ideals of `alg` with MV-ideals of `M(alg)` over every subset.
pub fn ideal_correspondence(alg: &FiniteAlgebra, limits: &Limits) -> Result<Check> {
    let mv = to_mv(alg)?;
    let n = alg.size();
    if n > limits.ideal_threshold {
        return Err(Error::TooLarge {
            size: n,
            max: limits.ideal_threshold,
        });
    }
    let witness = (0u64..1 << n)
        .map(|mask| ElementSet::from_mask(n, mask))
        .find(|s| is_ideal(alg, s).is_ideal() != is_mv_ideal(&mv, s))
        .map(|s| {
            format!(
                "{} ideal={} mv-ideal={}",
                s.render(alg),
                is_ideal(alg, &s).is_ideal(),
                is_mv_ideal(&mv, &s)
            )
        });
    Ok(Check::comparison("mv:ideal-correspondence", witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn l3_translates_to_the_three_chain() {
        let mv = to_mv(&corpus::l3()).unwrap();
        assert_eq!(mv.oplus(1, 1), 2);
        assert_eq!(mv.oplus(0, 1), 1);
        assert!(is_mv(&mv));
        let back = from_mv(&mv).unwrap();
        assert_eq!(back.mul(1, 1), 0);
        assert_eq!(back.mul(1, 2), 1);
        assert_eq!(back.mul(2, 1), 1);
    }

    #[test]
    fn boolean_oplus_is_or() {
        let mv = to_mv(&corpus::b2()).unwrap();
        assert_eq!(mv.oplus_rows(), vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn round_trips_are_table_identical() {
        for alg in [corpus::b2(), corpus::l3(), corpus::l4(), corpus::b2xl3()] {
            for c in roundtrip_algebra(&alg).unwrap() {
                assert!(c.is_ok(), "{c}");
            }
            let mv = to_mv(&alg).unwrap();
            for c in roundtrip_mv(&mv).unwrap() {
                assert!(c.is_ok(), "{c}");
            }
        }
    }

    #[test]
    fn non_semiring_is_rejected() {
        assert!(matches!(
            to_mv(&corpus::g3()),
            Err(Error::NotAdmitted { .. })
        ));
        let broken = MvAlgebra::new(vec![vec![0, 1], vec![0, 1]], vec![1, 0], 0).unwrap();
        assert!(from_mv(&broken).is_err());
    }

    #[test]
    fn ideals_match_mv_ideals_on_small_chains() {
        for alg in [corpus::l3(), corpus::l4(), corpus::b2xl3()] {
            let c = ideal_correspondence(&alg, &Limits::default()).unwrap();
            assert!(c.is_ok(), "{c}");
        }
    }
}
