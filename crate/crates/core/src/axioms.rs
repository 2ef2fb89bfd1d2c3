//! Exhaustive axiom and identity checking.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Element, FiniteAlgebra};
use crate::error::Error;
use crate::report::Check;
use crate::term::{CompiledTerm, Term};

/// The three classes the workbench admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    /// ι-near semiring: axioms (i)–(vi).
    Inrs,
    /// Łukasiewicz near semiring: adds (vii).
    LukNrs,
    /// Łukasiewicz semiring: adds associativity of `·`.
    LukRs,
}

impl Class {
    pub const ALL: [Class; 3] = [Class::Inrs, Class::LukNrs, Class::LukRs];

    pub fn as_str(self) -> &'static str {
        match self {
            Class::Inrs => "inrs",
            Class::LukNrs => "luk-nrs",
            Class::LukRs => "luk-rs",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inrs" => Ok(Class::Inrs),
            "luk-nrs" => Ok(Class::LukNrs),
            "luk-rs" => Ok(Class::LukRs),
            other => Err(Error::Usage(format!(
                "unknown class `{other}` (expected inrs, luk-nrs or luk-rs)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    PlusIdempotent,
    PlusCommutative,
    PlusAssociative,
    ZeroNeutral,
    OneTop,
    Unit,
    Distributive,
    ZeroAbsorbing,
    Involution,
    Antitone,
    Lukasiewicz,
    TimesAssociative,
    TimesCommutative,
    RightDistributive,
    JoinComplement,
    ProductWithComplement,
    JoinAsTerm,
}

impl Axiom {
    pub fn code(self) -> &'static str {
        use Axiom::*;
        match self {
            PlusIdempotent => "i.idempotent",
            PlusCommutative => "i.commutative",
            PlusAssociative => "i.associative",
            ZeroNeutral => "i.zero",
            OneTop => "i.top",
            Unit => "ii",
            Distributive => "iii",
            ZeroAbsorbing => "iv",
            Involution => "v",
            Antitone => "vi",
            Lukasiewicz => "vii",
            TimesAssociative => "monoid",
            TimesCommutative => "times-commutative",
            RightDistributive => "right-distributive",
            JoinComplement => "viii",
            ProductWithComplement => "prop-a",
            JoinAsTerm => "prop-b",
        }
    }

    /// The identities making up the axiom, as `lhs = rhs` source pairs.
    /// `Antitone` is a quasi-identity and is handled separately.
    fn identities(self) -> &'static [(&'static str, &'static str)] {
        use Axiom::*;
        match self {
            PlusIdempotent => &[("x + x", "x")],
            PlusCommutative => &[("x + y", "y + x")],
            PlusAssociative => &[("(x + y) + z", "x + (y + z)")],
            ZeroNeutral => &[("x + 0", "x")],
            OneTop => &[("x + 1", "1")],
            Unit => &[("x*1", "x"), ("1*x", "x")],
            Distributive => &[("(x + y)*z", "x*z + y*z")],
            ZeroAbsorbing => &[("x*0", "0"), ("0*x", "0")],
            Involution => &[("x''", "x")],
            Antitone => &[],
            Lukasiewicz => &[("(x*y')'*y'", "(y*x')'*x'")],
            TimesAssociative => &[("(x*y)*z", "x*(y*z)")],
            TimesCommutative => &[("x*y", "y*x")],
            RightDistributive => &[("z*(x + y)", "z*x + z*y")],
            JoinComplement => &[("(x + y)' + x'", "x'")],
            ProductWithComplement => &[("x*x'", "0"), ("x'*x", "0")],
            JoinAsTerm => &[("x + y", "((x*y')'*y')'")],
        }
    }

    /// Identities invariant under swapping `x` and `y` only need `x > y`.
    fn symmetric_in_xy(self) -> bool {
        matches!(self, Axiom::Lukasiewicz)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Part of the class definition; decides admission.
    Required,
    /// Claimed to follow from the required axioms; checked independently.
    Derived,
}

/// A variable assignment on which an axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Vec<(String, Element)>,
    pub lhs: Element,
    pub rhs: Element,
}

impl Witness {
    pub fn values(&self) -> Vec<Element> {
        self.assignment.iter().map(|(_, v)| *v).collect()
    }

    pub fn render(&self, alg: &FiniteAlgebra) -> String {
        let vars: Vec<String> = self
            .assignment
            .iter()
            .map(|(k, v)| format!("{k}={}", alg.label(*v)))
            .collect();
        format!(
            "{} (lhs={}, rhs={})",
            vars.join(" "),
            alg.label(self.lhs),
            alg.label(self.rhs)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub role: Role,
    /// `None` when the axiom holds.
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub class: Class,
    pub verdicts: Vec<AxiomVerdict>,
}

impl AxiomReport {
    /// Whether every required axiom of the class holds.
    pub fn admitted(&self) -> bool {
        self.verdicts
            .iter()
            .filter(|v| v.role == Role::Required)
            .all(AxiomVerdict::passed)
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(AxiomVerdict::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomVerdict> {
        self.verdicts.iter().filter(|v| !v.passed())
    }

    pub fn required_failures(&self) -> Vec<Axiom> {
        self.failures()
            .filter(|v| v.role == Role::Required)
            .map(|v| v.axiom)
            .collect()
    }

    pub fn verdict(&self, axiom: Axiom) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn checks(&self, alg: &FiniteAlgebra) -> Vec<Check> {
        self.verdicts
            .iter()
            .map(|v| {
                let prefix = match v.role {
                    Role::Required => "axiom",
                    Role::Derived => "derived",
                };
                Check::from_witness(
                    format!("{prefix}:{}", v.axiom),
                    v.witness.as_ref().map(|w| w.render(alg)),
                )
            })
            .collect()
    }

    /// Turns a failed admission into an error naming the first failed axiom.
    pub fn require(&self, alg: &FiniteAlgebra) -> crate::Result<()> {
        match self
            .verdicts
            .iter()
            .find(|v| v.role == Role::Required && !v.passed())
        {
            None => Ok(()),
            Some(v) => Err(Error::NotAdmitted {
                class: self.class.to_string(),
                reason: format!(
                    "axiom ({}) fails at {}",
                    v.axiom,
                    v.witness.as_ref().unwrap().render(alg)
                ),
            }),
        }
    }
}

fn required_axioms(class: Class) -> Vec<Axiom> {
    use Axiom::*;
    let mut out = vec![
        PlusIdempotent,
        PlusCommutative,
        PlusAssociative,
        ZeroNeutral,
        OneTop,
        Unit,
        Distributive,
        ZeroAbsorbing,
        Involution,
        Antitone,
    ];
    if class >= Class::LukNrs {
        out.push(Lukasiewicz);
    }
    if class >= Class::LukRs {
        out.push(TimesAssociative);
    }
    out
}

fn derived_axioms(class: Class) -> Vec<Axiom> {
    use Axiom::*;
    let mut out = Vec::new();
    if class >= Class::LukRs {
        out.push(TimesCommutative);
        out.push(RightDistributive);
    }
    out.extend([JoinComplement, ProductWithComplement, JoinAsTerm]);
    out
}

/// First assignment (lexicographic, first variable outermost) where `lhs ≠ rhs`.
pub fn identity_witness(
    alg: &FiniteAlgebra,
    lhs: &Term,
    rhs: &Term,
    symmetric_in_xy: bool,
) -> Option<Witness> {
    let mut vars: Vec<String> = lhs.variables().union(&rhs.variables()).cloned().collect();
    vars.sort();
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let l: CompiledTerm = lhs.compile(&names).expect("all variables bound");
    let r: CompiledTerm = rhs.compile(&names).expect("all variables bound");
    let n = alg.size();
    let k = vars.len();
    let mut args = vec![0; k];
    loop {
        let skip = symmetric_in_xy && k >= 2 && args[0] <= args[1];
        if !skip {
            let (a, b) = (l.eval(alg, &args), r.eval(alg, &args));
            if a != b {
                return Some(Witness {
                    assignment: vars.iter().cloned().zip(args.iter().copied()).collect(),
                    lhs: a,
                    rhs: b,
                });
            }
        }
        // odometer, last variable fastest
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            args[i] += 1;
            if args[i] < n {
                break;
            }
            args[i] = 0;
        }
    }
}

fn antitone_witness(alg: &FiniteAlgebra) -> Option<Witness> {
    for x in alg.elements() {
        for y in alg.elements() {
            if alg.leq(x, y) && !alg.leq(alg.alpha(y), alg.alpha(x)) {
                return Some(Witness {
                    assignment: vec![("x".into(), x), ("y".into(), y)],
                    lhs: alg.alpha(y),
                    rhs: alg.alpha(x),
                });
            }
        }
    }
    None
}

pub fn axiom_witness(alg: &FiniteAlgebra, axiom: Axiom) -> Option<Witness> {
    if axiom == Axiom::Antitone {
        return antitone_witness(alg);
    }
    axiom.identities().iter().find_map(|(l, r)| {
        let l = Term::parse(l).expect("built-in identity");
        let r = Term::parse(r).expect("built-in identity");
        identity_witness(alg, &l, &r, axiom.symmetric_in_xy())
    })
}

/// Runs every axiom of `class` plus the derived identities.
///
/// Tables are already structurally valid by construction of
/// [`FiniteAlgebra`], so every check here is semantic.
pub fn check_axioms(alg: &FiniteAlgebra, class: Class) -> AxiomReport {
    let mut verdicts = Vec::new();
    for axiom in required_axioms(class) {
        verdicts.push(AxiomVerdict {
            axiom,
            role: Role::Required,
            witness: axiom_witness(alg, axiom),
        });
    }
    for axiom in derived_axioms(class) {
        verdicts.push(AxiomVerdict {
            axiom,
            role: Role::Derived,
            witness: axiom_witness(alg, axiom),
        });
    }
    AxiomReport { class, verdicts }
}

/// Shorthand for `check_axioms(alg, class).admitted()`.
pub fn admits(alg: &FiniteAlgebra, class: Class) -> bool {
    required_axioms(class)
        .into_iter()
        .all(|a| axiom_witness(alg, a).is_none())
}
