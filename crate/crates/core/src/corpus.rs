//! Small named algebras used throughout the tests and the CLI examples.

use crate::algebra::{product, FiniteAlgebra};
use crate::config::Limits;

/// The Łukasiewicz chain with `n ≥ 2` elements `0 < 1/(n-1) < … < 1`,
/// `x·y = max(0, x + y - 1)` and `x^α = 1 - x`.
pub fn lukasiewicz(n: usize) -> FiniteAlgebra {
    assert!(n >= 2, "a Łukasiewicz chain needs at least two elements");
    let top = n - 1;
    let names: Vec<String> = (0..n)
        .map(|i| match (i, n) {
            (0, _) => "0".to_string(),
            (i, _) if i == top => "1".to_string(),
            (1, 3) => "h".to_string(),
            (i, _) => format!("{i}/{top}"),
        })
        .collect();
    FiniteAlgebra::from_fn(
        n,
        |a, b| a.max(b),
        |a, b| (a + b).saturating_sub(top),
        |a| top - a,
        0,
        top,
    )
    .and_then(|a| a.with_names(names))
    .expect("chain tables are well-formed")
}

/// The two-element Boolean algebra.
pub fn b2() -> FiniteAlgebra {
    lukasiewicz(2)
}

pub fn l3() -> FiniteAlgebra {
    lukasiewicz(3)
}

pub fn l4() -> FiniteAlgebra {
    lukasiewicz(4)
}

/// The three-element chain with `h·h = h` (Gödel product). An ι-near
/// semiring that fails the Łukasiewicz axiom.
pub fn g3() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(3, |a, b| a.max(b), |a, b| a.min(b), |a| 2 - a, 0, 2)
        .and_then(|a| a.with_names(["0", "h", "1"]))
        .expect("well-formed")
}

/// The one-element algebra.
pub fn trivial() -> FiniteAlgebra {
    FiniteAlgebra::new(vec![vec![0]], vec![vec![0]], vec![0], 0, 0)
        .and_then(|a| a.with_names(["0"]))
        .expect("well-formed")
}

fn prod(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    product(a, b, &Limits::default()).expect("small product")
}

pub fn b2xb2() -> FiniteAlgebra {
    prod(&b2(), &b2())
}

pub fn b2xl3() -> FiniteAlgebra {
    prod(&b2(), &l3())
}

pub fn l3xb2() -> FiniteAlgebra {
    prod(&l3(), &b2())
}

/// Every built-in algebra with its name and declared class.
pub fn builtin() -> Vec<(&'static str, crate::Class, FiniteAlgebra)> {
    use crate::Class::*;
    vec![
        ("trivial", LukRs, trivial()),
        ("b2", LukRs, b2()),
        ("l3", LukRs, l3()),
        ("g3", Inrs, g3()),
        ("l4", LukRs, l4()),
        ("b2xb2", LukRs, b2xb2()),
        ("l5", LukRs, lukasiewicz(5)),
        ("b2xl3", LukRs, b2xl3()),
        ("l3xb2", LukRs, l3xb2()),
    ]
}

pub fn by_name(name: &str) -> Option<FiniteAlgebra> {
    builtin()
        .into_iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, a)| a)
}
