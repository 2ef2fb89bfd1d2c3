//! Finite algebras `⟨A, +, ·, α, 0, 1⟩` as dense operation tables.

use std::fmt;

use crate::config::Limits;
use crate::error::{Error, Result};

/// An element of a finite universe, given by its index.
pub type Element = usize;

/// A finite algebra of type (2, 2, 1, 0, 0) on the universe `0..size`.
///
/// Construction only validates the table shapes and ranges. Whether the
/// tables form an ι-near semiring is a separate question answered by
/// [`crate::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    plus: Vec<Element>,
    times: Vec<Element>,
    alpha: Vec<Element>,
    zero: Element,
    one: Element,
    names: Option<Vec<String>>,
}

fn flatten(table: &'static str, rows: Vec<Vec<Element>>, n: usize) -> Result<Vec<Element>> {
    if rows.len() != n {
        return Err(Error::Dimension {
            table,
            row: None,
            expected: n,
            found: rows.len(),
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension {
                table,
                row: Some(i),
                expected: n,
                found: row.len(),
            });
        }
        for (j, v) in row.into_iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange {
                    table,
                    position: format!("[{i}][{j}]"),
                    value: v,
                    size: n,
                });
            }
            flat.push(v);
        }
    }
    Ok(flat)
}

impl FiniteAlgebra {
    pub fn new(
        plus: Vec<Vec<Element>>,
        times: Vec<Vec<Element>>,
        alpha: Vec<Element>,
        zero: Element,
        one: Element,
    ) -> Result<Self> {
        let n = plus.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let plus = flatten("plus", plus, n)?;
        let times = flatten("times", times, n)?;
        if alpha.len() != n {
            return Err(Error::Dimension {
                table: "alpha",
                row: None,
                expected: n,
                found: alpha.len(),
            });
        }
        for (i, &v) in alpha.iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange {
                    table: "alpha",
                    position: format!("[{i}]"),
                    value: v,
                    size: n,
                });
            }
        }
        for (name, v) in [("zero", zero), ("one", one)] {
            if v >= n {
                return Err(Error::OutOfRange {
                    table: name,
                    position: String::new(),
                    value: v,
                    size: n,
                });
            }
        }
        Ok(FiniteAlgebra {
            size: n,
            plus,
            times,
            alpha,
            zero,
            one,
            names: None,
        })
    }

    /// Builds the tables by evaluating the given functions on `0..n`.
    pub fn from_fn(
        n: usize,
        plus: impl Fn(Element, Element) -> Element,
        times: impl Fn(Element, Element) -> Element,
        alpha: impl Fn(Element) -> Element,
        zero: Element,
        one: Element,
    ) -> Result<Self> {
        let table = |f: &dyn Fn(Element, Element) -> Element| {
            (0..n)
                .map(|i| (0..n).map(|j| f(i, j)).collect())
                .collect::<Vec<Vec<_>>>()
        };
        FiniteAlgebra::new(
            table(&plus),
            table(&times),
            (0..n).map(alpha).collect(),
            zero,
            one,
        )
    }

    pub fn with_names<S: Into<String>>(
        mut self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
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

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        self.plus[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.times[a * self.size + b]
    }

    #[inline]
    pub fn alpha(&self, a: Element) -> Element {
        self.alpha[a]
    }

    #[inline]
    pub fn zero(&self) -> Element {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Element {
        self.one
    }

    /// `x ≤ y` in the order induced by `+`.
    #[inline]
    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.add(a, b) == b
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of `a`; the index when no names were declared.
    pub fn name(&self, a: Element) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Name and index together, e.g. `h[1]`. Plain index when unnamed.
    pub fn label(&self, a: Element) -> String {
        match &self.names {
            Some(names) if names[a] != a.to_string() => format!("{}[{a}]", names[a]),
            _ => a.to_string(),
        }
    }

    /// Resolves an element reference given either as a declared name or an index.
    pub fn resolve(&self, reference: &str) -> Result<Element> {
        let reference = reference.trim();
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == reference) {
                return Ok(i);
            }
        }
        match reference.parse::<usize>() {
            Ok(i) if i < self.size => Ok(i),
            Ok(i) => Err(Error::InvalidElement {
                element: i,
                size: self.size,
            }),
            Err(_) => Err(Error::UnknownElement(reference.to_string())),
        }
    }

    pub fn check_element(&self, a: Element) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: a,
                size: self.size,
            })
        }
    }

    pub fn plus_rows(&self) -> Vec<Vec<Element>> {
        self.plus.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn times_rows(&self) -> Vec<Vec<Element>> {
        self.times.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn alpha_table(&self) -> &[Element] {
        &self.alpha
    }

    /// Table equality, ignoring display names.
    pub fn same_tables(&self, other: &FiniteAlgebra) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.plus == other.plus
            && self.times == other.times
            && self.alpha == other.alpha
    }

    /// Renames every element through `perm` (old index -> new index).
    pub fn permuted(&self, perm: &[Element]) -> FiniteAlgebra {
        let n = self.size;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut out = FiniteAlgebra::from_fn(
            n,
            |a, b| perm[self.add(inv[a], inv[b])],
            |a, b| perm[self.mul(inv[a], inv[b])],
            |a| perm[self.alpha(inv[a])],
            perm[self.zero],
            perm[self.one],
        )
        .expect("permutation of a well-formed algebra is well-formed");
        if let Some(names) = &self.names {
            out.names = Some((0..n).map(|a| names[inv[a]].clone()).collect());
        }
        out
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra of size {} (0={}, 1={})",
            self.size,
            self.label(self.zero),
            self.label(self.one)
        )
    }
}

/// `a ≤ b` iff `a + b = b`.
pub fn leq(alg: &FiniteAlgebra, a: Element, b: Element) -> bool {
    alg.leq(a, b)
}

/// Direct product with row-major indexing: `(i, j) ↦ i * |b| + j`.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra, limits: &Limits) -> Result<FiniteAlgebra> {
    let m = b.size();
    let n = a.size().checked_mul(m).ok_or(Error::TooLarge {
        size: usize::MAX,
        max: limits.max_size,
    })?;
    limits.guard(n)?;
    let split = |x: Element| (x / m, x % m);
    let join = |(i, j): (Element, Element)| i * m + j;
    let alg = FiniteAlgebra::from_fn(
        n,
        |x, y| {
            let ((x1, x2), (y1, y2)) = (split(x), split(y));
            join((a.add(x1, y1), b.add(x2, y2)))
        },
        |x, y| {
            let ((x1, x2), (y1, y2)) = (split(x), split(y));
            join((a.mul(x1, y1), b.mul(x2, y2)))
        },
        |x| {
            let (x1, x2) = split(x);
            join((a.alpha(x1), b.alpha(x2)))
        },
        join((a.zero(), b.zero())),
        join((a.one(), b.one())),
    )?;
    let names = (0..n).map(|x| {
        let (i, j) = split(x);
        format!("({},{})", a.name(i), b.name(j))
    });
    alg.with_names(names.collect::<Vec<_>>())
}

/// Projections of a row-major product back onto its factors.
pub fn projections(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    prod: &FiniteAlgebra,
) -> Result<(Homomorphism, Homomorphism)> {
    let m = b.size();
    let first = Homomorphism::new(
        prod.clone(),
        a.clone(),
        prod.elements().map(|x| x / m).collect(),
    )?;
    let second = Homomorphism::new(
        prod.clone(),
        b.clone(),
        prod.elements().map(|x| x % m).collect(),
    )?;
    Ok((first, second))
}

/// A verified structure-preserving map between two finite algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    map: Vec<Element>,
    bijective: bool,
}

impl Homomorphism {
    /// Checks `map` against every operation and wraps it on success.
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, map: Vec<Element>) -> Result<Self> {
        if let Some(reason) = homomorphism_violation(&source, &target, &map) {
            return Err(Error::NotHomomorphism(reason));
        }
        let mut seen = vec![false; target.size()];
        let mut injective = true;
        for &y in &map {
            injective &= !std::mem::replace(&mut seen[y], true);
        }
        let bijective = injective && source.size() == target.size();
        Ok(Homomorphism {
            source,
            target,
            map,
            bijective,
        })
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.map[x]
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.bijective {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Homomorphism::new(self.target.clone(), self.source.clone(), inv).ok()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same_tables(&other.source) {
            return Err(Error::NotHomomorphism(
                "composition of maps with mismatched algebras".into(),
            ));
        }
        Homomorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&x| other.map[x]).collect(),
        )
    }
}

/// First operation that `map` fails to preserve, if any.
pub fn homomorphism_violation(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    map: &[Element],
) -> Option<String> {
    if map.len() != source.size() {
        return Some(format!(
            "map has {} entries for a source of size {}",
            map.len(),
            source.size()
        ));
    }
    if let Some((x, &y)) = map.iter().enumerate().find(|(_, &y)| y >= target.size()) {
        return Some(format!("image {y} of {x} is outside the target"));
    }
    if map[source.zero()] != target.zero() {
        return Some("0 is not preserved".into());
    }
    if map[source.one()] != target.one() {
        return Some("1 is not preserved".into());
    }
    for x in source.elements() {
        if map[source.alpha(x)] != target.alpha(map[x]) {
            return Some(format!("alpha is not preserved at {}", source.label(x)));
        }
        for y in source.elements() {
            if map[source.add(x, y)] != target.add(map[x], map[y]) {
                return Some(format!(
                    "+ is not preserved at ({}, {})",
                    source.label(x),
                    source.label(y)
                ));
            }
            if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                return Some(format!(
                    "· is not preserved at ({}, {})",
                    source.label(x),
                    source.label(y)
                ));
            }
        }
    }
    None
}

/// Isomorphism-invariant fingerprint of a single element, used for pruning.
pub(crate) fn element_signature(alg: &FiniteAlgebra) -> Vec<(bool, usize, usize, usize, usize)> {
    let n = alg.size();
    let mut times_in = vec![0; n];
    for x in alg.elements() {
        for y in alg.elements() {
            times_in[alg.mul(x, y)] += 1;
        }
    }
    alg.elements()
        .map(|x| {
            let down = alg.elements().filter(|&y| alg.leq(y, x)).count();
            let up = alg.elements().filter(|&y| alg.leq(x, y)).count();
            let squares = alg.mul(x, x);
            let square_down = alg.elements().filter(|&y| alg.leq(y, squares)).count();
            (alg.alpha(x) == x, times_in[x], down, up, square_down)
        })
        .collect()
}

/// Lexicographically least isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Homomorphism> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let sig_a = element_signature(a);
    let sig_b = element_signature(b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    struct Search<'a> {
        a: &'a FiniteAlgebra,
        b: &'a FiniteAlgebra,
        sig_a: Vec<(bool, usize, usize, usize, usize)>,
        sig_b: Vec<(bool, usize, usize, usize, usize)>,
        map: Vec<Option<Element>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn consistent(&self, x: Element) -> bool {
            let (a, b) = (self.a, self.b);
            let fx = self.map[x].unwrap();
            if let Some(f) = self.map[a.alpha(x)] {
                if f != b.alpha(fx) {
                    return false;
                }
            }
            for y in a.elements() {
                let Some(fy) = self.map[y] else { continue };
                for (u, v, fu, fv) in [(x, y, fx, fy), (y, x, fy, fx)] {
                    if let Some(f) = self.map[a.add(u, v)] {
                        if f != b.add(fu, fv) {
                            return false;
                        }
                    }
                    if let Some(f) = self.map[a.mul(u, v)] {
                        if f != b.mul(fu, fv) {
                            return false;
                        }
                    }
                }
            }
            true
        }

        fn run(&mut self, x: Element) -> bool {
            if x == self.a.size() {
                return true;
            }
            let candidates: Vec<Element> = if x == self.a.zero() {
                vec![self.b.zero()]
            } else if x == self.a.one() {
                vec![self.b.one()]
            } else {
                self.b.elements().collect()
            };
            for t in candidates {
                if self.used[t] || self.sig_a[x] != self.sig_b[t] {
                    continue;
                }
                // The constants may only be hit by the constants.
                if (t == self.b.zero() && x != self.a.zero())
                    || (t == self.b.one() && x != self.a.one())
                {
                    continue;
                }
                self.map[x] = Some(t);
                self.used[t] = true;
                if self.consistent(x) && self.run(x + 1) {
                    return true;
                }
                self.map[x] = None;
                self.used[t] = false;
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        sig_a,
        sig_b,
        map: vec![None; n],
        used: vec![false; n],
    };
    if !search.run(0) {
        return None;
    }
    let map = search.map.into_iter().map(Option::unwrap).collect();
    Homomorphism::new(a.clone(), b.clone(), map).ok()
}
