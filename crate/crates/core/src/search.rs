//! Exhaustive enumeration of finite models up to isomorphism.
//!
//! The search fixes `0` and `1` at indices `0` and `n-1`, enumerates the
//! bounded lattices for `+` (one representative per isomorphism class),
//! then every antitone involution, then `·` column by column. A column
//! `x ↦ x·z` is a join-homomorphism sending `0 ↦ 0` and `1 ↦ z`; this is
//! exactly what (ii)–(iv) ask of it. Class-specific identities prune the
//! column search as soon as the columns they read are fixed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::{element_signature, Element, FiniteAlgebra};
use crate::axioms::{check_axioms, Class};
use crate::error::{Error, Result};

/// Largest size the enumerator accepts.
pub const MAX_ENUMERATION_SIZE: usize = 8;

/// Version tag of the enumerator that produced [`FROZEN_COUNTS`].
pub const ORACLE_VERSION: &str = "nearsemi-enumerate/1";

/// Model counts up to isomorphism, computed once by this enumerator and
/// kept as regression values.
pub const FROZEN_COUNTS: &[(usize, Class, usize)] = &[
    (1, Class::Inrs, 1),
    (1, Class::LukNrs, 1),
    (1, Class::LukRs, 1),
    (2, Class::Inrs, 1),
    (2, Class::LukNrs, 1),
    (2, Class::LukRs, 1),
    (3, Class::Inrs, 2),
    (3, Class::LukNrs, 1),
    (3, Class::LukRs, 1),
    (4, Class::Inrs, 30),
    (4, Class::LukNrs, 3),
    (4, Class::LukRs, 2),
    (5, Class::Inrs, 980),
    (5, Class::LukNrs, 4),
    (5, Class::LukRs, 1),
    (6, Class::Inrs, 252_320),
    (6, Class::LukNrs, 11),
    (6, Class::LukRs, 2),
    (7, Class::LukNrs, 15),
    (7, Class::LukRs, 1),
    (8, Class::LukNrs, 53),
    (8, Class::LukRs, 3),
];

/// Jobs processed between cap checks; fixed so resume points do not
/// depend on the thread count.
const BATCH: usize = 16;

/// Lexicographically least encoding of `(plus, times, alpha)` over all
/// relabelings sending `0 ↦ 0` and `1 ↦ n-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub bytes: Vec<u8>,
}

impl CanonicalForm {
    /// First 16 hex digits of the SHA-256 of the encoding.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(&self.bytes);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// All bijections `σ` (old index ↦ new index) that place elements in
/// ascending `keys` order, `zero` first and `one` last.
fn labelings<K: Ord + Clone>(
    n: usize,
    zero: Element,
    one: Element,
    keys: &[K],
) -> Vec<Vec<Element>> {
    let rank = |x: Element| {
        if x == zero {
            0
        } else if x == one {
            2
        } else {
            1
        }
    };
    let mut order: Vec<Element> = (0..n).collect();
    order.sort_by(|&a, &b| (rank(a), &keys[a]).cmp(&(rank(b), &keys[b])));
    let mut classes: Vec<Vec<Element>> = Vec::new();
    for (i, &x) in order.iter().enumerate() {
        let same = i > 0 && {
            let y = order[i - 1];
            rank(x) == rank(y) && keys[x] == keys[y]
        };
        if same {
            classes.last_mut().unwrap().push(x);
        } else {
            classes.push(vec![x]);
        }
    }

    fn permutations(items: &[Element]) -> Vec<Vec<Element>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }

    let mut result = vec![vec![0; n]];
    let mut start = 0;
    for class in &classes {
        let perms = permutations(class);
        let mut next = Vec::with_capacity(result.len() * perms.len());
        for sigma in &result {
            for p in &perms {
                let mut s = sigma.clone();
                for (k, &x) in p.iter().enumerate() {
                    s[x] = start + k;
                }
                next.push(s);
            }
        }
        result = next;
        start += class.len();
    }
    result
}

fn encode(alg: &FiniteAlgebra, sigma: &[Element], inv: &[Element]) -> Vec<u8> {
    let n = alg.size();
    let mut out = Vec::with_capacity(2 * n * n + n);
    for a in 0..n {
        for b in 0..n {
            out.push(sigma[alg.add(inv[a], inv[b])] as u8);
        }
    }
    for a in 0..n {
        for b in 0..n {
            out.push(sigma[alg.mul(inv[a], inv[b])] as u8);
        }
    }
    for a in 0..n {
        out.push(sigma[alg.alpha(inv[a])] as u8);
    }
    out
}

/// Canonical form together with a relabeling attaining it.
pub fn canonical_labeling(alg: &FiniteAlgebra) -> (CanonicalForm, Vec<Element>) {
    let n = alg.size();
    let keys = element_signature(alg);
    let mut best: Option<(Vec<u8>, Vec<Element>)> = None;
    for sigma in labelings(n, alg.zero(), alg.one(), &keys) {
        let mut inv = vec![0; n];
        for (old, &new) in sigma.iter().enumerate() {
            inv[new] = old;
        }
        let bytes = encode(alg, &sigma, &inv);
        if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
            best = Some((bytes, sigma));
        }
    }
    let (bytes, sigma) = best.expect("at least one labeling");
    (CanonicalForm { bytes }, sigma)
}

pub fn canonical_form(alg: &FiniteAlgebra) -> CanonicalForm {
    canonical_labeling(alg).0
}

/// `alg` relabeled into its canonical form (names dropped).
pub fn canonicalize(alg: &FiniteAlgebra) -> (CanonicalForm, FiniteAlgebra) {
    let (form, sigma) = canonical_labeling(alg);
    (form, alg.permuted(&sigma).without_names())
}

/// Where an interrupted enumeration continues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResumeToken {
    pub size: usize,
    pub class: Class,
    pub next_job: usize,
}

impl fmt::Display for ResumeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.size, self.class, self.next_job)
    }
}

impl FromStr for ResumeToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<ResumeToken> {
        let bad = || Error::Usage(format!("malformed resume token `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let [size, class, job] = parts.as_slice() else {
            return Err(bad());
        };
        Ok(ResumeToken {
            size: size.parse().map_err(|_| bad())?,
            class: class.parse()?,
            next_job: job.parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub size: usize,
    pub class: Class,
    /// Stop once more than this many models have been collected.
    pub max_results: Option<usize>,
    pub resume: Option<ResumeToken>,
}

impl EnumerationTask {
    pub fn new(size: usize, class: Class) -> EnumerationTask {
        EnumerationTask {
            size,
            class,
            max_results: None,
            resume: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Canonically labeled models, ordered by canonical form.
    pub algebras: Vec<(CanonicalForm, FiniteAlgebra)>,
    pub jobs_total: usize,
    /// `Some` when the cap stopped the search early.
    pub resume: Option<ResumeToken>,
}

impl Enumeration {
    pub fn is_complete(&self) -> bool {
        self.resume.is_none()
    }
}

/// Order relation of a bounded poset on `0..n` with `0` least, `n-1` greatest.
struct Order {
    n: usize,
    leq: Vec<bool>,
}

impl Order {
    fn le(&self, a: Element, b: Element) -> bool {
        self.leq[a * self.n + b]
    }

    /// Join table, if every pair has a least upper bound.
    fn join_table(&self) -> Option<Vec<Element>> {
        let n = self.n;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let ubs: Vec<Element> =
                    (0..n).filter(|&u| self.le(a, u) && self.le(b, u)).collect();
                let least = *ubs.iter().find(|&&u| ubs.iter().all(|&w| self.le(u, w)))?;
                table[a * n + b] = least;
                table[b * n + a] = least;
            }
        }
        Some(table)
    }
}

/// Every labeled partial order on `m` points, as strict-order matrices.
fn posets(m: usize) -> Vec<Vec<bool>> {
    fn extend(k: usize, m: usize, lt: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if k == m {
            out.push(lt.clone());
            return;
        }
        // choose the elements below k (down-closed) and above k (up-closed)
        for below in 0u32..1 << k {
            for above in 0u32..1 << k {
                if below & above != 0 {
                    continue;
                }
                let inb = |i: usize| below >> i & 1 == 1;
                let ina = |i: usize| above >> i & 1 == 1;
                let ok = (0..k).all(|i| {
                    (0..k).all(|j| {
                        let lij = lt[i * m + j];
                        !(lij && inb(j) && !inb(i))
                            && !(lij && ina(i) && !ina(j))
                            && !(inb(i) && ina(j) && !lij)
                    })
                });
                if !ok {
                    continue;
                }
                for i in 0..k {
                    lt[i * m + k] = inb(i);
                    lt[k * m + i] = ina(i);
                }
                extend(k + 1, m, lt, out);
                for i in 0..k {
                    lt[i * m + k] = false;
                    lt[k * m + i] = false;
                }
            }
        }
    }
    let mut out = Vec::new();
    extend(0, m, &mut vec![false; m * m], &mut out);
    out
}

/// One join table per isomorphism class of bounded lattices on `n ≥ 2` points.
fn lattices(n: usize) -> Vec<Vec<Element>> {
    let m = n - 2;
    let top = n - 1;
    let mut reps: BTreeMap<Vec<u8>, Vec<Element>> = BTreeMap::new();
    for lt in posets(m) {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = a == b
                    || a == 0
                    || b == top
                    || (a > 0 && a < top && b > 0 && b < top && lt[(a - 1) * m + (b - 1)]);
            }
        }
        let order = Order { n, leq };
        let Some(join) = order.join_table() else {
            continue;
        };
        let keys: Vec<(usize, usize)> = (0..n)
            .map(|x| {
                let down = (0..n).filter(|&y| order.le(y, x)).count();
                let up = (0..n).filter(|&y| order.le(x, y)).count();
                (down, up)
            })
            .collect();
        let best = labelings(n, 0, top, &keys)
            .into_iter()
            .map(|sigma| {
                let mut inv = vec![0; n];
                for (old, &new) in sigma.iter().enumerate() {
                    inv[new] = old;
                }
                let relabeled: Vec<Element> = (0..n * n)
                    .map(|i| sigma[join[inv[i / n] * n + inv[i % n]]])
                    .collect();
                relabeled
            })
            .min()
            .unwrap();
        let key: Vec<u8> = best.iter().map(|&x| x as u8).collect();
        reps.entry(key).or_insert(best);
    }
    reps.into_values().collect()
}

/// Antitone involutions of the lattice with join table `join`.
fn involutions(n: usize, join: &[Element]) -> Vec<Vec<Element>> {
    let le = |a: Element, b: Element| join[a * n + b] == b;
    fn go(
        x: usize,
        n: usize,
        alpha: &mut Vec<Option<Element>>,
        le: &dyn Fn(Element, Element) -> bool,
        out: &mut Vec<Vec<Element>>,
    ) {
        if x == n {
            out.push(alpha.iter().map(|a| a.unwrap()).collect());
            return;
        }
        if alpha[x].is_some() {
            go(x + 1, n, alpha, le, out);
            return;
        }
        for y in x..n {
            if alpha[y].is_some() {
                continue;
            }
            alpha[x] = Some(y);
            alpha[y] = Some(x);
            let ok = (0..n).all(|a| {
                (0..n).all(|b| match (alpha[a], alpha[b]) {
                    (Some(fa), Some(fb)) => !le(a, b) || le(fb, fa),
                    _ => true,
                })
            });
            if ok {
                go(x + 1, n, alpha, le, out);
            }
            alpha[x] = None;
            alpha[y] = None;
        }
    }
    let mut alpha = vec![None; n];
    alpha[0] = Some(n - 1);
    alpha[n - 1] = Some(0);
    let mut out = Vec::new();
    go(1, n, &mut alpha, &le, &mut out);
    out
}

/// Join-homomorphisms `f` with `f(0) = 0` and `f(1) = z`.
fn column_candidates(n: usize, join: &[Element], z: Element) -> Vec<Vec<Element>> {
    let top = n - 1;
    let le = |a: Element, b: Element| join[a * n + b] == b;
    let below: Vec<Element> = (0..n).filter(|&v| le(v, z)).collect();
    let mut out = Vec::new();
    let mut f: Vec<Option<Element>> = vec![None; n];
    f[0] = Some(0);
    f[top] = Some(z);
    fn go(
        x: usize,
        n: usize,
        join: &[Element],
        below: &[Element],
        f: &mut Vec<Option<Element>>,
        out: &mut Vec<Vec<Element>>,
    ) {
        let consistent = |f: &[Option<Element>]| {
            (0..n).all(|a| {
                (0..n).all(|b| match (f[a], f[b], f[join[a * n + b]]) {
                    (Some(fa), Some(fb), Some(fj)) => join[fa * n + fb] == fj,
                    _ => true,
                })
            })
        };
        if x == n - 1 {
            if consistent(f) {
                out.push(f.iter().map(|v| v.unwrap()).collect());
            }
            return;
        }
        for &v in below {
            f[x] = Some(v);
            if consistent(f) {
                go(x + 1, n, join, below, f, out);
            }
        }
        f[x] = None;
    }
    if n == 1 {
        return vec![vec![0]];
    }
    go(1, n, join, &below, &mut f, &mut out);
    out
}

struct Job {
    join: Vec<Element>,
    alpha: Vec<Element>,
}

fn jobs(n: usize) -> Vec<Job> {
    if n == 1 {
        return vec![Job {
            join: vec![0],
            alpha: vec![0],
        }];
    }
    let mut out = Vec::new();
    for join in lattices(n) {
        for alpha in involutions(n, &join) {
            out.push(Job {
                join: join.clone(),
                alpha,
            });
        }
    }
    out
}

/// Every `·` table for one `(+, α)` pair that puts the algebra in `class`.
fn run_job(n: usize, class: Class, job: &Job) -> Vec<(CanonicalForm, FiniteAlgebra)> {
    let top = n - 1;
    let candidates: Vec<Vec<Vec<Element>>> = (0..n)
        .map(|z| {
            if z == 0 {
                vec![vec![0; n]]
            } else if z == top {
                vec![(0..n).collect()]
            } else {
                column_candidates(n, &job.join, z)
            }
        })
        .collect();
    let alpha = &job.alpha;
    let mut cols: Vec<Option<&[Element]>> = vec![None; n];
    cols[0] = Some(&candidates[0][0]);
    cols[top] = Some(&candidates[top][0]);
    let mut out = Vec::new();

    fn mul(cols: &[Option<&[Element]>], x: Element, z: Element) -> Option<Element> {
        cols[z].map(|c| c[x])
    }

    fn feasible(n: usize, class: Class, alpha: &[Element], cols: &[Option<&[Element]>]) -> bool {
        if class >= Class::LukNrs {
            for x in 0..n {
                for y in 0..n {
                    let side = |x: Element, y: Element| {
                        let ya = alpha[y];
                        mul(cols, x, ya).and_then(|t| mul(cols, alpha[t], ya))
                    };
                    if let (Some(l), Some(r)) = (side(x, y), side(y, x)) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        if class >= Class::LukRs {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let left = mul(cols, x, y).and_then(|xy| mul(cols, xy, z));
                        let right = mul(cols, y, z).and_then(|yz| mul(cols, x, yz));
                        if let (Some(l), Some(r)) = (left, right) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn go<'a>(
        z: usize,
        n: usize,
        class: Class,
        job: &Job,
        candidates: &'a [Vec<Vec<Element>>],
        cols: &mut Vec<Option<&'a [Element]>>,
        out: &mut Vec<(CanonicalForm, FiniteAlgebra)>,
    ) {
        if z + 1 >= n {
            let alg = FiniteAlgebra::from_fn(
                n,
                |a, b| job.join[a * n + b],
                |a, b| cols[b].unwrap()[a],
                |a| job.alpha[a],
                0,
                n - 1,
            )
            .expect("tables in range");
            out.push(canonicalize(&alg));
            return;
        }
        for cand in &candidates[z] {
            cols[z] = Some(cand);
            if feasible(n, class, &job.alpha, cols) {
                go(z + 1, n, class, job, candidates, cols, out);
            }
        }
        cols[z] = None;
    }

    if !feasible(n, class, alpha, &cols) {
        return out;
    }
    if n == 1 {
        let alg = FiniteAlgebra::new(vec![vec![0]], vec![vec![0]], vec![0], 0, 0).expect("trivial");
        out.push(canonicalize(&alg));
        return out;
    }
    go(1, n, class, job, &candidates, &mut cols, &mut out);
    out
}

/// Enumerates `class` models of size `task.size` up to isomorphism.
pub fn enumerate(task: &EnumerationTask) -> Result<Enumeration> {
    let n = task.size;
    if n == 0 || n > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge {
            size: n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let start = match task.resume {
        Some(t) if t.size != n || t.class != task.class => {
            return Err(Error::Usage(format!(
                "resume token {t} does not match size {n} and class {}",
                task.class
            )))
        }
        Some(t) => t.next_job,
        None => 0,
    };
    let all_jobs = jobs(n);
    let mut found: BTreeMap<CanonicalForm, FiniteAlgebra> = BTreeMap::new();
    let mut next = start.min(all_jobs.len());
    let mut resume = None;
    while next < all_jobs.len() {
        let end = (next + BATCH).min(all_jobs.len());
        let batch: Vec<Vec<(CanonicalForm, FiniteAlgebra)>> = all_jobs[next..end]
            .par_iter()
            .map(|job| run_job(n, task.class, job))
            .collect();
        for models in batch {
            for (form, alg) in models {
                found.entry(form).or_insert(alg);
            }
            next += 1;
            if task.max_results.is_some_and(|cap| found.len() > cap) && next < all_jobs.len() {
                resume = Some(ResumeToken {
                    size: n,
                    class: task.class,
                    next_job: next,
                });
                break;
            }
        }
        if resume.is_some() {
            break;
        }
        debug_assert_eq!(next, end);
    }
    for alg in found.values() {
        check_axioms(alg, task.class).require(alg)?;
    }
    Ok(Enumeration {
        algebras: found.into_iter().collect(),
        jobs_total: all_jobs.len(),
        resume,
    })
}

fn count_cache() -> &'static Mutex<HashMap<(usize, Class), usize>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Class), usize>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of models up to isomorphism; memoized per process.
pub fn count(n: usize, class: Class) -> Result<usize> {
    if let Some(&c) = count_cache().lock().unwrap().get(&(n, class)) {
        return Ok(c);
    }
    let c = enumerate(&EnumerationTask::new(n, class))?.algebras.len();
    count_cache().lock().unwrap().insert((n, class), c);
    Ok(c)
}

pub fn frozen_count(n: usize, class: Class) -> Option<usize> {
    FROZEN_COUNTS
        .iter()
        .find(|(m, c, _)| *m == n && *c == class)
        .map(|&(_, _, k)| k)
}
