//! Brute-force model counts from first principles, compared with the search engine.
//!
//! The oracle shares no code with the enumerator: orders come from raw
//! relation bitmasks, involutions from all permutations, products from every
//! assignment of the free cells, and isomorphism rejection uses
//! `find_isomorphism` instead of canonical forms.

use nearsemi::search::{self, EnumerationTask};
use nearsemi::{find_isomorphism, Class, FiniteAlgebra};

type Order = Vec<Vec<bool>>;
type Table = Vec<Vec<usize>>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Bounded orders on `0..n` (0 least, n-1 greatest) that are join-semilattices,
/// returned as their join tables together with the order.
fn join_semilattices(n: usize) -> Vec<(Order, Table)> {
    let mid: Vec<usize> = (1..n.saturating_sub(1)).collect();
    let free: Vec<(usize, usize)> = mid
        .iter()
        .flat_map(|&a| mid.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << free.len() {
        let mut le = vec![vec![false; n]; n];
        for x in 0..n {
            le[x][x] = true;
            le[0][x] = true;
            le[x][n - 1] = true;
        }
        for (k, &(a, b)) in free.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[a][b] = true;
            }
        }
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(le[a][b] && le[b][a])));
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
        if !antisymmetric || !transitive {
            continue;
        }
        let mut join = vec![vec![0; n]; n];
        let mut ok = true;
        'pairs: for a in 0..n {
            for b in 0..n {
                let ubs: Vec<usize> = (0..n).filter(|&c| le[a][c] && le[b][c]).collect();
                match ubs.iter().find(|&&c| ubs.iter().all(|&d| le[c][d])) {
                    Some(&c) => join[a][b] = c,
                    None => {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
        }
        if ok {
            out.push((le, join));
        }
    }
    out
}

fn admits(n: usize, join: &[Vec<usize>], alpha: &[usize], t: &[Vec<usize>], class: Class) -> bool {
    let all = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let distributive =
        all().all(|(x, y)| (0..n).all(|z| t[join[x][y]][z] == join[t[x][z]][t[y][z]]));
    if !distributive {
        return false;
    }
    if class == Class::Inrs {
        return true;
    }
    let luk = all()
        .all(|(x, y)| t[alpha[t[x][alpha[y]]]][alpha[y]] == t[alpha[t[y][alpha[x]]]][alpha[x]]);
    if !luk {
        return false;
    }
    if class == Class::LukNrs {
        return true;
    }
    all().all(|(x, y)| (0..n).all(|z| t[t[x][y]][z] == t[x][t[y][z]]))
}

fn oracle(n: usize, class: Class) -> Vec<FiniteAlgebra> {
    let mut reps: Vec<FiniteAlgebra> = Vec::new();
    let perms = permutations(n);
    let cells: Vec<(usize, usize)> = (1..n.saturating_sub(1))
        .flat_map(|a| (1..n - 1).map(move |b| (a, b)))
        .collect();
    for (le, join) in join_semilattices(n) {
        let involutions = perms.iter().filter(|p| {
            (0..n).all(|x| p[p[x]] == x)
                && (0..n).all(|x| (0..n).all(|y| !le[x][y] || le[p[y]][p[x]]))
        });
        for alpha in involutions {
            let total = (n as u64).pow(cells.len() as u32);
            for code in 0..total {
                let mut t = vec![vec![0; n]; n];
                for x in 0..n {
                    t[x][n - 1] = x;
                    t[n - 1][x] = x;
                }
                let mut c = code;
                for &(a, b) in &cells {
                    t[a][b] = (c % n as u64) as usize;
                    c /= n as u64;
                }
                if n == 1 {
                    t[0][0] = 0;
                }
                if !admits(n, &join, alpha, &t, class) {
                    continue;
                }
                let alg = FiniteAlgebra::new(join.clone(), t, alpha.clone(), 0, n - 1).unwrap();
                if !reps.iter().any(|r| find_isomorphism(r, &alg).is_some()) {
                    reps.push(alg);
                }
            }
        }
    }
    reps
}

fn compare(n: usize, class: Class) {
    let expected = oracle(n, class);
    let found = search::enumerate(&EnumerationTask::new(n, class)).unwrap();
    assert_eq!(
        found.algebras.len(),
        expected.len(),
        "n={n} class={class}: enumerator vs oracle"
    );
    for alg in &expected {
        let matches = found
            .algebras
            .iter()
            .filter(|(_, b)| find_isomorphism(alg, b).is_some())
            .count();
        assert_eq!(
            matches, 1,
            "n={n} class={class}: oracle model matched {matches} times"
        );
    }
    assert_eq!(search::frozen_count(n, class), Some(expected.len()));
}

#[test]
fn oracle_agrees_up_to_four() {
    for n in 1..=4 {
        for class in Class::ALL {
            compare(n, class);
        }
    }
}

#[test]
fn small_counts_from_the_oracle() {
    assert_eq!(oracle(2, Class::LukNrs).len(), 1);
    assert_eq!(oracle(3, Class::LukNrs).len(), 1);
    assert_eq!(oracle(3, Class::Inrs).len(), 2);
}

/// Unordered factorisations of `n` into factors of at least 2.
fn factorisations(n: usize, min: usize) -> usize {
    if n == 1 {
        return 1;
    }
    (min..=n)
        .filter(|&d| n.is_multiple_of(d))
        .map(|d| factorisations(n / d, d))
        .sum()
}

#[test]
fn commutative_models_are_products_of_chains() {
    for n in 2..=7 {
        assert_eq!(
            search::count(n, Class::LukRs).unwrap(),
            factorisations(n, 2),
            "n={n}"
        );
    }
}
