use std::sync::OnceLock;

use nearsemi::center::{self, Method};
use nearsemi::congruence::{self, principal_congruence};
use nearsemi::search::{self, canonical_form, EnumerationTask};
use nearsemi::{cb, format, ideal, mv};
use nearsemi::{check_axioms, corpus, find_isomorphism, product, Class, FiniteAlgebra, Limits};
use proptest::prelude::*;
use proptest::sample::select;

fn models(n: usize, class: Class) -> Vec<FiniteAlgebra> {
    search::enumerate(&EnumerationTask::new(n, class))
        .unwrap()
        .algebras
        .into_iter()
        .map(|(_, a)| a)
        .collect()
}

/// Every luk-nrs model with at most 5 elements.
fn small_luk() -> &'static [FiniteAlgebra] {
    static CELL: OnceLock<Vec<FiniteAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| (1..=5).flat_map(|n| models(n, Class::LukNrs)).collect())
}

fn inrs4() -> &'static [FiniteAlgebra] {
    static CELL: OnceLock<Vec<FiniteAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| models(4, Class::Inrs))
}

fn luk_product() -> impl Strategy<Value = FiniteAlgebra> {
    (select(small_luk().to_vec()), select(small_luk().to_vec()))
        .prop_filter("small enough", |(a, b)| a.size() * b.size() <= 12)
        .prop_map(|(a, b)| product(&a, &b, &Limits::default()).unwrap())
}

fn raw_tables() -> impl Strategy<Value = FiniteAlgebra> {
    (1usize..=5).prop_flat_map(|n| {
        let row = proptest::collection::vec(0..n, n);
        let table = proptest::collection::vec(row, n);
        (
            table.clone(),
            table,
            proptest::collection::vec(0..n, n),
            0..n,
            0..n,
            any::<bool>(),
        )
            .prop_map(move |(plus, times, alpha, zero, one, named)| {
                let alg = FiniteAlgebra::new(plus, times, alpha, zero, one).unwrap();
                if named {
                    let names: Vec<String> = (0..n).map(|i| format!("e\"{i}\\ x")).collect();
                    alg.with_names(names).unwrap()
                } else {
                    alg
                }
            })
    })
}

/// A permutation of `0..n` fixing the two ends.
fn inner_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n - 1).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |mid| {
            let mut p = vec![0];
            p.extend(mid);
            p.push(n - 1);
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(alg in raw_tables(), class in select(Class::ALL.to_vec())) {
        let text = format::serialize_algebra(class, &alg);
        let (c, back) = format::parse_algebra(&text).unwrap();
        prop_assert_eq!(c, class);
        prop_assert_eq!(&back, &alg);
        prop_assert_eq!(format::serialize_algebra(c, &back), text);
    }

    #[test]
    fn enumeration_is_permutation_complete(
        (i, perm) in (0..30usize, inner_permutation(4))
    ) {
        let forms: Vec<_> = inrs4().iter().map(canonical_form).collect();
        let shuffled = inrs4()[i].permuted(&perm);
        prop_assert!(check_axioms(&shuffled, Class::Inrs).admitted());
        prop_assert!(forms.contains(&canonical_form(&shuffled)));
    }

    #[test]
    fn canonical_forms_decide_isomorphism(
        i in 0..30usize,
        j in 0..30usize,
        perm in inner_permutation(4),
    ) {
        let a = inrs4()[i].permuted(&perm);
        let b = &inrs4()[j];
        prop_assert_eq!(
            canonical_form(&a) == canonical_form(b),
            find_isomorphism(&a, b).is_some()
        );
    }

    #[test]
    fn kernels_are_exactly_the_ideals(alg in luk_product()) {
        let lat = ideal::all_ideals(&alg, &Limits::default()).unwrap();
        prop_assert!(lat.mismatch.is_none());
        for c in ideal::lattice_checks(&alg, &lat, 16) {
            prop_assert!(c.is_ok(), "{}", c);
        }
    }

    #[test]
    fn principal_congruences_are_least(alg in luk_product(), a in 0..12usize, b in 0..12usize) {
        let (a, b) = (a % alg.size(), b % alg.size());
        let theta = principal_congruence(&alg, a, b);
        prop_assert!(congruence::is_congruence(&alg, &theta));
        prop_assert!(theta.related(a, b));
        for c in congruence::all_congruences(&alg, &Limits::default()).unwrap() {
            if c.related(a, b) {
                prop_assert!(theta.refines(&c));
            }
        }
    }

    #[test]
    fn malcev_holds_on_products(alg in luk_product()) {
        let r = congruence::malcev_and_regularity_report(&alg, &Limits::default()).unwrap();
        prop_assert!(r.all_passed(), "{:?}", r.checks);
    }

    #[test]
    fn centrality_methods_agree(alg in luk_product()) {
        for e in alg.elements() {
            let c = center::is_central(&alg, e, Method::Both);
            prop_assert!(c.disagreement.is_none(), "{:?}", c.disagreement);
            if c.central {
                let d = center::decompose(&alg, e, &Limits::default()).unwrap();
                prop_assert!(d.iso.is_bijective());
            }
        }
    }

    #[test]
    fn mv_round_trips(chains in proptest::collection::vec(2usize..=4, 1..=2)) {
        let alg = chains.iter().skip(1).fold(corpus::lukasiewicz(chains[0]), |acc, &k| {
            product(&acc, &corpus::lukasiewicz(k), &Limits::default()).unwrap()
        });
        for c in mv::roundtrip_algebra(&alg).unwrap() {
            prop_assert!(c.is_ok(), "{}", c);
        }
        let m = mv::to_mv(&alg).unwrap();
        for c in mv::roundtrip_mv(&m).unwrap() {
            prop_assert!(c.is_ok(), "{}", c);
        }
    }

    #[test]
    fn central_partitions_decompose(alg in luk_product()) {
        let central = center::center(&alg, &Limits::default()).unwrap().central;
        for &e in &central {
            let parts = if e == alg.zero() || e == alg.one() {
                vec![alg.one()]
            } else {
                vec![e, alg.alpha(e)]
            };
            let iso = cb::partition_decomposition(&alg, &parts, &Limits::default()).unwrap();
            prop_assert!(iso.is_bijective());
        }
    }
}
