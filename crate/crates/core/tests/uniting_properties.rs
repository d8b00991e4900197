use itertools::Itertools;
use permrep::characters::{RepKind, RepresentationSpec};
use permrep::uniting::{
    almost_similar_fix_gap, find_united_pairs, is_almost_similar, united_by_char,
    united_by_induced_type, ScanMode,
};
use permrep::CycleType;

fn spec(kind: RepKind, n: usize) -> RepresentationSpec {
    RepresentationSpec::new(kind, n).unwrap()
}

fn united(kind: RepKind, n: usize) -> Vec<(CycleType, CycleType)> {
    find_united_pairs(&spec(kind, n), ScanMode::Full).unwrap().united_pairs
}

fn involution_pair(n: usize) -> (CycleType, CycleType) {
    let all_twos = CycleType::from_counts([(2, n / 2)]).unwrap();
    let two_fixed = CycleType::from_counts([(1, 2), (2, (n - 2) / 2)]).unwrap();
    (two_fixed, all_twos)
}

/// Only the actions whose kernel is trivial.
fn faithful(s: &RepresentationSpec) -> bool {
    let n = s.degree();
    match s.kind() {
        RepKind::Subsets(k) => k < n,
        RepKind::EvenSubsets => n != 2,
        _ => true,
    }
}

#[test]
fn natural_and_pairs_never_unite() {
    for n in 1..=8 {
        assert!(united(RepKind::Tuples(1), n).is_empty(), "n = {n}");
        assert!(united(RepKind::Natural, n).is_empty(), "n = {n}");
        if n >= 2 {
            assert!(united(RepKind::Tuples(2), n).is_empty(), "n = {n}");
        }
    }
}

#[test]
fn triplets_unite_exactly_for_even_degree() {
    for n in 3..=8 {
        let pairs = united(RepKind::Tuples(3), n);
        assert_eq!(!pairs.is_empty(), n % 2 == 0, "n = {n}");
        if n % 2 == 0 {
            assert!(pairs.contains(&involution_pair(n)));
        }
    }
}

#[test]
fn four_or_more_tuples_always_unite() {
    for n in 4..=8 {
        for k in 4..=n {
            let pairs = united(RepKind::Tuples(k), n);
            assert!(!pairs.is_empty(), "k = {k}, n = {n}");
        }
        if n % 2 == 1 {
            let a = CycleType::from_counts([(1, 1), (2, (n - 1) / 2)]).unwrap();
            let b = CycleType::from_counts([(1, 3), (2, (n - 3) / 2)]).unwrap();
            assert!(united(RepKind::Tuples(4), n).contains(&(a, b)));
        }
    }
}

#[test]
fn subset_families() {
    for n in 1..=8 {
        assert!(united(RepKind::PowerSet, n).is_empty(), "n = {n}");
        assert!(united(RepKind::OddSubsets, n).is_empty(), "n = {n}");
        let even = united(RepKind::EvenSubsets, n);
        if n % 2 == 1 {
            assert!(even.is_empty(), "n = {n}");
        } else if n >= 4 {
            assert!(even.contains(&involution_pair(n)), "n = {n}");
        }
    }
}

#[test]
fn char_and_induced_routes_agree() {
    for n in 1..=5 {
        let types = CycleType::enumerate(n);
        for s in RepresentationSpec::all(n) {
            for (a, b) in types.iter().tuple_combinations() {
                assert_eq!(
                    united_by_char(&s, a, b).unwrap(),
                    united_by_induced_type(&s, a, b, 100_000).unwrap(),
                    "{s}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn united_faithful_actions_unite_an_almost_similar_pair() {
    for n in 1..=8 {
        for s in RepresentationSpec::all(n).into_iter().filter(faithful) {
            let pairs = find_united_pairs(&s, ScanMode::Full).unwrap().united_pairs;
            if !pairs.is_empty() {
                assert!(
                    pairs.iter().any(|(a, b)| is_almost_similar(a, b).unwrap()),
                    "{s} at n = {n}"
                );
            }
        }
    }
}

#[test]
fn regular_representation_unites_equal_orders() {
    for n in 1..=6 {
        let s = spec(RepKind::Tuples(n), n);
        for (a, b) in CycleType::enumerate(n).iter().tuple_combinations() {
            assert_eq!(united_by_char(&s, a, b).unwrap(), a.order() == b.order(), "{a} vs {b}");
        }
    }
}

#[test]
fn fix_gap_divisibility() {
    for n in 1..=12 {
        for (a, b) in CycleType::enumerate(n).iter().tuple_combinations() {
            if !is_almost_similar(a, b).unwrap() {
                continue;
            }
            let gap = almost_similar_fix_gap(a, b).unwrap();
            assert_ne!(gap, 0, "distinct almost similar classes {a}, {b} share fix");
            for p in permrep::arith::distinct_primes(a.order()) {
                assert_eq!(gap % p as i64, 0, "{a} vs {b}, p = {p}");
            }
        }
    }
}

#[test]
fn reports_are_sorted_and_unique() {
    let report = find_united_pairs(&spec(RepKind::Tuples(6), 8), ScanMode::Full).unwrap();
    let keys: Vec<(String, String)> = report
        .united_pairs
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    for (a, b) in &keys {
        assert!(a < b);
    }
    for w in keys.windows(2) {
        assert!(w[0] < w[1]);
    }
    assert_eq!(report.pairs_checked, 22 * 21 / 2);
}
