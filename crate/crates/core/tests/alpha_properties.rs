use permrep::alpha::{act, all_permutations, verify_2chars, InvariantMatrixSet, SetKind, DEFAULT_SET_LIMIT};
use permrep::{CycleType, FieldMatrix, FieldSpec, Permutation};
use proptest::prelude::*;

fn full_gl(n: usize, p: u64) -> InvariantMatrixSet {
    InvariantMatrixSet::build(SetKind::FullGl, n, p, DEFAULT_SET_LIMIT).unwrap()
}

fn perm_set(n: usize) -> InvariantMatrixSet {
    InvariantMatrixSet::build(SetKind::PermMatrices, n, 2, DEFAULT_SET_LIMIT).unwrap()
}

#[test]
fn vanishes_off_conjugate_class_pairs() {
    let mut sets = vec![full_gl(3, 2)];
    sets.extend((1..=5).map(perm_set));
    for set in &sets {
        let types = CycleType::enumerate(set.degree());
        for a in &types {
            for b in &types {
                let value = set.alpha_char(&a.representative(), &b.representative()).unwrap();
                if a != b {
                    assert_eq!(value, 0, "{a} vs {b}");
                } else {
                    assert_eq!(value, set.commutant_count(&a.representative()).unwrap());
                }
            }
        }
    }
}

#[test]
fn diagonal_restriction_is_commutant_count() {
    for set in [full_gl(2, 3), full_gl(3, 2), perm_set(4)] {
        for p in all_permutations(set.degree()) {
            assert_eq!(set.alpha_char(&p, &p).unwrap(), set.commutant_count(&p).unwrap());
        }
    }
}

#[test]
fn burnside_orbit_count() {
    for n in [2, 3] {
        let set = full_gl(n, 2);
        let perms = all_permutations(n);
        let mut total = 0;
        for pi in &perms {
            for sigma in &perms {
                total += set.alpha_char(pi, sigma).unwrap();
            }
        }
        let orbits = set.orbits().unwrap();
        assert_eq!(total, perms.len() * perms.len() * orbits.len(), "n = {n}");
        let covered: usize = orbits.iter().map(Vec::len).sum();
        assert_eq!(covered, set.len());
    }
}

#[test]
fn reports_pass_on_presets() {
    for set in [full_gl(2, 2), full_gl(2, 3), full_gl(3, 2), perm_set(5), perm_set(6)] {
        let report = verify_2chars(&set, 3, 1).unwrap();
        assert!(report.pass, "n = {}, p = {}", report.n, report.p);
    }
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_axioms(
        p in prop_oneof![Just(2u64), Just(3)],
        (pi1, pi2, s1, s2, entries) in (1usize..=4).prop_flat_map(|n| (
            perm(n), perm(n), perm(n), perm(n),
            proptest::collection::vec(0i64..3, n * n),
        )),
    ) {
        let n = pi1.degree();
        let field = FieldSpec::new(p).unwrap();
        let rows: Vec<Vec<i64>> = entries.chunks(n).map(|c| c.to_vec()).collect();
        let a = FieldMatrix::from_i64_rows(field, &rows).unwrap();
        let e = Permutation::identity(n);
        prop_assert_eq!(act(&e, &e, &a).unwrap(), a.clone());
        let nested = act(&pi1, &s1, &act(&pi2, &s2, &a).unwrap()).unwrap();
        prop_assert_eq!(nested, act(&pi1.compose(&pi2), &s1.compose(&s2), &a).unwrap());
        let diag = act(&pi1, &pi1, &a).unwrap();
        let pm = FieldMatrix::permutation(&pi1, field);
        let conj = pm.mul(&a).unwrap().mul(&pm.inverse().unwrap()).unwrap();
        prop_assert_eq!(diag, conj);
    }
}
