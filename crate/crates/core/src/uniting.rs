//! When does a permutation representation of `S_n` make two non-conjugate
//! permutations similar as matrices?
//!
//! Two routes decide it. Over characteristic 0, `T(σ) ~ T(τ)` iff
//! `χ(σ^k) = χ(τ^k)` for every divisor `k` of the order. Over any field, the
//! induced permutations on the action set are similar iff they have the same
//! cycle type, since a permutation matrix determines its cycle type.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{distinct_primes, divisors, lcm};
use crate::characters::{action_set_size, rep_char, RepKind, RepresentationSpec};
use crate::error::{Error, Result};
use crate::perm::{check_degree, CycleType, Permutation};

/// Default cap on materialized action sets.
pub const DEFAULT_ACTION_LIMIT: u64 = 1_000_000;

/// Character criterion: `χ(σ^k) = χ(τ^k)` for every divisor `k` of
/// `lcm(|σ|, |τ|)`.
///
/// For equal orders this is the usual "divisors of the common order" test.
/// For different orders the comparison at `k = |σ|` or `k = |τ|` sets an
/// identity against a non-identity element, which a faithful representation
/// always separates; non-faithful ones (e.g. `subsets:n`) may still unite.
pub fn united_by_char(spec: &RepresentationSpec, a: &CycleType, b: &CycleType) -> Result<bool> {
    check_degree(a, b)?;
    let m = lcm(a.order(), b.order());
    for k in divisors(m) {
        if rep_char(spec, &a.power(k))? != rep_char(spec, &b.power(k))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equal orders and conjugate `p`-th powers for every prime `p` dividing the
/// order. Conjugate pairs qualify.
pub fn is_almost_similar(a: &CycleType, b: &CycleType) -> Result<bool> {
    check_degree(a, b)?;
    let m = a.order();
    if m != b.order() {
        return Ok(false);
    }
    Ok(distinct_primes(m).into_iter().all(|p| a.power(p) == b.power(p)))
}

/// `fix(a) - fix(b)` for an almost similar pair. Every prime dividing the
/// common order divides it, and it vanishes only on conjugate pairs.
pub fn almost_similar_fix_gap(a: &CycleType, b: &CycleType) -> Result<i64> {
    if !is_almost_similar(a, b)? {
        return Err(Error::Precondition(format!("{a} and {b} are not almost similar")));
    }
    Ok(a.fix() as i64 - b.fix() as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Unites,
    DoesNotUnite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Every unordered pair of distinct classes.
    #[default]
    Full,
    /// Almost similar pairs only; enough to decide the verdict for a
    /// faithful representation.
    AlmostSimilar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitingReport {
    pub n: usize,
    #[serde(rename = "rep")]
    pub spec: RepresentationSpec,
    pub pairs_checked: usize,
    pub almost_similar_pairs_checked: usize,
    pub united_pairs: Vec<(CycleType, CycleType)>,
    pub verdict: Verdict,
}

/// Orders a pair by bracket notation, smaller first.
pub fn canonical_pair(a: &CycleType, b: &CycleType) -> (CycleType, CycleType) {
    if a.to_string() <= b.to_string() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Scans unordered pairs of distinct cycle types of degree `spec.degree()`.
/// Pairs are checked in parallel on the current rayon pool; the report does
/// not depend on scheduling.
pub fn find_united_pairs(spec: &RepresentationSpec, mode: ScanMode) -> Result<UnitingReport> {
    let types = CycleType::enumerate(spec.degree());
    let pairs: Vec<(CycleType, CycleType)> = types
        .iter()
        .tuple_combinations()
        .map(|(a, b)| canonical_pair(a, b))
        .collect();
    let checked: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(a, b)| -> Result<(bool, bool)> {
            let almost = is_almost_similar(a, b)?;
            let united = match mode {
                ScanMode::AlmostSimilar if !almost => false,
                _ => united_by_char(spec, a, b)?,
            };
            Ok((almost, united))
        })
        .collect::<Result<_>>()?;

    let pairs_checked = match mode {
        ScanMode::Full => pairs.len(),
        ScanMode::AlmostSimilar => checked.iter().filter(|(almost, _)| *almost).count(),
    };
    let almost_similar_pairs_checked = checked.iter().filter(|(almost, _)| *almost).count();
    let mut united_pairs: Vec<(CycleType, CycleType)> = pairs
        .into_iter()
        .zip(&checked)
        .filter(|(_, (_, united))| *united)
        .map(|(pair, _)| pair)
        .collect();
    united_pairs.sort_by_cached_key(|(a, b)| (a.to_string(), b.to_string()));
    let verdict = if united_pairs.is_empty() {
        Verdict::DoesNotUnite
    } else {
        Verdict::Unites
    };
    Ok(UnitingReport {
        n: spec.degree(),
        spec: *spec,
        pairs_checked,
        almost_similar_pairs_checked,
        united_pairs,
        verdict,
    })
}

/// The action set in its canonical order, as 0-based point lists: tuples
/// lexicographically, subsets by size and then lexicographically.
pub fn action_set(spec: &RepresentationSpec, limit: u64) -> Result<Vec<Vec<usize>>> {
    let size = action_set_size(spec);
    if size.to_u64().map_or(true, |s| s > limit) {
        return Err(Error::LimitExceeded {
            what: format!("action set of {spec} on {} points", spec.degree()),
            size: size.to_string(),
            limit,
        });
    }
    let n = spec.degree();
    let subsets_of_sizes = |sizes: &mut dyn Iterator<Item = usize>| -> Vec<Vec<usize>> {
        sizes.flat_map(|k| (0..n).combinations(k)).collect()
    };
    Ok(match spec.kind() {
        RepKind::Natural => (0..n).map(|i| vec![i]).collect(),
        RepKind::Tuples(k) => distinct_tuples(n, k),
        RepKind::Subsets(k) => subsets_of_sizes(&mut std::iter::once(k)),
        RepKind::PowerSet => subsets_of_sizes(&mut (0..=n)),
        RepKind::EvenSubsets => subsets_of_sizes(&mut (0..=n).step_by(2)),
        RepKind::OddSubsets => subsets_of_sizes(&mut (1..=n).step_by(2)),
    })
}

fn distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(n, k, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut vec![false; n], &mut Vec::with_capacity(k), &mut out);
    out
}

fn is_set_action(spec: &RepresentationSpec) -> bool {
    !matches!(spec.kind(), RepKind::Natural | RepKind::Tuples(_))
}

/// The permutation `p` induces on the action set of `spec`, indexed by the
/// canonical enumeration of [`action_set`].
pub fn induced_permutation(p: &Permutation, spec: &RepresentationSpec, limit: u64) -> Result<Permutation> {
    if p.degree() != spec.degree() {
        return Err(Error::DegreeMismatch {
            left: spec.degree(),
            right: p.degree(),
        });
    }
    let elements = action_set(spec, limit)?;
    let index: HashMap<&[usize], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let sorted = is_set_action(spec);
    let images = elements
        .iter()
        .map(|e| {
            let mut image: Vec<usize> = e.iter().map(|&x| p.apply(x)).collect();
            if sorted {
                image.sort_unstable();
            }
            index[image.as_slice()]
        })
        .collect();
    Permutation::from_images(images)
}

/// Field-independent route: equal cycle types of the induced permutations.
pub fn united_by_induced_type(
    spec: &RepresentationSpec,
    a: &CycleType,
    b: &CycleType,
    limit: u64,
) -> Result<bool> {
    check_degree(a, b)?;
    let ia = induced_permutation(&a.representative(), spec, limit)?;
    let ib = induced_permutation(&b.representative(), spec, limit)?;
    Ok(ia.cycle_type() == ib.cycle_type())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn spec(s: &str, n: usize) -> RepresentationSpec {
        RepresentationSpec::parse(s, n).unwrap()
    }

    #[test]
    fn triplets_unite_the_involution_pair() {
        assert!(united_by_char(&spec("tuples:3", 4), &ct("[2^2]"), &ct("[1^2,2]")).unwrap());
        assert!(!united_by_char(&spec("natural", 4), &ct("[2^2]"), &ct("[1^2,2]")).unwrap());
        assert!(!united_by_char(&spec("tuples:2", 4), &ct("[2^2]"), &ct("[1^2,2]")).unwrap());
    }

    #[test]
    fn almost_similarity() {
        assert!(is_almost_similar(&ct("[2^2]"), &ct("[1^2,2]")).unwrap());
        assert!(!is_almost_similar(&ct("[4]"), &ct("[2^2]")).unwrap());
        assert!(is_almost_similar(&ct("[1,2,3]"), &ct("[1,2,3]")).unwrap());
        // order 6, squares [1^3,3] vs [3^2]: not almost similar
        assert!(!is_almost_similar(&ct("[1,2,3]"), &ct("[6]")).unwrap());
    }

    #[test]
    fn fix_gaps() {
        assert_eq!(almost_similar_fix_gap(&ct("[2^2]"), &ct("[1^2,2]")).unwrap(), -2);
        assert_eq!(almost_similar_fix_gap(&ct("[1,2^2]"), &ct("[1^3,2]")).unwrap(), -2);
        assert_eq!(almost_similar_fix_gap(&ct("[3]"), &ct("[3]")).unwrap(), 0);
        assert!(matches!(
            almost_similar_fix_gap(&ct("[4]"), &ct("[2^2]")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn scans() {
        assert!(find_united_pairs(&spec("tuples:3", 5), ScanMode::Full)
            .unwrap()
            .united_pairs
            .is_empty());
        let four = find_united_pairs(&spec("tuples:3", 4), ScanMode::Full).unwrap();
        assert!(four.united_pairs.contains(&(ct("[1^2,2]"), ct("[2^2]"))));
        assert_eq!(four.verdict, Verdict::Unites);
        let five = find_united_pairs(&spec("tuples:4", 5), ScanMode::Full).unwrap();
        assert!(five.united_pairs.contains(&(ct("[1,2^2]"), ct("[1^3,2]"))));
    }

    #[test]
    fn almost_similar_mode_agrees_on_verdict() {
        for n in 1..=7 {
            for s in RepresentationSpec::all(n) {
                if matches!(s.kind(), RepKind::Subsets(k) if k == n) {
                    continue; // trivial action
                }
                if n == 2 && s.kind() == RepKind::EvenSubsets {
                    continue; // also trivial
                }
                let full = find_united_pairs(&s, ScanMode::Full).unwrap();
                let fast = find_united_pairs(&s, ScanMode::AlmostSimilar).unwrap();
                assert_eq!(full.verdict, fast.verdict, "{s} n={n}");
            }
        }
    }

    #[test]
    fn induced_on_two_subsets() {
        let t = Permutation::parse("(1 2)", 3).unwrap();
        let induced = induced_permutation(&t, &spec("subsets:2", 3), DEFAULT_ACTION_LIMIT).unwrap();
        // {1,2}, {1,3}, {2,3}
        assert_eq!(induced.one_line(), vec![1, 3, 2]);
        assert_eq!(induced.cycle_type(), ct("[1,2]"));
    }

    #[test]
    fn natural_induced_is_itself() {
        let p = Permutation::parse("(1 3 2)(4 5)", 5).unwrap();
        assert_eq!(induced_permutation(&p, &spec("natural", 5), 10).unwrap(), p);
        assert_eq!(induced_permutation(&p, &spec("tuples:1", 5), 10).unwrap(), p);
    }

    #[test]
    fn tuples_in_lexicographic_order() {
        let tuples = action_set(&spec("tuples:2", 3), 100).unwrap();
        assert_eq!(
            tuples,
            vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 2], vec![2, 0], vec![2, 1]]
        );
        let evens = action_set(&spec("even-subsets", 3), 100).unwrap();
        assert_eq!(evens, vec![vec![], vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn limit_enforced() {
        let err = action_set(&spec("tuples:6", 6), 100).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn involution_pair_unites_on_triplets_over_any_field() {
        assert!(united_by_induced_type(&spec("tuples:3", 4), &ct("[2^2]"), &ct("[1^2,2]"), 1000).unwrap());
        assert!(!united_by_induced_type(&spec("natural", 4), &ct("[2^2]"), &ct("[1^2,2]"), 1000).unwrap());
    }
}
