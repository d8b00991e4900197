//! The `verify-paper` battery: every structural result is re-checked by brute
//! force on all small cases, one row per result.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use permrep::alpha::{all_permutations, verify_2chars, InvariantMatrixSet, SetKind, DEFAULT_SET_LIMIT};
use permrep::arith::{gcd, lcm, prime_factors};
use permrep::characters::{rep_char, subset_char, subset_gen_fn, RepKind, RepresentationSpec};
use permrep::recovery::{recover_c_d, recover_cycle_type, recover_m_d, recover_m_d_via, CycleCountOracle};
use permrep::uniting::{
    almost_similar_fix_gap, find_united_pairs, induced_permutation, is_almost_similar, united_by_char,
    united_by_induced_type, ScanMode,
};
use permrep::{CycleType, FieldMatrix, FieldSpec, Poly, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Action sets larger than this are skipped by the induced-permutation checks.
const INDUCED_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub theorem: &'static str,
    pub scope: String,
    pub cases: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Battery {
    pub max_n: usize,
    pub checks: Vec<CheckRow>,
    pub pass: bool,
}

/// Running tally for one check.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
}

impl Tally {
    fn check(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failures += other.failures;
        self
    }
}

fn fields() -> [FieldSpec; 3] {
    [
        FieldSpec::new(2).expect("prime"),
        FieldSpec::new(3).expect("prime"),
        FieldSpec::rationals(),
    ]
}

fn spec(kind: RepKind, n: usize) -> RepresentationSpec {
    RepresentationSpec::new(kind, n).expect("valid spec")
}

fn scan_is_empty(kind: RepKind, n: usize) -> Result<bool> {
    Ok(find_united_pairs(&spec(kind, n), ScanMode::Full)?.united_pairs.is_empty())
}

fn faithful(s: &RepresentationSpec) -> bool {
    match s.kind() {
        RepKind::Subsets(k) => k < s.degree(),
        RepKind::EvenSubsets => s.degree() != 2,
        _ => true,
    }
}

fn involution_pair(n: usize) -> (CycleType, CycleType) {
    let two_fixed = CycleType::from_counts([(1, 2), (2, (n - 2) / 2)]).expect("valid");
    let all_twos = CycleType::from_counts([(2, n / 2)]).expect("valid");
    (two_fixed, all_twos)
}

fn range(lo: usize, hi: usize) -> String {
    if lo >= hi {
        format!("n={hi}")
    } else {
        format!("n={lo}..{hi}")
    }
}

/// Runs the battery on the current rayon pool. Output depends only on `max_n`.
pub fn battery(max_n: usize) -> Result<Battery> {
    let max_n = max_n.max(1);
    let small = max_n.min(6);
    let tiny = max_n.min(5);
    let mut checks = Vec::new();
    let mut push = |theorem: &'static str, scope: String, tally: Tally| {
        checks.push(CheckRow {
            theorem,
            scope,
            cases: tally.cases,
            pass: tally.failures == 0,
        })
    };

    push("cycle-powers-split-by-gcd", range(1, small), cycle_powers(small));
    push("power-class-depends-on-gcd-with-order", range(1, max_n), power_gcd(max_n));
    push(
        "fixed-space-dimension-counts-cycles",
        range(1, small) + " over GF(2),GF(3),Q",
        fixed_spaces(small)?,
    );
    push(
        "divisible-cycle-counts-recovered",
        range(1, max_n) + " all prime routes",
        divisible_counts(max_n)?,
    );
    push(
        "exact-cycle-counts-by-inclusion-exclusion",
        range(1, max_n),
        exact_counts(max_n)?,
    );
    push(
        "similar-permutation-matrices-are-conjugate",
        range(1, small) + " over GF(2),GF(3),Q",
        similarity(small)?,
    );
    push("char-two-collision", "[4],[2^2],[1^4] over GF(2)".into(), collision()?);
    push(
        "permutation-characters-count-fixed-points",
        range(1, small) + " all actions",
        characters(small)?,
    );
    push("subset-generating-function", range(1, max_n), generating_function(max_n));
    push(
        "similarity-from-character-powers",
        range(1, tiny) + " action sets <= 100000",
        char_vs_induced(tiny)?,
    );
    push("regular-representation-unites-equal-orders", range(1, small), regular(small)?);
    push("almost-similar-fix-gap", range(1, max_n), fix_gap(max_n)?);
    push(
        "uniting-implies-almost-similar-pair-united",
        range(1, max_n) + " faithful actions",
        witness(max_n)?,
    );

    let lo = 3.min(max_n);
    push("natural-does-not-unite", range(lo, max_n), uniting(lo, max_n, |n| {
        Ok(scan_is_empty(RepKind::Natural, n)? && scan_is_empty(RepKind::Tuples(1), n)?)
    })?);
    push("pairs-do-not-unite", range(lo, max_n), uniting(lo, max_n, |n| {
        Ok(n < 2 || scan_is_empty(RepKind::Tuples(2), n)?)
    })?);
    push("triplets-unite-iff-degree-even", range(lo, max_n), uniting(lo, max_n, |n| {
        if n < 3 {
            return Ok(true);
        }
        let pairs = find_united_pairs(&spec(RepKind::Tuples(3), n), ScanMode::Full)?.united_pairs;
        Ok(if n % 2 == 0 {
            pairs.contains(&involution_pair(n))
        } else {
            pairs.is_empty()
        })
    })?);
    let scope = if max_n >= 4 { range(4, max_n) } else { "vacuous below n=4".into() };
    push("four-or-more-tuples-unite", scope, uniting(4, max_n, |n| {
        (4..=n).try_fold(true, |ok, k| Ok(ok && !scan_is_empty(RepKind::Tuples(k), n)?))
    })?);
    push("power-set-does-not-unite", range(lo, max_n), uniting(lo, max_n, |n| {
        scan_is_empty(RepKind::PowerSet, n)
    })?);
    push("even-subsets-unite-iff-degree-even", range(lo, max_n), uniting(lo, max_n, |n| {
        Ok(scan_is_empty(RepKind::EvenSubsets, n)? == (n % 2 == 1))
    })?);
    push("odd-subsets-do-not-unite", range(lo, max_n), uniting(lo, max_n, |n| {
        scan_is_empty(RepKind::OddSubsets, n)
    })?);
    push(
        "non-uniting-transfers-to-prime-fields",
        range(1, max_n.min(4)) + " action sets <= 16 over GF(2),GF(3)",
        field_transfer(max_n.min(4))?,
    );

    let alpha_n = max_n.min(5);
    let mut alpha_sets = Vec::new();
    if max_n >= 3 {
        alpha_sets.push(InvariantMatrixSet::build(SetKind::FullGl, 3, 2, DEFAULT_SET_LIMIT)?);
    }
    for n in 1..=alpha_n {
        alpha_sets.push(InvariantMatrixSet::build(SetKind::PermMatrices, n, 2, DEFAULT_SET_LIMIT)?);
    }
    let alpha_scope = if max_n >= 3 {
        format!("GL(3,2) and permutation matrices {}", range(1, alpha_n))
    } else {
        format!("permutation matrices {}", range(1, alpha_n))
    };
    push("diagonal-restriction-is-commutant-count", alpha_scope.clone(), diagonal(&alpha_sets)?);
    push("two-sided-character-vanishes-off-conjugates", alpha_scope, two_chars(&alpha_sets)?);
    push(
        "two-sided-orbit-count",
        range(1, max_n.min(3)) + " GL(n,2)",
        orbit_count(max_n.min(3))?,
    );

    let pass = checks.iter().all(|c| c.pass);
    Ok(Battery { max_n, checks, pass })
}

fn cycle_powers(max_n: usize) -> Tally {
    (1..=max_n)
        .flat_map(all_permutations)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| {
            let mut t = Tally::default();
            for k in 1..=12u64 {
                let expected = p.cycle_type().power(k as u128);
                t.check(p.power(k).cycle_type() == expected);
                // direct count for each cycle: gcd(L, k) cycles of length L / gcd
                let mut parts = Vec::new();
                for c in p.cycles() {
                    let g = gcd(c.len() as u64, k) as usize;
                    parts.extend(std::iter::repeat(c.len() / g).take(g));
                }
                t.check(CycleType::from_parts(&parts).ok() == Some(expected));
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn power_gcd(max_n: usize) -> Tally {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for ct in CycleType::enumerate(n) {
            let m = ct.order();
            for k in 1..=2 * m {
                t.check(ct.power(k) == ct.power(gcd(k, m)));
                if gcd(k, m) == 1 {
                    t.check(ct.power(k) == ct);
                }
            }
        }
    }
    t
}

fn fixed_spaces(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for field in fields() {
        for n in 1..=max_n {
            for ct in CycleType::enumerate(n) {
                let a = FieldMatrix::permutation(&ct.representative(), field);
                t.check(a.fixed_space_dim()? == ct.num_cycles());
                for k in 1..=n as u64 {
                    t.check(a.pow(k)?.fixed_space_dim()? == ct.power(k as u128).num_cycles());
                }
            }
        }
    }
    Ok(t)
}

fn divisible_counts(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for ct in CycleType::enumerate(n) {
            let oracle = CycleCountOracle::from_cycle_type(&ct);
            for d in 1..=n as u64 {
                t.check(recover_m_d(&oracle, d)? as usize == ct.m(d as usize));
                let primes = prime_factors(d);
                for route in primes.iter().copied().permutations(primes.len()).unique() {
                    t.check(recover_m_d_via(&oracle, d, &route)? as usize == ct.m(d as usize));
                }
            }
        }
    }
    Ok(t)
}

/// `Σ_{S} (-1)^{|S|} m_{lcm(d, S)}` over subsets `S` of the nonempty `I_{dk}`, `k > 1`.
fn inclusion_exclusion(ct: &CycleType, d: usize) -> i64 {
    let n = ct.degree();
    let sets: Vec<usize> = (2..=n / d).map(|k| d * k).filter(|&dk| ct.m(dk) > 0).collect();
    (0..=sets.len())
        .flat_map(|size| sets.iter().combinations(size))
        .map(|combo| {
            let l = combo.iter().fold(d, |acc, &&x| lcm(acc, x));
            let m = if l <= n { ct.m(l) as i64 } else { 0 };
            if combo.len() % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .sum()
}

fn exact_counts(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for ct in CycleType::enumerate(n) {
            let oracle = CycleCountOracle::from_cycle_type(&ct);
            for d in 1..=n {
                let c = recover_c_d(&oracle, d as u64)?;
                t.check(c as usize == ct.c(d) && inclusion_exclusion(&ct, d) == c as i64);
            }
            t.check(recover_cycle_type(&oracle)? == ct);
        }
    }
    Ok(t)
}

fn similarity(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for field in fields() {
        for n in 1..=max_n {
            let perms = all_permutations(n);
            let recovered: Vec<bool> = perms
                .par_iter()
                .map(|p| {
                    let oracle = CycleCountOracle::from_matrix(&FieldMatrix::permutation(p, field))?;
                    Ok(recover_cycle_type(&oracle)? == p.cycle_type())
                })
                .collect::<Result<_>>()?;
            recovered.into_iter().for_each(|ok| t.check(ok));

            let mats: Vec<FieldMatrix> = CycleType::enumerate(n)
                .iter()
                .map(|ct| FieldMatrix::permutation(&ct.representative(), field))
                .collect();
            for (i, a) in mats.iter().enumerate() {
                for (j, b) in mats.iter().enumerate() {
                    t.check(a.similar(b)? == (i == j));
                }
            }
        }
    }
    Ok(t)
}

fn collision() -> Result<Tally> {
    let f = FieldSpec::new(2)?;
    let target = Poly::from_i64(f, &[1, 0, 0, 0, 1]);
    let mats: Vec<FieldMatrix> = [[4].as_slice(), &[2, 2], &[1, 1, 1, 1]]
        .iter()
        .map(|parts| Ok(FieldMatrix::permutation(&CycleType::from_parts(parts)?.representative(), f)))
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for (i, a) in mats.iter().enumerate() {
        t.check(a.char_poly()? == target);
        for (j, b) in mats.iter().enumerate() {
            t.check(a.similar(b)? == (i == j));
        }
    }
    Ok(t)
}

fn characters(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for s in RepresentationSpec::all(n) {
            for ct in CycleType::enumerate(n) {
                let induced = induced_permutation(&ct.representative(), &s, INDUCED_LIMIT)?;
                t.check(rep_char(&s, &ct)? == BigUint::from(induced.cycle_type().fix()));
            }
        }
    }
    Ok(t)
}

fn generating_function(max_n: usize) -> Tally {
    let mut t = Tally::default();
    let example = subset_gen_fn(&CycleType::from_parts(&[2, 1, 1]).expect("valid"));
    let expected: Vec<BigUint> = [1u32, 2, 2, 2, 1].iter().map(|&c| BigUint::from(c)).collect();
    t.check(example.coefficients() == expected.as_slice());
    for n in 1..=max_n {
        for ct in CycleType::enumerate(n) {
            let f = subset_gen_fn(&ct);
            let two_m = BigUint::from(1u8) << ct.num_cycles();
            t.check(f.eval_at_one() == two_m);
            let at_minus_one = if ct.has_odd_cycle() {
                BigInt::from(0)
            } else {
                BigInt::from(two_m)
            };
            t.check(f.eval_at_minus_one() == at_minus_one);
            t.check((0..=n).all(|k| f.coefficient(k) == subset_char(&ct, k)));
        }
    }
    t
}

fn char_vs_induced(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let types = CycleType::enumerate(n);
        for s in RepresentationSpec::all(n) {
            for (a, b) in types.iter().tuple_combinations() {
                t.check(united_by_char(&s, a, b)? == united_by_induced_type(&s, a, b, INDUCED_LIMIT)?);
            }
        }
    }
    Ok(t)
}

fn regular(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let s = spec(RepKind::Tuples(n), n);
        for (a, b) in CycleType::enumerate(n).iter().tuple_combinations() {
            t.check(united_by_char(&s, a, b)? == (a.order() == b.order()));
        }
    }
    Ok(t)
}

fn fix_gap(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for (a, b) in CycleType::enumerate(n).iter().tuple_combinations() {
            if !is_almost_similar(a, b)? {
                continue;
            }
            let gap = almost_similar_fix_gap(a, b)?;
            let primes_divide = permrep::arith::distinct_primes(a.order())
                .into_iter()
                .all(|p| gap % p as i64 == 0);
            t.check(gap != 0 && primes_divide);
        }
    }
    Ok(t)
}

fn witness(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for s in RepresentationSpec::all(n).into_iter().filter(faithful) {
            let pairs = find_united_pairs(&s, ScanMode::Full)?.united_pairs;
            let mut ok = pairs.is_empty();
            for (a, b) in &pairs {
                ok |= is_almost_similar(a, b)?;
            }
            let fast = find_united_pairs(&s, ScanMode::AlmostSimilar)?.verdict;
            t.check(ok && fast == find_united_pairs(&s, ScanMode::Full)?.verdict);
        }
    }
    Ok(t)
}

fn uniting(lo: usize, hi: usize, check: impl Fn(usize) -> Result<bool>) -> Result<Tally> {
    let mut t = Tally::default();
    for n in lo..=hi {
        t.check(check(n)?);
    }
    Ok(t)
}

fn field_transfer(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let prime_fields = [FieldSpec::new(2)?, FieldSpec::new(3)?];
    for n in 1..=max_n {
        let types = CycleType::enumerate(n);
        for s in RepresentationSpec::all(n) {
            let size = permrep::characters::action_set_size(&s);
            if size > BigUint::from(16u8) || !find_united_pairs(&s, ScanMode::Full)?.united_pairs.is_empty() {
                continue;
            }
            for field in prime_fields {
                let mats: Vec<FieldMatrix> = types
                    .iter()
                    .map(|ct| {
                        let p = induced_permutation(&ct.representative(), &s, INDUCED_LIMIT)?;
                        Ok(FieldMatrix::permutation(&p, field))
                    })
                    .collect::<Result<_>>()?;
                for (i, a) in mats.iter().enumerate() {
                    for b in &mats[i + 1..] {
                        // faithful or not, classes apart over C stay apart
                        t.check(!a.similar(b)?);
                    }
                }
            }
        }
    }
    Ok(t)
}

fn diagonal(sets: &[InvariantMatrixSet]) -> Result<Tally> {
    let mut t = Tally::default();
    for set in sets {
        for p in all_permutations(set.degree()) {
            let brute = set
                .members()
                .iter()
                .filter(|a| permrep::alpha::act(&p, &p, a).map(|b| &b == *a).unwrap_or(false))
                .count();
            t.check(set.alpha_char(&p, &p)? == brute && set.commutant_count(&p)? == brute);
        }
    }
    Ok(t)
}

fn two_chars(sets: &[InvariantMatrixSet]) -> Result<Tally> {
    let mut t = Tally::default();
    for set in sets {
        for row in verify_2chars(set, 3, 0)?.rows {
            t.check(row.pass);
        }
    }
    Ok(t)
}

fn orbit_count(max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        let set = InvariantMatrixSet::build(SetKind::FullGl, n, 2, DEFAULT_SET_LIMIT)?;
        let perms = all_permutations(n);
        let mut total = 0;
        for pi in &perms {
            for sigma in &perms {
                total += set.alpha_char(pi, sigma)?;
            }
        }
        t.check(total == perms.len() * perms.len() * set.orbits()?.len());
    }
    Ok(t)
}
