//! The action `(π, σ)·A = P_π A P_σ^{-1}` of `S_n × S_n` on a finite set of
//! invertible matrices over GF(p), and its permutation character.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldMatrix, FieldSpec, Scalar};
use crate::perm::{CycleType, Permutation};

/// Default cap on enumerated matrix sets.
pub const DEFAULT_SET_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    FullGl,
    PermMatrices,
}

/// Row-major residues, the canonical key of a member.
type Key = Vec<u64>;

/// A finite subset of `GL(n, p)` closed under the action.
#[derive(Debug, Clone)]
pub struct InvariantMatrixSet {
    field: FieldSpec,
    n: usize,
    members: Vec<FieldMatrix>,
    index: HashMap<Key, usize>,
}

fn key(a: &FieldMatrix) -> Key {
    a.entries()
        .iter()
        .map(|e| match e {
            Scalar::Mod(x) => *x,
            Scalar::Rat(_) => unreachable!("members live over prime fields"),
        })
        .collect()
}

/// `|GL(n, p)| = Π_{i<n} (p^n - p^i)`, saturating.
pub fn gl_order(n: usize, p: u64) -> u128 {
    let q = (p as u128).saturating_pow(n as u32);
    (0..n as u32).fold(1u128, |acc, i| {
        acc.saturating_mul(q - (p as u128).saturating_pow(i))
    })
}

impl InvariantMatrixSet {
    pub fn build(kind: SetKind, n: usize, p: u64, limit: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        let field = FieldSpec::prime(p)?;
        let members = match kind {
            SetKind::FullGl => {
                let size = gl_order(n, p);
                let raw = (p as u128).checked_pow((n * n) as u32);
                if size > limit as u128 || raw.is_none() {
                    return Err(Error::LimitExceeded {
                        what: format!("GL({n}, {p})"),
                        size: size.to_string(),
                        limit,
                    });
                }
                enumerate_gl(field, n, raw.unwrap() as u64)
            }
            SetKind::PermMatrices => {
                let size: u128 = (1..=n as u128).product();
                if size > limit as u128 {
                    return Err(Error::LimitExceeded {
                        what: format!("S_{n}"),
                        size: size.to_string(),
                        limit,
                    });
                }
                all_permutations(n)
                    .iter()
                    .map(|q| FieldMatrix::permutation(q, field))
                    .collect()
            }
        };
        Self::from_members(field, n, members)
    }

    /// Checks invertibility and closure under generators of `S_n × S_n`.
    pub fn from_members(field: FieldSpec, n: usize, mut members: Vec<FieldMatrix>) -> Result<Self> {
        if field.is_rational() {
            return Err(Error::Precondition("matrix sets are enumerated over prime fields".into()));
        }
        for a in &members {
            if a.field() != field || a.rows() != n || !a.is_invertible() {
                return Err(Error::Precondition(format!(
                    "member is not an invertible {n}x{n} matrix over {field}"
                )));
            }
        }
        members.sort_by_cached_key(key);
        members.dedup();
        let index = members.iter().enumerate().map(|(i, a)| (key(a), i)).collect();
        let set = InvariantMatrixSet { field, n, members, index };
        let e = Permutation::identity(n);
        for g in generators(n) {
            for a in &set.members {
                if !set.contains(&act(&g, &e, a)?) || !set.contains(&act(&e, &g, a)?) {
                    return Err(Error::Precondition("set is not closed under the action".into()));
                }
            }
        }
        Ok(set)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[FieldMatrix] {
        &self.members
    }

    pub fn contains(&self, a: &FieldMatrix) -> bool {
        self.index.contains_key(&key(a))
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: p.degree(),
            });
        }
        Ok(())
    }

    /// Number of members fixed by `(π, σ)`.
    pub fn alpha_char(&self, pi: &Permutation, sigma: &Permutation) -> Result<usize> {
        self.check_degree(pi)?;
        self.check_degree(sigma)?;
        Ok(self
            .members
            .par_iter()
            .filter(|a| fixed_by(pi, sigma, a))
            .count())
    }

    /// Number of members commuting with `P_π`.
    pub fn commutant_count(&self, pi: &Permutation) -> Result<usize> {
        self.check_degree(pi)?;
        let p = FieldMatrix::permutation(pi, self.field);
        self.members
            .par_iter()
            .map(|a| Ok(p.mul(a)? == a.mul(&p)?))
            .try_fold(|| 0, |acc, c: Result<bool>| Ok(acc + c? as usize))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    }

    /// Orbits of the action, each as sorted member indices, ordered by
    /// smallest member.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>> {
        let e = Permutation::identity(self.n);
        let gens = generators(self.n);
        let mut orbit_of = vec![usize::MAX; self.members.len()];
        let mut orbits = Vec::new();
        for start in 0..self.members.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            orbit_of[start] = id;
            let mut orbit = vec![start];
            let mut frontier = vec![start];
            while let Some(i) = frontier.pop() {
                for g in &gens {
                    for image in [act(g, &e, &self.members[i])?, act(&e, g, &self.members[i])?] {
                        let j = self.index[&key(&image)];
                        if orbit_of[j] == usize::MAX {
                            orbit_of[j] = id;
                            orbit.push(j);
                            frontier.push(j);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }
}

fn enumerate_gl(field: FieldSpec, n: usize, count: u64) -> Vec<FieldMatrix> {
    let p = field.characteristic();
    (0..count)
        .into_par_iter()
        .filter_map(|mut code| {
            // most significant digit first, so codes ascend with the canonical order
            let mut entries = vec![Scalar::Mod(0); n * n];
            for slot in entries.iter_mut().rev() {
                *slot = Scalar::Mod(code % p);
                code /= p;
            }
            let a = FieldMatrix::from_entries(field, n, n, entries).expect("canonical residues");
            a.is_invertible().then_some(a)
        })
        .collect()
}

/// A transposition and an `n`-cycle, which generate `S_n`.
fn generators(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    let cycle: Vec<usize> = (1..=n).collect();
    vec![
        Permutation::from_cycles(n, &[vec![1, 2]]).unwrap(),
        Permutation::from_cycles(n, &[cycle]).unwrap(),
    ]
}

/// All permutations of degree `n` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    use itertools::Itertools;
    (0..n)
        .permutations(n)
        .map(|images| Permutation::from_images(images).expect("bijection"))
        .collect()
}

/// `P_π A P_σ^{-1}`: entry `(i, j)` of `A` moves to `(π(i), σ(j))`.
pub fn act(pi: &Permutation, sigma: &Permutation, a: &FieldMatrix) -> Result<FieldMatrix> {
    let n = a.rows();
    if !a.is_square() || pi.degree() != n || sigma.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: pi.degree().max(sigma.degree()),
        });
    }
    let mut entries = vec![a.field().zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            entries[pi.apply(i) * n + sigma.apply(j)] = a.get(i, j).clone();
        }
    }
    FieldMatrix::from_entries(a.field(), n, n, entries)
}

fn fixed_by(pi: &Permutation, sigma: &Permutation, a: &FieldMatrix) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..n).all(|j| a.get(pi.apply(i), sigma.apply(j)) == a.get(i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPairRow {
    pub type1: CycleType,
    pub type2: CycleType,
    pub conjugate: bool,
    /// Fixed-point count of `(π, σ)`; for conjugate classes, of the first
    /// sampled conjugate that disagrees, or the common value.
    pub alpha_char: usize,
    pub commutant_count: usize,
    pub samples: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCharsReport {
    pub n: usize,
    pub p: u64,
    pub members: usize,
    pub rows: Vec<ClassPairRow>,
    pub pass: bool,
}

/// Checks, for every ordered pair of classes, that the character vanishes off
/// conjugate pairs and equals the commutant count on them (at `samples`
/// random conjugates drawn from a seeded generator).
pub fn verify_2chars(set: &InvariantMatrixSet, samples: usize, seed: u64) -> Result<TwoCharsReport> {
    let n = set.degree();
    let types = CycleType::enumerate(n);
    let everything = all_permutations(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for t1 in &types {
        let pi = t1.representative();
        let commutant = set.commutant_count(&pi)?;
        for t2 in &types {
            let row = if t1 == t2 {
                let mut value = commutant;
                let mut pass = true;
                for _ in 0..samples {
                    let g = everything.choose(&mut rng).expect("nonempty");
                    let sigma = g.compose(&pi).compose(&g.inverse());
                    let v = set.alpha_char(&pi, &sigma)?;
                    if v != commutant && pass {
                        pass = false;
                        value = v;
                    }
                }
                ClassPairRow {
                    type1: t1.clone(),
                    type2: t2.clone(),
                    conjugate: true,
                    alpha_char: value,
                    commutant_count: commutant,
                    samples,
                    pass,
                }
            } else {
                let v = set.alpha_char(&pi, &t2.representative())?;
                ClassPairRow {
                    type1: t1.clone(),
                    type2: t2.clone(),
                    conjugate: false,
                    alpha_char: v,
                    commutant_count: commutant,
                    samples: 1,
                    pass: v == 0,
                }
            };
            rows.push(row);
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(TwoCharsReport {
        n,
        p: set.field().characteristic(),
        members: set.len(),
        rows,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_sizes() {
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(InvariantMatrixSet::build(SetKind::FullGl, 2, 2, DEFAULT_SET_LIMIT).unwrap().len(), 6);
        assert_eq!(InvariantMatrixSet::build(SetKind::FullGl, 3, 2, DEFAULT_SET_LIMIT).unwrap().len(), 168);
        assert_eq!(InvariantMatrixSet::build(SetKind::PermMatrices, 3, 5, DEFAULT_SET_LIMIT).unwrap().len(), 6);
    }

    #[test]
    fn build_errors() {
        assert!(InvariantMatrixSet::build(SetKind::FullGl, 2, 4, DEFAULT_SET_LIMIT).is_err());
        let err = InvariantMatrixSet::build(SetKind::FullGl, 4, 3, DEFAULT_SET_LIMIT).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn act_matches_matrix_product() {
        let f = FieldSpec::new(3).unwrap();
        let a = FieldMatrix::from_i64_rows(f, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let pi = Permutation::parse("(1 2 3)", 3).unwrap();
        let sigma = Permutation::parse("(1 3)", 3).unwrap();
        let direct = FieldMatrix::permutation(&pi, f)
            .mul(&a)
            .unwrap()
            .mul(&FieldMatrix::permutation(&sigma.inverse(), f))
            .unwrap();
        assert_eq!(act(&pi, &sigma, &a).unwrap(), direct);
        let e = Permutation::identity(3);
        assert_eq!(act(&e, &e, &a).unwrap(), a);
    }

    #[test]
    fn three_cycle_commutant_in_gl3_2() {
        let set = InvariantMatrixSet::build(SetKind::FullGl, 3, 2, DEFAULT_SET_LIMIT).unwrap();
        let c = Permutation::parse("(1 2 3)", 3).unwrap();
        assert_eq!(set.alpha_char(&c, &c).unwrap(), 3);
        assert_eq!(set.commutant_count(&c).unwrap(), 3);
        let e = Permutation::identity(3);
        assert_eq!(set.alpha_char(&e, &e).unwrap(), 168);
        assert_eq!(set.commutant_count(&e).unwrap(), 168);
    }

    #[test]
    fn non_closed_set_rejected() {
        let f = FieldSpec::new(2).unwrap();
        let a = FieldMatrix::from_i64_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(InvariantMatrixSet::from_members(f, 2, vec![a]).is_err());
    }

    #[test]
    fn report_for_small_perm_set() {
        let set = InvariantMatrixSet::build(SetKind::PermMatrices, 4, 2, DEFAULT_SET_LIMIT).unwrap();
        let report = verify_2chars(&set, 3, 7).unwrap();
        assert!(report.pass);
        assert_eq!(report.rows.len(), 25);
    }
}
