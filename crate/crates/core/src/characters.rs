//! Permutation characters of `S_n` acting on tuples and subsets of `{1..n}`.
//!
//! Every value is the number of points of the action set fixed by a
//! permutation, expressed through its cycle type.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::CycleType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    Natural,
    /// Ordered `k`-tuples of distinct points.
    Tuples(usize),
    /// `k`-element subsets.
    Subsets(usize),
    PowerSet,
    EvenSubsets,
    OddSubsets,
}

/// A permutation action of `S_n` together with its degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepresentationSpec {
    kind: RepKind,
    n: usize,
}

impl RepresentationSpec {
    pub fn new(kind: RepKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        match kind {
            RepKind::Tuples(k) | RepKind::Subsets(k) if k == 0 || k > n => Err(Error::Precondition(
                format!("k = {k} outside 1..={n}"),
            )),
            _ => Ok(RepresentationSpec { kind, n }),
        }
    }

    /// Parses `natural`, `tuples:K`, `subsets:K`, `powerset`,
    /// `even-subsets` or `odd-subsets`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Self::new(text.parse()?, n)
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Every representation of the kinds above for degree `n`.
    pub fn all(n: usize) -> Vec<RepresentationSpec> {
        let mut kinds = vec![RepKind::Natural];
        kinds.extend((1..=n).map(RepKind::Tuples));
        kinds.extend((1..=n).map(RepKind::Subsets));
        kinds.extend([RepKind::PowerSet, RepKind::EvenSubsets, RepKind::OddSubsets]);
        kinds
            .into_iter()
            .map(|kind| RepresentationSpec { kind, n })
            .collect()
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("unknown representation {s:?}"),
        };
        let s = s.trim();
        let with_k = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        match s {
            "natural" => Ok(RepKind::Natural),
            "powerset" | "power-set" => Ok(RepKind::PowerSet),
            "even-subsets" => Ok(RepKind::EvenSubsets),
            "odd-subsets" => Ok(RepKind::OddSubsets),
            _ => {
                if let Some(rest) = s.strip_prefix("tuples:") {
                    Ok(RepKind::Tuples(with_k(rest)?))
                } else if let Some(rest) = s.strip_prefix("subsets:") {
                    Ok(RepKind::Subsets(with_k(rest)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Natural => write!(f, "natural"),
            RepKind::Tuples(k) => write!(f, "tuples:{k}"),
            RepKind::Subsets(k) => write!(f, "subsets:{k}"),
            RepKind::PowerSet => write!(f, "powerset"),
            RepKind::EvenSubsets => write!(f, "even-subsets"),
            RepKind::OddSubsets => write!(f, "odd-subsets"),
        }
    }
}

impl fmt::Display for RepresentationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

impl Serialize for RepresentationSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `F(t) = Π_i (1 + t^i)^{c_i}`; coefficient `k` counts fixed `k`-subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetGenFn {
    coefficients: Vec<BigUint>,
}

impl SubsetGenFn {
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> BigUint {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let c = BigInt::from(c.clone());
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }
}

impl fmt::Display for SubsetGenFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Ordered `k`-tuples of distinct fixed points: `c_1 (c_1 - 1) ... (c_1 - k + 1)`.
pub fn tuple_char(ct: &CycleType, k: usize) -> BigUint {
    let c1 = ct.fix();
    if c1 < k {
        return BigUint::zero();
    }
    (c1 - k + 1..=c1).map(BigUint::from).product()
}

pub fn subset_gen_fn(ct: &CycleType) -> SubsetGenFn {
    let n = ct.degree();
    let mut coeffs = vec![BigUint::zero(); n + 1];
    coeffs[0] = BigUint::one();
    let mut degree = 0;
    for (len, count) in ct.counts() {
        for _ in 0..count {
            // multiply by (1 + t^len), highest terms first so each is read before it is updated
            for i in (0..=degree).rev() {
                if !coeffs[i].is_zero() {
                    let v = coeffs[i].clone();
                    coeffs[i + len] += v;
                }
            }
            degree += len;
        }
    }
    SubsetGenFn { coefficients: coeffs }
}

/// Number of `k`-subsets fixed by any permutation of the given type.
pub fn subset_char(ct: &CycleType, k: usize) -> BigUint {
    subset_gen_fn(ct).coefficient(k)
}

/// `2^m`, one fixed subset per union of cycles.
pub fn powerset_char(ct: &CycleType) -> BigUint {
    BigUint::one() << ct.num_cycles()
}

pub fn even_subsets_char(ct: &CycleType) -> BigUint {
    if ct.has_odd_cycle() {
        BigUint::one() << (ct.num_cycles() - 1)
    } else {
        powerset_char(ct)
    }
}

pub fn odd_subsets_char(ct: &CycleType) -> BigUint {
    if ct.has_odd_cycle() {
        BigUint::one() << (ct.num_cycles() - 1)
    } else {
        BigUint::zero()
    }
}

pub fn rep_char(spec: &RepresentationSpec, ct: &CycleType) -> Result<BigUint> {
    if spec.n != ct.degree() {
        return Err(Error::DegreeMismatch {
            left: spec.n,
            right: ct.degree(),
        });
    }
    Ok(match spec.kind {
        RepKind::Natural => tuple_char(ct, 1),
        RepKind::Tuples(k) => tuple_char(ct, k),
        RepKind::Subsets(k) => subset_char(ct, k),
        RepKind::PowerSet => powerset_char(ct),
        RepKind::EvenSubsets => even_subsets_char(ct),
        RepKind::OddSubsets => odd_subsets_char(ct),
    })
}

/// Size of the action set, i.e. the character value at the identity.
pub fn action_set_size(spec: &RepresentationSpec) -> BigUint {
    rep_char(spec, &CycleType::identity(spec.n)).expect("same degree")
}
