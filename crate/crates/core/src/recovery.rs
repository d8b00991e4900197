//! Recovering a permutation's cycle type from the numbers `m(π^k)` alone.
//!
//! `m(π^k)` is the dimension of the fixed space of the `k`-th power of the
//! permutation matrix, which is a similarity invariant over any field. From
//! these counts the number `m_d` of cycles with length divisible by `d` is
//! obtained by peeling one prime `p` off `d = p·t` at a time:
//!
//! ```text
//! m_{pt}(π) = (m_t(π^p) - m_t(π)) / (p - 1)   if gcd(p, t) = 1
//! m_{pt}(π) =  m_t(π^p) / p                   otherwise
//! ```
//!
//! and the exact counts `c_d` follow by Möbius inversion of
//! `m_d = Σ_j c_{dj}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use crate::arith::{gcd, is_prime, mobius, prime_factors};
use crate::error::{Error, Result};
use crate::field::FieldMatrix;
use crate::perm::CycleType;

enum Source {
    Type(CycleType),
    Matrix(FieldMatrix),
    Custom(Box<dyn Fn(u64) -> u64 + Send + Sync>),
}

/// Answers `k ↦ m(π^k)` for a hidden permutation `π` of degree `n`.
///
/// Answers are memoized; [`CycleCountOracle::trace`] lists every distinct
/// query made so far.
pub struct CycleCountOracle {
    n: usize,
    source: Source,
    memo: Mutex<BTreeMap<u64, u64>>,
}

impl fmt::Debug for CycleCountOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.source {
            Source::Type(_) => "type",
            Source::Matrix(_) => "matrix",
            Source::Custom(_) => "custom",
        };
        f.debug_struct("CycleCountOracle")
            .field("n", &self.n)
            .field("source", &kind)
            .finish()
    }
}

impl CycleCountOracle {
    fn with_source(n: usize, source: Source) -> Self {
        CycleCountOracle {
            n,
            source,
            memo: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn from_cycle_type(ct: &CycleType) -> Self {
        Self::with_source(ct.degree(), Source::Type(ct.clone()))
    }

    /// Oracle backed by fixed-space dimensions of powers of a permutation
    /// matrix. Rejects anything that is not a permutation matrix.
    pub fn from_matrix(a: &FieldMatrix) -> Result<Self> {
        a.as_permutation()?;
        Ok(Self::with_source(a.rows(), Source::Matrix(a.clone())))
    }

    /// Oracle backed by an arbitrary function; no consistency is assumed.
    pub fn from_fn(n: usize, query: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        Self::with_source(n, Source::Custom(Box::new(query)))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `m(π^k)`, the number of cycles of the `k`-th power.
    pub fn query(&self, k: u64) -> Result<u64> {
        if let Some(&v) = self.memo.lock().unwrap().get(&k) {
            return Ok(v);
        }
        let v = match &self.source {
            Source::Type(ct) => ct.power(k as u128).num_cycles() as u64,
            Source::Matrix(a) => a.pow(k)?.fixed_space_dim()? as u64,
            Source::Custom(f) => f(k),
        };
        self.memo.lock().unwrap().insert(k, v);
        Ok(v)
    }

    /// Every `(k, m(π^k))` answered so far, ascending in `k`.
    pub fn trace(&self) -> Vec<(u64, u64)> {
        self.memo.lock().unwrap().iter().map(|(&k, &v)| (k, v)).collect()
    }
}

/// `m_d(π)` via the prime-peeling recursion, smallest prime first.
pub fn recover_m_d(oracle: &CycleCountOracle, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    recover_m_d_via(oracle, d, &prime_factors(d))
}

/// `m_d(π)` peeling the primes of `d` in the given order.
///
/// `route` must be a rearrangement of the prime factorization of `d`.
pub fn recover_m_d_via(oracle: &CycleCountOracle, d: u64, route: &[u64]) -> Result<u64> {
    if d == 0 || route.iter().product::<u64>() != d || !route.iter().all(|&p| is_prime(p)) {
        return Err(Error::Precondition(format!("{route:?} is not a prime factorization of {d}")));
    }
    peel(oracle, 1, d, route)
}

/// `m_d(π^stride)`.
fn peel(oracle: &CycleCountOracle, stride: u64, d: u64, route: &[u64]) -> Result<u64> {
    let Some((&p, rest)) = route.split_first() else {
        return oracle.query(stride);
    };
    let t = d / p;
    let powered = peel(oracle, stride * p, t, rest)? as i128;
    let (num, den) = if gcd(p, t) == 1 {
        let base = peel(oracle, stride, t, rest)? as i128;
        (powered - base, p as i128 - 1)
    } else {
        (powered, p as i128)
    };
    if num < 0 || num % den != 0 {
        return Err(Error::InconsistentOracle(format!(
            "m_{d} of the {stride}-th power would be {num}/{den}"
        )));
    }
    Ok((num / den) as u64)
}

/// `c_d(π) = Σ_{j ≥ 1, dj ≤ n} μ(j) · m_{dj}(π)`.
pub fn recover_c_d(oracle: &CycleCountOracle, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let n = oracle.degree() as u64;
    let mut total: i128 = 0;
    for j in (1..).take_while(|j| d * j <= n) {
        let mu = mobius(j);
        if mu != 0 {
            total += mu as i128 * recover_m_d(oracle, d * j)? as i128;
        }
    }
    if total < 0 {
        return Err(Error::InconsistentOracle(format!("c_{d} would be {total}")));
    }
    Ok(total as u64)
}

/// Full cycle type, checked against `Σ d·c_d = n`.
pub fn recover_cycle_type(oracle: &CycleCountOracle) -> Result<CycleType> {
    let n = oracle.degree();
    let mut counts = Vec::new();
    for d in 1..=n as u64 {
        let c = recover_c_d(oracle, d)?;
        if c > 0 {
            counts.push((d as usize, c as usize));
        }
    }
    let total: usize = counts.iter().map(|(d, c)| d * c).sum();
    if total != n {
        return Err(Error::InconsistentOracle(format!(
            "recovered cycles cover {total} points, not {n}"
        )));
    }
    CycleType::from_counts(counts)
}
