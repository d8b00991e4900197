//! Invariant factors of a square matrix, read off the Smith normal form of
//! its characteristic matrix `xI - A` over `F[x]`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{FieldMatrix, FieldSpec, Poly};

/// Monic non-unit invariant factors `f_1 | f_2 | ... | f_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantFactorList {
    field: FieldSpec,
    factors: Vec<Poly>,
}

impl InvariantFactorList {
    pub(super) fn of(a: &FieldMatrix) -> Self {
        let field = a.field();
        let n = a.rows();
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let entry = field.neg(a.get(i, j));
                        if i == j {
                            Poly::new(field, vec![entry, field.one()])
                        } else {
                            Poly::constant(field, entry)
                        }
                    })
                    .collect()
            })
            .collect();
        let diagonal = diagonalize(&mut m);
        let factors = diagonal
            .into_iter()
            .filter(|p| p.degree().is_some_and(|d| d > 0))
            .collect();
        InvariantFactorList { field, factors }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Smith diagonalization in place; returns the monic diagonal.
///
/// Pivot: a nonzero entry of least degree in the trailing block, ties broken
/// row-major. Rows and columns are cleared by Euclidean division; a leftover
/// remainder has smaller degree and becomes the next pivot.
fn diagonalize(m: &mut [Vec<Poly>]) -> Vec<Poly> {
    let n = m.len();
    let mut diagonal = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| (m[i][j].degree(), i, j));
            let Some((pi, pj)) = pivot else {
                // trailing block vanished
                diagonal.extend((t..n).map(|_| Poly::zero(m[0][0].field())));
                return diagonal;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].div_rem(&m[t][t]);
                for j in t..n {
                    let v = q.mul(&m[t][j]);
                    m[i][j] = m[i][j].sub(&v);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].div_rem(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = q.mul(&row[t]);
                    row[j] = row[j].sub(&v);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }

            // the pivot must divide the whole trailing block
            let offender = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[t][t].divides(&m[i][j]));
            match offender {
                Some((i, _)) => {
                    for j in t..n {
                        let v = m[i][j].clone();
                        m[t][j] = m[t][j].add(&v);
                    }
                }
                None => break,
            }
        }
        diagonal.push(m[t][t].monic());
    }
    diagonal
}

impl fmt::Display for InvariantFactorList {
    /// One factor per `;`-separated group, coefficients ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl Serialize for InvariantFactorList {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.factors.iter().map(|p| p.to_string()))
    }
}
