use std::fmt;

use super::{FieldSpec, InvariantFactorList, Poly, Scalar};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Dense row-major matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl FieldMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Entries must already be canonical for `field`.
    pub fn from_entries(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let canonical = entries.iter().all(|e| match (e, field.characteristic()) {
            (Scalar::Mod(x), p) => p != 0 && *x < p,
            (Scalar::Rat(_), p) => p == 0,
        });
        if !canonical {
            return Err(Error::Shape(format!("entries are not canonical elements of {field}")));
        }
        Ok(FieldMatrix { field, rows, cols, entries })
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Self::from_entries(field, rows.len(), cols, entries)
    }

    /// Entry 1 at `(π(j), j)`, so that `P_{πσ} = P_π P_σ`.
    pub fn permutation(p: &Permutation, field: FieldSpec) -> Self {
        let n = p.degree();
        let mut m = Self::zeros(field, n, n);
        for j in 0..n {
            m.entries[p.apply(j) * n + j] = field.one();
        }
        m
    }

    /// Companion matrix of a monic polynomial of degree at least 1.
    pub fn companion(poly: &Poly) -> Result<Self> {
        let f = poly.field();
        let d = match poly.degree() {
            Some(d) if d >= 1 && poly.is_monic() => d,
            _ => return Err(Error::Precondition("companion needs a monic polynomial of degree >= 1".into())),
        };
        let mut m = Self::zeros(f, d, d);
        for i in 1..d {
            m.entries[i * d + i - 1] = f.one();
        }
        for i in 0..d {
            m.entries[i * d + d - 1] = f.neg(&poly.coeffs()[i]);
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    fn check_same_field(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.characteristic(),
                right: other.field.characteristic(),
            });
        }
        Ok(())
    }

    fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Shape(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        Ok(self.rows)
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("subtracting matrices of different shape".into()));
        }
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Ok(FieldMatrix { entries, ..self.clone() })
    }

    /// `A^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Result<FieldMatrix> {
        let n = self.require_square()?;
        let mut acc = Self::identity(self.field, n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Scalar> {
        let n = self.require_square()?;
        let f = self.field;
        Ok((0..n).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i))))
    }

    /// Row echelon form by exact elimination; returns the rank.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.swap(rank * cols + j, pivot * cols + j);
            }
            let inv = f.inv(&m[rank * cols + col]).unwrap();
            for r in rank + 1..rows {
                let factor = f.mul(&m[r * cols + col], &inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..cols {
                    let v = f.mul(&factor, &m[rank * cols + j]);
                    m[r * cols + j] = f.sub(&m[r * cols + j], &v);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        let n = self.require_square().ok()?;
        let f = self.field;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(f, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
                inv.swap(col * n + j, pivot * n + j);
            }
            let p = f.inv(&a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(&a[col * n + j], &p);
                inv[col * n + j] = f.mul(&inv[col * n + j], &p);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let (ta, ti) = (f.mul(&factor, &a[col * n + j]), f.mul(&factor, &inv[col * n + j]));
                    a[r * n + j] = f.sub(&a[r * n + j], &ta);
                    inv[r * n + j] = f.sub(&inv[r * n + j], &ti);
                }
            }
        }
        Some(FieldMatrix { entries: inv, ..self.clone() })
    }

    /// Dimension of the fixed space `{v : Av = v}`, i.e. `n - rank(A - I)`.
    pub fn fixed_space_dim(&self) -> Result<usize> {
        let n = self.require_square()?;
        Ok(n - self.sub(&Self::identity(self.field, n))?.rank())
    }

    /// The permutation this matrix represents, if it is a 0/1 matrix with
    /// exactly one 1 in each row and column.
    pub fn as_permutation(&self) -> Result<Permutation> {
        let n = self.require_square().map_err(|e| Error::NotPermutationMatrix(e.to_string()))?;
        let mut images = vec![usize::MAX; n];
        for j in 0..n {
            for i in 0..n {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if !e.is_one() {
                    return Err(Error::NotPermutationMatrix(format!(
                        "entry ({}, {}) is {e}",
                        i + 1,
                        j + 1
                    )));
                }
                if images[j] != usize::MAX {
                    return Err(Error::NotPermutationMatrix(format!(
                        "column {} has more than one nonzero entry",
                        j + 1
                    )));
                }
                images[j] = i;
            }
            if images[j] == usize::MAX {
                return Err(Error::NotPermutationMatrix(format!("column {} is zero", j + 1)));
            }
        }
        Permutation::from_images(images).map_err(|_| {
            Error::NotPermutationMatrix("some row has more than one nonzero entry".into())
        })
    }

    /// `det(xI - A)`, the product of the invariant factors.
    pub fn char_poly(&self) -> Result<Poly> {
        let factors = self.invariant_factors()?;
        Ok(factors
            .factors()
            .iter()
            .fold(Poly::one(self.field), |acc, f| acc.mul(f)))
    }

    pub fn invariant_factors(&self) -> Result<InvariantFactorList> {
        self.require_square()?;
        Ok(InvariantFactorList::of(self))
    }

    /// Similarity over the field, decided by comparing invariant factors.
    pub fn similar(&self, other: &FieldMatrix) -> Result<bool> {
        self.check_same_field(other)?;
        self.require_square()?;
        other.require_square()?;
        if self.rows != other.rows {
            return Err(Error::Shape(format!("sizes {} and {} differ", self.rows, other.rows)));
        }
        Ok(self.invariant_factors()? == other.invariant_factors()?)
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render_matrix(self))
    }
}
