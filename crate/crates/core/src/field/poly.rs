use std::fmt;

use super::{FieldSpec, Scalar};

/// Dense univariate polynomial, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    /// `x - c`
    pub fn linear(field: FieldSpec, c: &Scalar) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                f.add(a, b)
            })
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|a| f.neg(a)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let q = f.mul(rem.last().unwrap(), &lc_inv);
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&q, b));
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }
}

impl fmt::Display for Poly {
    /// Dense ascending coefficients separated by spaces; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let q = FieldSpec::rationals();
        let a = Poly::from_i64(q, &[-1, 0, 0, 1]);
        let b = Poly::from_i64(q, &[-1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert!(rem.is_zero());
        assert_eq!(quot, Poly::from_i64(q, &[1, 1, 1]));
        let c = Poly::from_i64(q, &[1, 0, 2]);
        let (quot, rem) = a.div_rem(&c);
        assert_eq!(quot.mul(&c).add(&rem), a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn char_two_identity() {
        let f = FieldSpec::new(2).unwrap();
        let x1 = Poly::from_i64(f, &[1, 1]);
        let fourth = x1.mul(&x1).mul(&x1).mul(&x1);
        assert_eq!(fourth, Poly::from_i64(f, &[1, 0, 0, 0, 1]));
        assert_eq!(fourth.to_string(), "1 0 0 0 1");
    }

    #[test]
    fn monic_and_eval() {
        let f = FieldSpec::new(5).unwrap();
        let p = Poly::from_i64(f, &[1, 2, 3]);
        assert!(p.monic().is_monic());
        assert_eq!(p.eval(&f.from_i64(1)), f.from_i64(6));
        assert_eq!(Poly::zero(f).degree(), None);
        assert_eq!(Poly::from_i64(f, &[0, 0, 5]).degree(), None);
    }
}
