//! Exact arithmetic over a prime field GF(p) or the rationals.

mod io;
mod matrix;
mod poly;
mod smith;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::is_prime;
use crate::error::{Error, Result};

pub use io::{parse_matrix, render_matrix};
pub use matrix::FieldMatrix;
pub use poly::Poly;
pub use smith::InvariantFactorList;

/// A field of characteristic 0 (ℚ) or a prime `p` (GF(p)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

/// A canonical field element: a residue in `0..p`, or a rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (characteristic < (1 << 32) && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::BadCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::BadCharacteristic(0));
        }
        Self::new(p)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rat(BigRational::from_integer(v.clone())),
            p => {
                let r = (v % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Mod(r.to_u64().expect("residue fits"))
            }
        }
    }

    /// `num / den`; `None` when `den` vanishes in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match self.characteristic {
            0 if den.is_zero() => None,
            0 => Some(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            _ => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d)?;
                Some(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % self.characteristic as u128) as u64)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(0) => Scalar::Mod(0),
            Scalar::Mod(x) => Scalar::Mod(self.characteristic - x),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % self.characteristic as u128) as u64)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Mod(0) => None,
            Scalar::Mod(x) => {
                // Fermat: x^(p-2)
                let p = self.characteristic as u128;
                let (mut base, mut exp, mut acc) = (*x as u128, p - 2, 1u128);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Some(Scalar::Mod(acc as u64))
            }
            Scalar::Rat(x) if x.is_zero() => None,
            Scalar::Rat(x) => Some(Scalar::Rat(x.recip())),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("bad scalar {text:?}"),
        };
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a, b),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        self.from_fraction(&num, &den).ok_or_else(|| Error::Syntax {
            pos: 0,
            msg: format!("denominator of {text:?} vanishes in characteristic {}", self.characteristic),
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `0`, `GF(p)`, `GFp` or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Self::rationals());
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("GF"))
            .unwrap_or(t);
        let c: u64 = digits.parse().map_err(|_| Error::Syntax {
            pos: 0,
            msg: format!("unknown field {s:?}"),
        })?;
        Self::new(c)
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }

    /// Integer value when the scalar is integral (residues count as integers).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Mod(x) => Some(BigInt::from(*x)),
            Scalar::Rat(x) if x.is_integer() => Some(x.to_integer()),
            Scalar::Rat(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{x}"),
            Scalar::Rat(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Scalar::Rat(x) => {
                let (n, d) = (x.numer(), x.denom());
                if d.is_negative() {
                    write!(f, "{}/{}", -n, -d)
                } else {
                    write!(f, "{n}/{d}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks_primality() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(7).is_ok());
        assert_eq!(FieldSpec::new(4), Err(Error::BadCharacteristic(4)));
        assert_eq!(FieldSpec::new(1), Err(Error::BadCharacteristic(1)));
        assert!(FieldSpec::prime(0).is_err());
    }

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::new(7).unwrap();
        assert_eq!(f.from_i64(-1), Scalar::Mod(6));
        assert_eq!(f.mul(&Scalar::Mod(3), &Scalar::Mod(5)), Scalar::Mod(1));
        assert_eq!(f.inv(&Scalar::Mod(3)), Some(Scalar::Mod(5)));
        assert_eq!(f.inv(&Scalar::Mod(0)), None);
        assert_eq!(f.parse_scalar("1/2").unwrap(), Scalar::Mod(4));
        assert!(f.parse_scalar("1/7").is_err());
        for x in 1..7 {
            let s = Scalar::Mod(x);
            assert!(f.mul(&s, &f.inv(&s).unwrap()).is_one());
        }
    }

    #[test]
    fn rational_arithmetic() {
        let q = FieldSpec::rationals();
        let half = q.parse_scalar("2/4").unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(q.parse_scalar("3/-6").unwrap().to_string(), "-1/2");
        assert!(q.add(&half, &half).is_one());
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("x").is_err());
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::rationals());
        assert_eq!("GF(3)".parse::<FieldSpec>().unwrap().characteristic(), 3);
        assert_eq!("5".parse::<FieldSpec>().unwrap().to_string(), "GF(5)");
        assert!("GF(6)".parse::<FieldSpec>().is_err());
    }
}
