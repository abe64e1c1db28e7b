//! Arbitrary-precision rational scalars.
//!
//! `Rat` wraps `num_rational::BigRational`: always reduced, denominator
//! positive, no rounding anywhere. JSON form is a string `"p/q"` (or `"p"`
//! when the denominator is 1); bare JSON integers are accepted on input.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{Error as DeError, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// p/q with q != 0; the result is reduced and the denominator positive.
    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.clone().recip())
    }

    /// Exact square root, if the value is a perfect square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.0.is_negative() {
            return None;
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Some(Rat(BigRational::new(ns, ds)))
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal: {0:?}")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let p = BigInt::from_str(num).map_err(|_| ParseRatError(s.to_string()))?;
        let q = match den {
            Some(d) => BigInt::from_str(d).map_err(|_| ParseRatError(s.to_string()))?,
            None => BigInt::one(),
        };
        if q.is_zero() {
            return Err(ParseRatError(s.to_string()));
        }
        Ok(Rat(BigRational::new(p, q)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational as \"p/q\", \"p\", or a bare integer")
    }

    fn visit_str<E: DeError>(self, v: &str) -> Result<Rat, E> {
        Rat::from_str(v).map_err(E::custom)
    }

    fn visit_i64<E: DeError>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat::from_int(v))
    }

    fn visit_u64<E: DeError>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(BigRational::from_integer(BigInt::from(v))))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RatVisitor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }

        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }

        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = Rat::from_frac(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r, Rat::from_frac(-2, 3));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            assert_eq!(Rat::from_str(s).unwrap().to_string(), s);
        }
        assert!(Rat::from_str("1/0").is_err());
        assert!(Rat::from_str("x").is_err());
    }

    #[test]
    fn json_accepts_strings_and_bare_integers() {
        let r: Rat = serde_json::from_str("\"5/3\"").unwrap();
        assert_eq!(r, Rat::from_frac(5, 3));
        let r: Rat = serde_json::from_str("-4").unwrap();
        assert_eq!(r, Rat::from_int(-4));
        assert_eq!(
            serde_json::to_string(&Rat::from_frac(1, 2)).unwrap(),
            "\"1/2\""
        );
        assert_eq!(serde_json::to_string(&Rat::from_int(3)).unwrap(), "\"3\"");
    }

    #[test]
    fn exact_square_root() {
        assert_eq!(
            Rat::from_frac(9, 4).sqrt_exact(),
            Some(Rat::from_frac(3, 2))
        );
        assert_eq!(Rat::from_int(2).sqrt_exact(), None);
        assert_eq!(Rat::from_int(-1).sqrt_exact(), None);
    }
}
