use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always stored reduced with a positive denominator, so structural equality
/// is numeric equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Self::new(1, 2)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &Rational::from_integer(self.floor())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and `-p/q`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::try_new(n, d)
            }
            None => Ok(Rational::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

// Integers that fit in an i64 are written as JSON numbers, larger ones as
// decimal strings so no JSON reader silently rounds them.
fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn int_from_json<E: de::Error>(v: &serde_json::Value) -> Result<BigInt, E> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| E::custom(format!("non-integer number {n}"))),
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|_| E::custom(format!("bad integer string {s:?}"))),
        other => Err(E::custom(format!("expected integer, got {other}"))),
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &int_to_json(self.numer()))?;
        st.serialize_field("den", &int_to_json(self.denom()))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: serde_json::Value,
            den: serde_json::Value,
        }
        let raw = Raw::deserialize(deserializer)?;
        let num = int_from_json::<D::Error>(&raw.num)?;
        let den = int_from_json::<D::Error>(&raw.den)?;
        if den <= BigInt::zero() {
            return Err(de::Error::custom("denominator must be positive"));
        }
        let r = Rational::new(num.clone(), den.clone());
        if r.numer() != &num || r.denom() != &den {
            return Err(de::Error::custom("rational is not in lowest terms"));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_reduced_with_positive_denominator() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r, Rational::new(-3, 2));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(Rational::new(7, 3).floor(), BigInt::from(2));
        assert_eq!(Rational::new(-7, 3).floor(), BigInt::from(-3));
        assert_eq!(Rational::new(7, 3).ceil(), BigInt::from(3));
        assert_eq!(Rational::new(-7, 3).ceil(), BigInt::from(-2));
        assert_eq!(Rational::from_integer(4).ceil(), BigInt::from(4));
        assert_eq!(Rational::new(-1, 3).fract(), Rational::new(2, 3));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Rational>().unwrap(), Rational::half());
        assert_eq!("-5".parse::<Rational>().unwrap(), Rational::from(-5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(Rational::new(2, 5).to_string(), "2/5");
        assert_eq!(Rational::from(5).to_string(), "5");
    }

    #[test]
    fn json_pair_roundtrip() {
        let r = Rational::new(-2, 5);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":-2,"den":5}"#);
        assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), r);

        let big = Rational::new(BigInt::from(10).pow(30) + 1, 3);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), big);
    }

    #[test]
    fn json_rejects_unreduced() {
        assert!(serde_json::from_str::<Rational>(r#"{"num":2,"den":4}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":0}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":-2}"#).is_err());
    }
}
