use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;

/// Exact element `a + b·√3` of the real quadratic field Q(√3).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `c·√3`
    pub fn sqrt3_times(c: Rational) -> Self {
        QuadExt {
            a: Rational::zero(),
            b: c,
        }
    }

    pub fn sqrt3() -> Self {
        Self::sqrt3_times(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a - b·√3`
    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² - 3b²`, rational and zero only at zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from(3) * &self.b * &self.b
    }

    /// Exact sign of `a + b√3`.
    pub fn sign(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: the larger of a² and 3b² wins.
        match (&self.a * &self.a).cmp(&(Rational::from(3) * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero");
        QuadExt {
            a: &self.a / &n,
            b: -(&self.b / &n),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadExt {
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 3f64.sqrt()
    }
}

/// Exact sign of `a + b√3` for rational `a`, `b`.
pub fn quad_sign(q: &QuadExt) -> i32 {
    q.sign()
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::rational(Rational::from(n))
    }
}

impl<'b> Add<&'b QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &'b QuadExt) -> QuadExt {
        QuadExt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'b> Sub<&'b QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &'b QuadExt) -> QuadExt {
        QuadExt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'b> Mul<&'b QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &'b QuadExt) -> QuadExt {
        QuadExt {
            a: &self.a * &rhs.a + Rational::from(3) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'b> Div<&'b QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &'b QuadExt) -> QuadExt {
        self * &rhs.recip()
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt3", self.b),
            (false, false) => write!(f, "{} + {}*sqrt3", self.a, self.b),
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
