//! Exact rational scalars.
//!
//! Invariants: denominator > 0, gcd(numerator, denominator) = 1, arithmetic is
//! exact (no floats anywhere). Serialized form is `"p/q"`, with `/q` omitted
//! when the denominator is 1.
//!
//! Internally a value is either a machine-word rational (the common case by a
//! wide margin — structure constants and binomial coefficients stay small) or
//! a boxed arbitrary-precision rational. Every operation that could overflow
//! the word representation promotes; results that fit demote back, so the
//! representation of a given value is canonical and comparisons are cheap.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Repr {
    /// num/den with den > 0 and gcd = 1.
    Small(i64, i64),
    Big(Box<BigRational>),
}

#[derive(Clone, Debug)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n, 1))
    }

    /// Exact p/q. Panics if q = 0.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::norm_small(p as i128, q as i128)
    }

    fn from_i128_ratio(p: i128, q: i128) -> Self {
        assert!(q != 0, "zero denominator");
        Self::norm_small(p, q)
    }

    /// Normalize a rational given as i128 parts; demotes to Small when it fits.
    fn norm_small(mut p: i128, mut q: i128) -> Self {
        if p == 0 {
            return Scalar::zero();
        }
        if q < 0 {
            p = -p;
            q = -q;
        }
        let g = gcd_i128(p.unsigned_abs(), q.unsigned_abs()) as i128;
        p /= g;
        q /= g;
        if let (Ok(ps), Ok(qs)) = (i64::try_from(p), i64::try_from(q)) {
            Scalar(Repr::Small(ps, qs))
        } else {
            Scalar(Repr::Big(Box::new(BigRational::new(
                BigInt::from(p),
                BigInt::from(q),
            ))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already normalized sign and gcd.
        if let (Some(p), Some(q)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Scalar(Repr::Small(p, q))
        } else {
            Scalar(Repr::Big(Box::new(r)))
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(p, q) => BigRational::new(BigInt::from(*p), BigInt::from(*q)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(p, _) => *p == 0,
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, q) => *q == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Multiplicative inverse. Panics on zero (callers guard).
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        match &self.0 {
            Repr::Small(p, q) => Self::norm_small(*q as i128, *p as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    /// The value as a machine-word (numerator, denominator) pair with
    /// denominator > 0, or `None` when it needs arbitrary precision.
    pub fn as_i64_ratio(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(p, q) => Some((*p, *q)),
            Repr::Big(_) => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed rational {s:?} (expected \"p/q\")"));
        let (ns, ds) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n = BigInt::from_str(ns.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(ds.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

fn gcd_i128(a: u128, b: u128) -> u128 {
    let mut a = a;
    let mut b = b;
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            // Representations are canonical (Big never holds a word-sized
            // value), but compare exactly anyway to stay robust.
            _ => self.to_big() == other.to_big(),
        }
    }
}
impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            // a/b + c/d over i128 cannot overflow (i64 products fit in i128).
            let p = (*a as i128) * (*d as i128) + (*c as i128) * (*b as i128);
            let q = (*b as i128) * (*d as i128);
            return Scalar::norm_small(p, q);
        }
        Scalar::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let p = (*a as i128) * (*d as i128) - (*c as i128) * (*b as i128);
            let q = (*b as i128) * (*d as i128);
            return Scalar::norm_small(p, q);
        }
        Scalar::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let p = (*a as i128) * (*c as i128);
            let q = (*b as i128) * (*d as i128);
            return Scalar::norm_small(p, q);
        }
        Scalar::from_big(self.to_big() * rhs.to_big())
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let p = (*a as i128) * (*d as i128);
            let q = (*b as i128) * (*c as i128);
            return Scalar::norm_small(p, q);
        }
        Scalar::from_big(self.to_big() / rhs.to_big())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(p, q) => Scalar::norm_small(-(*p as i128), *q as i128),
            Repr::Big(b) => Scalar::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { (&self).$f(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(p, 1) => write!(f, "{p}"),
            Repr::Small(p, q) => write!(f, "{p}/{q}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Generalized binomial coefficient C(t, k) for any integer t and k >= 0.
/// Always an integer; computed by the stepwise-exact product so the
/// intermediate values stay integral.
pub fn binomial(t: i64, k: u32) -> Scalar {
    let mut c: i128 = 1;
    let mut big: Option<BigInt> = None;
    for s in 0..k as i128 {
        let factor = t as i128 - s;
        if let Some(b) = &mut big {
            *b = &*b * BigInt::from(factor) / BigInt::from(s + 1);
            continue;
        }
        match c.checked_mul(factor) {
            Some(v) => c = v / (s + 1),
            None => {
                let b = BigInt::from(c) * BigInt::from(factor) / BigInt::from(s + 1);
                big = Some(b);
            }
        }
    }
    match big {
        Some(b) => Scalar::from_big(BigRational::from_integer(b)),
        None => Scalar::from_i128_ratio(c, 1),
    }
}

/// C(t, k) as above but accepting a possibly-negative k: zero for k < 0.
pub fn binomial_i(t: i64, k: i64) -> Scalar {
    if k < 0 {
        Scalar::zero()
    } else {
        binomial(t, k as u32)
    }
}

/// (-1)^n as a scalar.
pub fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    #[test]
    fn normalization_and_eq() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!(s(-2, -4), s(1, 2));
        assert_eq!(s(2, -4), s(-1, 2));
        assert_eq!(s(0, 7), Scalar::zero());
        assert!(s(3, 3).is_one());
    }

    #[test]
    fn field_ops() {
        assert_eq!(&s(1, 2) + &s(1, 3), s(5, 6));
        assert_eq!(&s(1, 2) - &s(1, 3), s(1, 6));
        assert_eq!(&s(2, 3) * &s(9, 4), s(3, 2));
        assert_eq!(&s(2, 3) / &s(4, 3), s(1, 2));
        assert_eq!(-&s(2, 3), s(-2, 3));
        assert_eq!(s(5, 7).recip(), s(7, 5));
        assert_eq!(s(-5, 7).recip(), s(-7, 5));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big; // exceeds i64
        assert_eq!(format!("{sq}"), format!("{}", {
            let b = BigInt::from(i64::MAX);
            &b * &b
        }));
        // dividing back demotes to the word representation
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_, _)));
    }

    #[test]
    fn parse_display_roundtrip() {
        for txt in ["0", "7", "-7", "3/4", "-3/4", "123456789012345678901/7"] {
            let v = Scalar::parse(txt).unwrap();
            assert_eq!(format!("{v}"), txt.trim());
        }
        assert_eq!(Scalar::parse("6/4").unwrap(), s(3, 2));
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("a/b").is_err());
    }

    #[test]
    fn serde_as_string() {
        let v = s(-3, 4);
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, "\"-3/4\"");
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(4, 2), Scalar::from_int(6));
        assert_eq!(binomial(4, 0), Scalar::one());
        assert_eq!(binomial(4, 5), Scalar::zero());
        // C(-n, k) = (-1)^k C(n+k-1, k)
        assert_eq!(binomial(-1, 3), Scalar::from_int(-1));
        assert_eq!(binomial(-2, 3), Scalar::from_int(-4));
        assert_eq!(binomial(-3, 2), Scalar::from_int(6));
        // big values stay exact: C(-40, 40) = C(79, 40), checked against a
        // direct factorial-ratio computation
        let fact = |n: u32| -> BigInt {
            let mut f = BigInt::from(1);
            for i in 2..=n {
                f *= i;
            }
            f
        };
        let expect = fact(79) / (fact(40) * fact(39));
        assert_eq!(format!("{}", binomial(-40, 40)), format!("{expect}"));
    }
}
