//! Exact arithmetic in the quadratic field Q(√3).
//!
//! Every coordinate handled by this crate is a [`QSqrt3`], i.e. a number
//! `p + q√3` with arbitrary-precision rational `p` and `q`. Because √3 is
//! irrational the pair `(p, q)` is unique, so structural equality is value
//! equality and the sign of any value can be decided without approximation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid integer literal `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Builds a rational from a numerator and denominator given as decimal strings.
pub fn parse_rational(num: &str, den: &str) -> Result<Rational, ExactError> {
    let num = BigInt::from_str(num).map_err(|_| ExactError::InvalidInteger(num.to_owned()))?;
    let den = BigInt::from_str(den).map_err(|_| ExactError::InvalidInteger(den.to_owned()))?;
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// `1 / 2^m` as an exact rational.
pub fn dyadic(m: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << m)
}

fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// The number `p + q√3`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt3 {
    p: Rational,
    q: Rational,
}

impl QSqrt3 {
    pub fn new(p: Rational, q: Rational) -> Self {
        QSqrt3 { p, q }
    }

    pub fn from_rational(p: Rational) -> Self {
        QSqrt3 { p, q: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `a/b + (c/d)√3` from machine integers; panics on a zero denominator.
    pub fn from_ratios(a: i64, b: i64, c: i64, d: i64) -> Self {
        QSqrt3 { p: Rational::new(a.into(), b.into()), q: Rational::new(c.into(), d.into()) }
    }

    pub fn sqrt3() -> Self {
        QSqrt3 { p: Rational::zero(), q: Rational::one() }
    }

    /// Rational part.
    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// Coefficient of √3.
    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Algebraic conjugate `p - q√3`.
    pub fn conjugate(&self) -> Self {
        QSqrt3 { p: self.p.clone(), q: -&self.q }
    }

    /// Field norm `p² - 3q²`; zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - Rational::from_integer(3.into()) * &self.q * &self.q
    }

    /// Exact sign of `p + q√3` as `-1`, `0` or `+1`.
    ///
    /// When the components disagree in sign the one with the larger square
    /// wins: `p²` is compared against `3q²`.
    pub fn signum(&self) -> i8 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2 = Rational::from_integer(3.into()) * &self.q * &self.q;
        match p2.cmp(&q2) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            // p² = 3q² with q ≠ 0 would make √3 rational.
            Ordering::Equal => unreachable!("p^2 = 3 q^2 has no nonzero rational solution"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSqrt3 { p: &self.p * r, q: &self.q * r }
    }

    pub fn half(&self) -> Self {
        self.scale(&Rational::new(1.into(), 2.into()))
    }

    /// Multiplicative inverse through the conjugate.
    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QSqrt3 { p: &self.p / &n, q: -&self.q / &n })
    }

    pub fn checked_div(&self, rhs: &QSqrt3) -> Result<Self, ExactError> {
        if rhs.q.is_zero() {
            if rhs.p.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            return Ok(QSqrt3 { p: &self.p / &rhs.p, q: &self.q / &rhs.p });
        }
        Ok(self * &rhs.recip()?)
    }

    /// Display-only floating approximation.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * 3f64.sqrt()
    }

    /// The wire 4-tuple `(p.num, p.den, q.num, q.den)` as decimal strings.
    pub fn to_parts(&self) -> [String; 4] {
        [self.p.numer().to_string(), self.p.denom().to_string(), self.q.numer().to_string(), self.q.denom().to_string()]
    }

    pub fn from_parts(parts: [&str; 4]) -> Result<Self, ExactError> {
        Ok(QSqrt3 { p: parse_rational(parts[0], parts[1])?, q: parse_rational(parts[2], parts[3])? })
    }
}

impl From<Rational> for QSqrt3 {
    fn from(r: Rational) -> Self {
        QSqrt3::from_rational(r)
    }
}

impl From<i64> for QSqrt3 {
    fn from(n: i64) -> Self {
        QSqrt3::from_int(n)
    }
}

impl Ord for QSqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for QSqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Zero for QSqrt3 {
    fn zero() -> Self {
        QSqrt3::default()
    }

    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        QSqrt3::from_int(1)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        if self.p.is_zero() {
            return write!(f, "{}√3", self.q);
        }
        if self.q.is_negative() {
            write!(f, "{} - {}√3", self.p, -&self.q)
        } else {
            write!(f, "{} + {}√3", self.p, self.q)
        }
    }
}

impl fmt::Debug for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl<'a> Add<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3 { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl<'a> Sub<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3 { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl<'a> Mul<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: &QSqrt3) -> QSqrt3 {
        let three = Rational::from_integer(3.into());
        QSqrt3 { p: &self.p * &rhs.p + three * &self.q * &rhs.q, q: &self.p * &rhs.q + &self.q * &rhs.p }
    }
}

impl Neg for &QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3 { p: -&self.p, q: -&self.q }
    }
}

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3 { p: -self.p, q: -self.q }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $method(self, rhs: QSqrt3) -> QSqrt3 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $method(self, rhs: &QSqrt3) -> QSqrt3 {
                (&self).$method(rhs)
            }
        }
        impl $tr<QSqrt3> for &QSqrt3 {
            type Output = QSqrt3;
            fn $method(self, rhs: QSqrt3) -> QSqrt3 {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&QSqrt3> for QSqrt3 {
    fn add_assign(&mut self, rhs: &QSqrt3) {
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl SubAssign<&QSqrt3> for QSqrt3 {
    fn sub_assign(&mut self, rhs: &QSqrt3) {
        self.p -= &rhs.p;
        self.q -= &rhs.q;
    }
}

#[derive(Serialize, Deserialize)]
struct WireRational {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct WireQSqrt3 {
    p: WireRational,
    q: WireRational,
}

impl Serialize for QSqrt3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let [pn, pd, qn, qd] = self.to_parts();
        WireQSqrt3 { p: WireRational { num: pn, den: pd }, q: WireRational { num: qn, den: qd } }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSqrt3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireQSqrt3::deserialize(deserializer)?;
        QSqrt3::from_parts([&wire.p.num, &wire.p.den, &wire.q.num, &wire.q.den]).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QSqrt3 {
        QSqrt3::from_ratios(a, b, c, d)
    }

    #[test]
    fn add_examples() {
        assert_eq!(q(1, 1, 0, 1) + q(0, 1, 1, 1), q(1, 1, 1, 1));
        let x = q(-7, 3, 5, 11);
        assert_eq!(&x + &QSqrt3::zero(), x);
        assert_eq!(q(1, 2, 1, 3) + q(1, 2, 2, 3), q(1, 1, 1, 1));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(QSqrt3::sqrt3() * QSqrt3::sqrt3(), QSqrt3::from_int(3));
        let x = q(-7, 3, 5, 11);
        assert_eq!(&x * &QSqrt3::one(), x);
        assert_eq!(q(1, 1, 1, 1) * q(1, 1, -1, 1), QSqrt3::from_int(-2));
    }

    #[test]
    fn div_examples() {
        assert_eq!(QSqrt3::from_int(3).checked_div(&QSqrt3::sqrt3()).unwrap(), QSqrt3::sqrt3());
        let x = q(-7, 3, 5, 11);
        assert_eq!(x.checked_div(&x).unwrap(), QSqrt3::one());
        assert_eq!(QSqrt3::one().checked_div(&QSqrt3::sqrt3()).unwrap(), q(0, 1, 1, 3));
        assert_eq!(x.checked_div(&QSqrt3::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(QSqrt3::zero().signum(), 0);
        // 7 - 4√3 ≈ 0.0718
        assert_eq!(q(7, 1, -4, 1).signum(), 1);
        // -2 + √3 ≈ -0.268
        assert_eq!(q(-2, 1, 1, 1).signum(), -1);
        assert_eq!(q(0, 1, -1, 5).signum(), -1);
        assert_eq!(q(3, 1, 0, 1).signum(), 1);
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(QSqrt3::one().cmp(&QSqrt3::sqrt3()), Ordering::Less);
        let x = q(2, 9, -1, 4);
        assert_eq!(x.cmp(&x), Ordering::Equal);
        assert_eq!(QSqrt3::sqrt3().cmp(&QSqrt3::from_int(2)), Ordering::Less);
    }

    #[test]
    fn rational_parts_are_reduced() {
        let x = q(6, -4, 10, 20);
        assert_eq!(x.to_parts(), ["-3", "2", "1", "2"].map(String::from));
    }

    #[test]
    fn parse_rejects_bad_parts() {
        assert_eq!(QSqrt3::from_parts(["1", "0", "0", "1"]), Err(ExactError::ZeroDenominator));
        assert!(matches!(QSqrt3::from_parts(["1.5", "1", "0", "1"]), Err(ExactError::InvalidInteger(_))));
    }

    #[test]
    fn wire_format() {
        let x = q(-1, 2, 3, 4);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"p":{"num":"-1","den":"2"},"q":{"num":"3","den":"4"}}"#);
        let back: QSqrt3 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display() {
        assert_eq!(q(1, 2, -3, 4).to_string(), "1/2 - 3/4√3");
        assert_eq!(q(0, 1, 1, 1).to_string(), "1√3");
    }
}
