//! Exact scalars: arbitrary-precision rationals, or residues modulo an odd
//! prime. Nothing in this crate touches floating point.
//!
//! Every [`Scalar`] carries the field it lives in. The `try_*` methods
//! report a [`Error::FieldMismatch`] when two fields meet; the operator
//! impls (`&a + &b`, ...) panic instead and are meant for code that has
//! already checked its inputs share a field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An odd prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 3 && is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::InvalidField(format!("F{p}")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Deterministic Miller-Rabin; the witness set is exact for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Which exact field the scalars of a computation belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(OddPrime),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        OddPrime::new(p).map(FieldSpec::Prime)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p.get(),
        }
    }

    pub fn is_rationals(self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p.get());
                let value = v.mod_floor(&m).to_u64().expect("residue fits in u64");
                Scalar::Residue { value, modulus: p }
            }
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        self.from_bigint(num).try_div(&self.from_bigint(den))
    }

    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let err = || Error::ScalarParse(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (parse_int(n).ok_or_else(err)?, parse_unsigned(d).ok_or_else(err)?),
            None => (parse_int(text).ok_or_else(err)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(err());
        }
        self.ratio(&num, &den).map_err(|_| err())
    }
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

fn parse_int(s: &str) -> Option<BigInt> {
    let (neg, digits) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let v = parse_unsigned(digits)?;
    Some(if neg { -v } else { v })
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "F{}", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix('F')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        FieldSpec::prime(p).map_err(|_| Error::InvalidField(s.to_string()))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field element in canonical form: rationals in lowest terms with
/// positive denominator, residues in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: OddPrime },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn try_op(&self, op: ArithOp, rhs: &Scalar) -> Result<Scalar> {
        match op {
            ArithOp::Add => self.try_add(rhs),
            ArithOp::Sub => self.try_sub(rhs),
            ArithOp::Mul => self.try_mul(rhs),
            ArithOp::Div => self.try_div(rhs),
        }
    }

    fn check_same(&self, rhs: &Scalar) -> Result<()> {
        if self.spec() == rhs.spec() {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.spec(),
                right: rhs.spec(),
            })
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                let p = modulus.get();
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % p as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same(rhs)?;
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: mul_mod(*a, *b, modulus.get()),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same(rhs)?;
        self.try_mul(&rhs.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                let p = modulus.get();
                Scalar::Residue {
                    value: pow_mod(*value, p - 2, p),
                    modulus: *modulus,
                }
            }
        })
    }

    /// Canonical text form: `a` or `a/b`, lowest terms, no whitespace.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus.get() - value) % modulus.get(),
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Rising product `lo * (lo+1) * ... * hi`; empty (= 1) when `lo > hi`.
pub fn product_range(lo: i64, hi: i64) -> BigInt {
    (lo..=hi).fold(BigInt::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::Rationals.parse_scalar(s).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q("1/2").try_add(&q("1/3")).unwrap(), q("5/6"));
        assert_eq!(q("2/3").try_div(&q("2/3")).unwrap(), q("1"));
        assert_eq!(q("1/2") - q("1/3"), q("1/6"));
    }

    #[test]
    fn residue_arithmetic() {
        let f7 = FieldSpec::prime(7).unwrap();
        let p = f7.from_i64(3).try_mul(&f7.from_i64(5)).unwrap();
        assert_eq!(p, f7.from_i64(1));
        assert_eq!(f7.from_i64(3).inverse().unwrap(), f7.from_i64(5));
        assert_eq!(-f7.from_i64(0), f7.zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q("1").try_div(&q("0")), Err(Error::DivisionByZero));
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_i64(10).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f7 = FieldSpec::prime(7).unwrap();
        let err = q("1").try_add(&f7.one()).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { .. }));
    }

    #[test]
    fn parsing() {
        assert_eq!(q("6/4"), q("3/2"));
        assert_eq!(q("6/4").render(), "3/2");
        assert_eq!(q("-0").render(), "0");
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("10").unwrap().render(), "3");
        assert_eq!(f7.parse_scalar("1/2").unwrap().render(), "4");
        for bad in ["", "1/", "/2", "1/0", "a", "1.5", " 1", "1 /2", "--1", "1/-2"] {
            assert!(FieldSpec::Rationals.parse_scalar(bad).is_err(), "{bad:?}");
        }
        assert!(f7.parse_scalar("1/7").is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F7".parse::<FieldSpec>().unwrap().to_string(), "F7");
        for bad in ["F2", "F9", "F1", "F", "q", "F-3", "F 7", "R"] {
            assert!(bad.parse::<FieldSpec>().is_err(), "{bad}");
        }
        assert!(FieldSpec::prime(1_000_000_007).is_ok());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(product_range(3, 2), BigInt::one());
        assert_eq!(product_range(2, 4), BigInt::from(24));
    }
}
