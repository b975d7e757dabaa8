//! Exact scalars over the rationals or a prime field GF(p).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Products of residues fit in `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Builds GF(p), rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidField(format!("GF({p}) needs a prime modulus below 2^31")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular { value: reduce_i64(v, p as u64), modulus: p },
        }
    }

    /// `num / den` in this field; fails when `den` vanishes here.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let n = reduce_big(num, p);
                let d = reduce_big(den, p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = pow_mod(d, p as u64 - 2, p as u64);
                Ok(Scalar::Modular { value: (n as u64 * inv % p as u64) as u32, modulus: p })
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p as u64,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(p as u64),
        }
    }

    /// All elements of a prime field in the order 0, 1, ..., p-1.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Modular { value: v, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(Field::Rationals);
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!("unknown field {s:?}; expected Q or GF(p)")))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_i64(v: i64, p: u64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

fn reduce_big(v: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.to_u32().expect("residue fits")
}

fn pow_mod(base: u32, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator.
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(r.recip()))
            }
            Scalar::Modular { value, modulus } => {
                if *value == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = pow_mod(*value, *modulus as u64 - 2, *modulus as u64);
                Ok(Scalar::Modular { value: inv as u32, modulus: *modulus })
            }
        }
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!("field tags checked"),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!("field tags checked"),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Integer numerator and positive denominator of a rational scalar.
    pub fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Rational(r) => Some((r.numer().clone(), r.denom().clone())),
            Scalar::Modular { .. } => None,
        }
    }

    /// Negative rationals; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            s => s.clone(),
        }
    }
}

macro_rules! checked_op {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                assert_eq!(self.field(), rhs.field(), "scalar arithmetic across fields");
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

checked_op!(Add, add, |a: &Scalar, b: &Scalar| a.add_unchecked(b));
checked_op!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_unchecked(&b.neg_ref()));
checked_op!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_unchecked(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                p == q && a == b
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rational(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Scalar::Modular { value, modulus } => {
                1u8.hash(state);
                value.hash(state);
                modulus.hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rationals by value, residues by representative in `0..p`. Only used for
/// deterministic tie-breaking.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                (p, a).cmp(&(q, b))
            }
            (Scalar::Rational(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Parses `"-3"`, `"2/5"` into the given field.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad scalar {text:?}")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad scalar {text:?}")))?;
    field.from_fraction(&n, &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Field::Rationals;
        let a = parse_scalar("4/6", q).unwrap();
        assert_eq!(a.to_string(), "2/3");
        let b = parse_scalar("-2/-4", q).unwrap();
        assert_eq!(b.to_string(), "1/2");
        assert_eq!((&a + &b).to_string(), "7/6");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(parse_scalar("1/2", f).unwrap(), f.from_i64(4));
        assert_eq!((-f.from_i64(1)).to_string(), "6");
        assert_eq!(f.from_i64(-8), f.from_i64(6));
    }

    #[test]
    fn rejects_bad_fields_and_mixed_arithmetic() {
        assert!(Field::prime(8).is_err());
        assert!(Field::prime((1 << 31) + 11).is_err());
        assert!("GF(2147483647)".parse::<Field>().is_ok());
        let a = Field::Rationals.one();
        let b = Field::Prime(5).one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
        assert!(Field::Prime(5).zero().inverse().is_err());
    }

    #[test]
    fn large_modulus_products_do_not_overflow() {
        let f = Field::prime(2147483647).unwrap();
        let a = f.from_i64(2147483646);
        assert!((&a * &a).is_one());
    }
}
