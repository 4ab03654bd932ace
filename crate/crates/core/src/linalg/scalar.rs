//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Default prime for modular computations.
pub const DEFAULT_PRIME: u32 = 101;

/// The field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn zero(self) -> Scalar {
        Scalar::from_i64(0, self)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_i64(1, self)
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Residue class modulo a prime `p < 2^31`, stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        Fp { value: value.rem_euclid(modulus as i64) as u32, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn inverse(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        Some(Fp { value: inv_mod(self.value, self.modulus), modulus: self.modulus })
    }
}

/// Modular inverse of a nonzero `a` modulo prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut base = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    a = acc as u32;
    a
}

/// Trial-division primality test; adequate for moduli below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(Fp),
}

impl Scalar {
    pub fn from_i64(v: i64, field: Field) -> Self {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular(Fp::new(v, p)),
        }
    }

    pub fn from_bigint(v: BigInt, field: Field) -> Self {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v)),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Modular(Fp::new(r.to_i64().unwrap(), p))
            }
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular(x) => x.value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular(_) => None,
        }
    }

    /// Integer value, when the scalar is a rational with denominator one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    /// Map into `GF(p)`. Fails when a rational denominator is divisible by `p`.
    pub fn reduce(&self, p: u32) -> Result<Scalar, LinalgError> {
        match self {
            Scalar::Modular(x) if x.modulus == p => Ok(self.clone()),
            Scalar::Modular(x) => Err(LinalgError::FieldMismatch(Field::Prime(x.modulus), Field::Prime(p))),
            Scalar::Rational(q) => reduce_rational(q, p).map(|v| Scalar::Modular(Fp { value: v, modulus: p })),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) if !q.is_zero() => Some(Scalar::Rational(q.recip())),
            Scalar::Modular(x) => x.inverse().map(Scalar::Modular),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => {
                let p = a.modulus as u64;
                Ok(Scalar::Modular(Fp { value: ((a.value as u64 + b.value as u64) % p) as u32, modulus: a.modulus }))
            }
            _ => Err(LinalgError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => {
                let p = a.modulus as u64;
                Ok(Scalar::Modular(Fp { value: ((a.value as u64 * b.value as u64) % p) as u32, modulus: a.modulus }))
            }
            _ => Err(LinalgError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        let inv = other.inverse().expect("division by zero scalar");
        self * &inv
    }

    pub fn scale_i64(&self, k: i64) -> Scalar {
        self * &Scalar::from_i64(k, self.field())
    }
}

pub(crate) fn reduce_rational(q: &BigRational, p: u32) -> Result<u32, LinalgError> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u32().unwrap();
    if den == 0 {
        return Err(LinalgError::DenominatorDivisibleByPrime(p));
    }
    let num = q.numer().mod_floor(&pb).to_u64().unwrap();
    Ok((num * inv_mod(den, p) as u64 % p as u64) as u32)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("mixed scalar fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_add(&-rhs).expect("mixed scalar fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("mixed scalar fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular(x) => {
                Scalar::Modular(Fp { value: if x.value == 0 { 0 } else { x.modulus - x.value }, modulus: x.modulus })
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Modular(x) => write!(f, "{}", x.value),
        }
    }
}

/// Parses `"7"`, `"-3"` or `"p/q"` as a rational.
impl FromStr for Scalar {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || LinalgError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar::Rational(BigRational::from_integer(n)))
            }
        }
    }
}
