//! Exact scalars over the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Ground field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// Residues modulo a prime. Construct through [`FieldSpec::prime`].
    PrimeField(u64),
}

impl FieldSpec {
    /// GF(p); rejects composite or trivial moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Modular { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Modular {
                value: reduce_i128(v as i128, *p),
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => Scalar::Modular {
                value: reduce_bigint(v, *p),
                p: *p,
            },
        }
    }

    /// Parses a scalar in textual form: `a/b` or `a` over Q, a decimal
    /// residue (possibly negative, reduced mod p) over GF(p).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => parse_rational(s).map(Scalar::Rational),
            FieldSpec::PrimeField(p) => {
                let v = BigInt::from_str(s)
                    .map_err(|_| Error::Parse(format!("invalid residue '{s}'")))?;
                Ok(Scalar::Modular {
                    value: reduce_bigint(&v, *p),
                    p: *p,
                })
            }
        }
    }

    /// True iff the field is the rationals or p exceeds `bound`.
    pub fn char_guard(&self, bound: u64) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::PrimeField(p) => *p > bound,
        }
    }

    /// `Ok(())` when [`char_guard`](Self::char_guard) holds.
    pub fn require_char_above(&self, bound: u64) -> Result<()> {
        if self.char_guard(bound) {
            Ok(())
        } else {
            Err(Error::CharacteristicTooSmall {
                characteristic: self.characteristic(),
                bound,
            })
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid modulus in '{s}'")))?;
                FieldSpec::prime(p)
            }
            None => Err(Error::Parse(format!(
                "unknown field '{s}', expected 'q' or 'fp:<p>'"
            ))),
        }
    }
}

impl serde::Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field element tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with a positive denominator.
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn rational(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(numer.into(), denom.into())))
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

    /// Lowest terms with positive denominator; residues reduced.
    pub fn normalize(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(BigRational::new(r.numer().clone(), r.denom().clone())),
            Scalar::Modular { value, p } => Scalar::Modular { value: value % p, p: *p },
        }
    }

    pub fn apply(&self, other: &Scalar, op: FieldOp) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(match op {
                FieldOp::Add => a + b,
                FieldOp::Sub => a - b,
                FieldOp::Mul => a * b,
                FieldOp::Div => {
                    if b.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    a / b
                }
            })),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                let p = *p;
                let value = match op {
                    FieldOp::Add => add_mod(*a, *b, p),
                    FieldOp::Sub => sub_mod(*a, *b, p),
                    FieldOp::Mul => mul_mod(*a, *b, p),
                    FieldOp::Div => mul_mod(*a, inv_mod(*b, p).ok_or(Error::DivisionByZero)?, p),
                };
                Ok(Scalar::Modular { value, p })
            }
            _ => Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            )),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.apply(other, FieldOp::Add)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.apply(other, FieldOp::Sub)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.apply(other, FieldOp::Mul)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.apply(other, FieldOp::Div)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, p } => Scalar::Modular {
                value: sub_mod(0, *value, *p),
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Modular { value, p } => inv_mod(*value, *p)
                .map(|value| Scalar::Modular { value, p: *p })
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Converts into `field`: rationals map into GF(p) when the denominator
    /// is invertible; residues only stay in their own field.
    pub fn coerce(&self, field: FieldSpec) -> Result<Scalar> {
        match (self, field) {
            (s, f) if s.field() == f => Ok(s.clone()),
            (Scalar::Rational(r), FieldSpec::PrimeField(p)) => {
                let n = reduce_bigint(r.numer(), p);
                let d = reduce_bigint(r.denom(), p);
                let d = inv_mod(d, p).ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Modular { value: mul_mod(n, d, p), p })
            }
            (s, f) => Err(Error::FieldMismatch(s.field().to_string(), f.to_string())),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    /// Small integer value, if the scalar is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => i64::try_from(*value).ok(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub(crate) fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - (b % p) as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse by the extended Euclidean algorithm; `None` for zero.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    // old_r = gcd(a, p) = 1 for prime p
    debug_assert_eq!(old_r, 1);
    Some(old_s.rem_euclid(p as i128) as u64)
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
