//! Exact scalars: rationals (the default, characteristic zero) and residues
//! modulo a prime below 2^31.
//!
//! A computation picks one [`Field`] up front and every scalar it creates
//! carries that field. Mixing fields is reported by the `try_*` operations and
//! is a panic for the operator impls, which internal code uses once inputs
//! have been validated.

mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(Field, Field),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("invalid scalar `{0}`")]
    Syntax(String),
    #[error("modulus {0} is not a prime below 2^31")]
    BadModulus(u64),
}

/// Field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Fp { value: n.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    /// Embeds a rational number; fails in prime mode when the denominator is
    /// divisible by the modulus.
    pub fn from_rational(self, q: &Rational) -> Result<Scalar, FieldError> {
        match self {
            Field::Rational => Ok(Scalar::Q(q.clone())),
            Field::Prime(p) => {
                let reduce = |n: BigInt| {
                    let r = n % BigInt::from(p);
                    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
                    r.to_u32().expect("residue fits")
                };
                let num = Scalar::Fp { value: reduce(q.numer()), modulus: p };
                let den = Scalar::Fp { value: reduce(q.denom()), modulus: p };
                Ok(num.try_mul(&den.try_inv()?)?)
            }
        }
    }

    /// Parses `[+-]int[/int]`.
    pub fn parse(self, text: &str) -> Result<Scalar, FieldError> {
        let q = parse_rational(text)?;
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    /// Accepts `rational` or `prime:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p.trim().parse().map_err(|_| FieldError::Syntax(s.to_string()))?;
            return Field::prime(p);
        }
        Err(FieldError::Syntax(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn parse_rational(text: &str) -> Result<Rational, FieldError> {
    let err = || FieldError::Syntax(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let valid_int = |s: &str, signed: bool| {
        let digits = if signed { s.strip_prefix(['+', '-']).unwrap_or(s) } else { s };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(err());
    }
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| err())?;
    let den: BigInt = match den {
        Some(d) if valid_int(d, false) => d.parse().map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// An exact field element in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// True for values printed with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a.add(b))),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Fp { value: ((*a as u64 + *b as u64) % *p as u64) as u32, modulus: *p })
            }
            _ => Err(FieldError::Mismatch(self.field(), other.field())),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a.mul(b))),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Fp { value: ((*a as u64 * *b as u64) % *p as u64) as u32, modulus: *p })
            }
            _ => Err(FieldError::Mismatch(self.field(), other.field())),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Q(q) => q.inv().map(Scalar::Q).ok_or(FieldError::DivisionByZero),
            Scalar::Fp { value: 0, .. } => Err(FieldError::DivisionByZero),
            Scalar::Fp { value, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let (mut base, mut exp, mut acc) = (*value as u64, p - 2, 1u64);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Ok(Scalar::Fp { value: acc as u32, modulus: *modulus })
            }
        }
    }

    /// Inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { value, modulus } => write!(f, "{value} (mod {modulus})"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_add(&-rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(q.neg()),
            Scalar::Fp { value, modulus } => {
                Scalar::Fp { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
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
