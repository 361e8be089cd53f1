//! Coefficient rings.
//!
//! Every computation in the crate is generic over [`Ring`], a commutative ring
//! with identity and decidable equality. Two instances ship with the crate:
//! arbitrary-precision rationals ([`Q`]) and multivariate polynomials with
//! integer coefficients ([`MPoly`](super::MPoly)).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::PolyError;

/// Arbitrary-precision rational numbers.
pub type Q = BigRational;

/// Exact commutative ring with identity.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Nonnegativity in the ring's natural positive cone: `>= 0` for
    /// rationals, all coefficients `>= 0` for integer polynomials.
    fn is_nonnegative(&self) -> bool;

    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self, PolyError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Rings in which every nonzero element is a unit.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            self.unit_inverse()
        }
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }
}

/// Rings with a partial exact division: `a.div_exact(b)` is `Some(c)` iff
/// `a = b * c` for some (then unique) `c`.
pub trait ExactDiv: Ring {
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(value: &Value) -> Result<Self, PolyError> {
        match value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(<Q as Ring>::from_i64)
                .ok_or_else(|| PolyError::Parse(format!("non-integer JSON number {n}; use a \"p/q\" string"))),
            other => Err(PolyError::Parse(format!("expected a rational string, found {other}"))),
        }
    }
}

impl Field for Q {}

impl ExactDiv for Q {
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

/// Build the rational `num / den`.
///
/// Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(v: i64) -> Q {
    <Q as Ring>::from_i64(v)
}

/// Canonical rendering: `"p/q"` with `gcd(p, q) = 1` and `q > 0`, or `"p"`
/// when `q = 1`.
pub fn format_rational(v: &Q) -> String {
    let numer = v.numer();
    let denom = v.denom();
    debug_assert!(denom.is_positive());
    debug_assert!(numer.gcd(denom).is_one() || numer.is_zero());
    if denom.is_one() {
        numer.to_string()
    } else {
        format!("{numer}/{denom}")
    }
}

/// Parse `"p"` or `"p/q"` (any sign placement on `p`, nonzero `q`); the
/// result is reduced.
pub fn parse_rational(s: &str) -> Result<Q, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(PolyError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}
