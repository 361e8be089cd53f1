use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use super::ring::{Field, Ring};
use super::PolyError;

/// Dense polynomial `c_0 + c_1 t + ... + c_d t^d` with `c_d != 0`.
///
/// The zero polynomial stores no coefficients and has degree `None`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> Default for Poly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> Self {
        Self::monomial(R::one(), k)
    }

    /// `(1 + t)^k`.
    pub fn one_plus_t_pow(k: usize) -> Self {
        let base = Self::from_i64s(&[1, 1]);
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    /// `1 + t + ... + t^(k-1)`, i.e. `[k]_t`; zero for `k = 0`.
    pub fn t_integer(k: usize) -> Self {
        Self::new(vec![R::one(); k])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(Ring::is_nonnegative)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `t^k` if it divides exactly.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.get(k..).unwrap_or(&[]).to_vec()))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&R::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }

    fn check_degree(&self, n: usize) -> Result<(), PolyError> {
        match self.degree() {
            Some(d) if d > n => Err(PolyError::DegreeExceeds { degree: d, bound: n }),
            _ => Ok(()),
        }
    }

    /// `I_n(f) = t^n f(1/t)`.
    pub fn reciprocal(&self, n: usize) -> Result<Self, PolyError> {
        self.check_degree(n)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::new((0..=n).map(|k| self.coeff(n - k)).collect()))
    }

    /// `S_n(f) = (I_n(f) - f) / (t - 1)`.
    pub fn s_op(&self, n: usize) -> Result<Self, PolyError> {
        let diff = &self.reciprocal(n)? - self;
        Ok(diff
            .div_by_t_minus_one()
            .expect("I_n(f) - f vanishes at t = 1"))
    }

    /// `I_n(f) == f`; false when `deg f > n`.
    pub fn is_palindromic(&self, n: usize) -> bool {
        match self.reciprocal(n) {
            Ok(r) => r == *self,
            Err(_) => false,
        }
    }

    /// Exact quotient by `t - 1` via synthetic division; `None` if the
    /// remainder is nonzero.
    pub fn div_by_t_minus_one(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = self.coeffs.len() - 1;
        let mut quot = vec![R::zero(); d];
        let mut carry = R::zero();
        for k in (1..=d).rev() {
            carry = carry.add(&self.coeffs[k]);
            quot[k - 1] = carry.clone();
        }
        if carry.add(&self.coeffs[0]).is_zero() {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Ring::to_json).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self, PolyError> {
        let arr = value
            .as_array()
            .ok_or_else(|| PolyError::Parse(format!("expected a coefficient array, found {value}")))?;
        Ok(Self::new(arr.iter().map(R::from_json).collect::<Result<_, _>>()?))
    }
}

impl<R: Field> Poly<R> {
    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![R::zero(); sd - dd + 1];
        for k in (dd..=sd).rev() {
            let c = rem[k].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].sub(&c.mul(b));
            }
            quot[k - dd] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient, `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            match (k, c.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (_, true) => {}
                _ => write!(f, "{cs}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, other: &Poly<R>) -> Poly<R> {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, other: &Poly<R>) -> Poly<R> {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, other: &Poly<R>) -> Poly<R> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly { coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $method(self, other: Poly<R>) -> Poly<R> {
                (&self).$method(&other)
            }
        }
        impl<R: Ring> $tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $method(self, other: &Poly<R>) -> Poly<R> {
                (&self).$method(other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: Ring> std::iter::Sum for Poly<R> {
    fn sum<I: Iterator<Item = Poly<R>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Q;

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::from_i64s(c)
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[1, 4, 1]).reciprocal(3).unwrap(), p(&[0, 1, 4, 1]));
        assert_eq!(p(&[1, 4, 1]).reciprocal(2).unwrap(), p(&[1, 4, 1]));
        assert_eq!(p(&[]).reciprocal(5).unwrap(), p(&[]));
        assert_eq!(
            p(&[1, 4, 1]).reciprocal(1),
            Err(PolyError::DegreeExceeds { degree: 2, bound: 1 })
        );
    }

    #[test]
    fn s_op_examples() {
        assert_eq!(p(&[1]).s_op(2).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).s_op(2).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 4, 1]).s_op(2).unwrap(), p(&[]));
        assert_eq!(p(&[0, 1]).s_op(1).unwrap(), p(&[-1]));
    }

    #[test]
    fn palindromic_examples() {
        assert!(p(&[1, 4, 1]).is_palindromic(2));
        assert!(!p(&[1, 4, 1]).is_palindromic(3));
        assert!(p(&[]).is_palindromic(7));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[3, 0, 0]).degree(), Some(0));
        assert_eq!(p(&[0, 0, 2]).valuation(), Some(2));
    }

    #[test]
    fn synthetic_division() {
        let f = &p(&[-1, 1]) * &p(&[2, 0, 3]);
        assert_eq!(f.div_by_t_minus_one(), Some(p(&[2, 0, 3])));
        assert_eq!(p(&[1, 1]).div_by_t_minus_one(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 4, 1]).to_string(), "1 + 4*t + t^2");
        assert_eq!(p(&[0, -1]).to_string(), "-1*t");
    }

    #[test]
    fn json_round_trip() {
        let f = Poly::new(vec![crate::poly::q(1, 2), crate::poly::qi(-3)]);
        let v = f.to_json();
        assert_eq!(v, serde_json::json!(["1/2", "-3"]));
        assert_eq!(Poly::<Q>::from_json(&v).unwrap(), f);
    }
}
