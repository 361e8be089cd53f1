//! Multivariate polynomials with integer coefficients.
//!
//! Variables are identified by position (`x0, x1, ...`); a [`VarNames`] table
//! attaches human-readable names for display. Exponent vectors are stored with
//! trailing zeros trimmed so that the zero and one elements need no context.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use super::ring::{ExactDiv, Ring};
use super::PolyError;

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let exps = (0..len).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::new(exps)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut exps = self.0.clone();
        for (i, e) in other.0.iter().enumerate() {
            exps[i] = exps[i].checked_sub(*e)?;
        }
        Some(Monomial::new(exps))
    }

    /// Canonical key, e.g. `"1,0,2"`; the constant monomial is `"0"`.
    pub fn key(&self) -> String {
        if self.0.is_empty() {
            "0".to_string()
        } else {
            self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }
    }

    pub fn parse_key(key: &str) -> Result<Monomial, PolyError> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Monomial::one());
        }
        let exps = key
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| PolyError::Parse(format!("malformed monomial key {key:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::new(exps))
    }
}

/// Display names for the positional variables of [`MPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VarNames(pub Vec<String>);

impl VarNames {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarNames(names.into_iter().map(Into::into).collect())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn name(&self, i: usize) -> String {
        self.0.get(i).cloned().unwrap_or_else(|| format!("x{i}"))
    }
}

/// Sparse multivariate polynomial over the integers.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), 1)
    }

    pub fn term(monomial: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, monomial: &Monomial) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, monomial: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Substitute the integer `value` for variable `var`.
    pub fn specialize(&self, var: usize, value: i64) -> MPoly {
        let mut out = MPoly::default();
        let value = BigInt::from(value);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = m.exponent(var);
            if var < exps.len() {
                exps[var] = 0;
            }
            out.add_term(Monomial::new(exps), c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Value at an integer point (missing coordinates count as zero).
    pub fn eval(&self, point: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                let x = BigInt::from(point.get(i).copied().unwrap_or(0));
                term *= num_traits::pow(x, *e as usize);
            }
            acc += term;
        }
        acc
    }

    pub fn display_with<'a>(&'a self, names: &'a VarNames) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }
}

struct DisplayWith<'a> {
    poly: &'a MPoly,
    names: &'a VarNames,
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (v, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names.name(v)),
                    _ => factors.push(format!("{}^{e}", self.names.name(v))),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&VarNames::default()))
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }

    fn one() -> Self {
        MPoly::constant(1)
    }

    fn from_i64(v: i64) -> Self {
        MPoly::constant(v)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }

    fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if *m == Monomial::one() && c.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .terms
            .iter()
            .map(|(m, c)| (m.key(), Value::String(c.to_string())))
            .collect();
        Value::Object(map)
    }

    fn from_json(value: &Value) -> Result<Self, PolyError> {
        match value {
            Value::Object(map) => {
                let mut out = MPoly::default();
                for (key, c) in map {
                    let m = Monomial::parse_key(key)?;
                    let c: BigInt = match c {
                        Value::String(s) => s
                            .trim()
                            .parse()
                            .map_err(|_| PolyError::Parse(format!("malformed integer {s:?}")))?,
                        Value::Number(n) => n
                            .as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| PolyError::Parse(format!("non-integer coefficient {n}")))?,
                        other => {
                            return Err(PolyError::Parse(format!("expected an integer, found {other}")))
                        }
                    };
                    out.add_term(m, c);
                }
                Ok(out)
            }
            Value::String(_) | Value::Number(_) => {
                let c = <super::Q as Ring>::from_json(value)?;
                if !c.is_integer() {
                    return Err(PolyError::Parse(format!("non-integer constant {c}")));
                }
                Ok(MPoly::constant(c.to_integer()))
            }
            other => Err(PolyError::Parse(format!("expected a monomial map, found {other}"))),
        }
    }
}

impl ExactDiv for MPoly {
    /// Multivariate division by a single polynomial under lex order; succeeds
    /// exactly when `divisor` divides `self` over the integers.
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::default();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lead_m)?;
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let t = MPoly::term(qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }
}
