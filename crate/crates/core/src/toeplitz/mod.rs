//! Truncated power series in `z` and the Toeplitz-matrix generating functions.

mod chow;
mod symmetric;

use serde_json::Value;
use thiserror::Error;

use crate::poly::{Poly, Ring};

pub use chow::{
    binomial_series, chow_series, pf_series, sheffer_matrix, sheffer_series, toeplitz_family, truncated_family_series,
    truncated_family_via_deletion, ChowSeries, PFData,
};
pub use symmetric::{
    complete_homogeneous, elementary, jacobi_trudi, qn_word_h, skew_shape, smirnov_h, super_elementary, WORD_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("a0 must be 1, found {found}")]
    A0 { found: String },
    #[error("constant term is not a unit")]
    NonUnit,
    #[error("coefficient of z^{n} is not divisible by 1 - t")]
    InexactDivision { n: usize },
    #[error("negative parameter {0}")]
    NegativeParameter(String),
    #[error("factorial value at {n} is zero")]
    ZeroFactorial { n: usize },
    #[error("factorial functions need B(0) = B(1) = 1 and C(0) = C(1) = 1")]
    FactorialStart,
    #[error("truncation index {k} exceeds the series order {order}")]
    Order { k: usize, order: usize },
    #[error("size {n} exceeds the bound {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("schema: {0}")]
    Schema(String),
    #[error("generating-function identity failed: {0}")]
    Identity(String),
}

/// `Σ_{n <= N} a_n z^n`, exact modulo `z^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Coefficients `a_0..a_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coeffs }
    }

    /// Polynomial `coeffs` padded or cut to order `order`.
    pub fn from_poly(coeffs: &[R], order: usize) -> Self {
        Self::new((0..=order).map(|n| coeffs.get(n).cloned().unwrap_or_else(R::zero)).collect())
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&[R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> R {
        self.coeffs.get(n).cloned().unwrap_or_else(R::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_poly(&self.coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|n| self.coeffs[n].add(&other.coeffs[n])).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|n| self.coeffs[n].sub(&other.coeffs[n])).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or(SeriesError::NonUnit)?;
        let mut out = vec![inv0.clone()];
        for n in 1..=self.order() {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
            }
            out.push(acc.neg().mul(&inv0));
        }
        Ok(Self::new(out))
    }

    /// `f_k(z) = Σ_j a_{k+j} z^j`, of order `N - k`.
    pub fn tail(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() {
            return Err(SeriesError::Order { k, order: self.order() });
        }
        Ok(Self::new(self.coeffs[k..].to_vec()))
    }

    /// `f(tz)`: coefficient `n` becomes `a_n t^n`.
    pub fn scale_t(&self) -> BivariateSeries<R> {
        BivariateSeries::new(self.coeffs.iter().enumerate().map(|(n, a)| Poly::monomial(a.clone(), n)).collect())
    }

    /// `f(z)` with constant coefficients in `t`.
    pub fn lift(&self) -> BivariateSeries<R> {
        BivariateSeries::new(self.coeffs.iter().map(|a| Poly::constant(a.clone())).collect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Ring::to_json).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self, SeriesError> {
        let arr = value
            .as_array()
            .filter(|a| !a.is_empty())
            .ok_or_else(|| SeriesError::Schema("series must be a nonempty coefficient array".into()))?;
        let coeffs = arr
            .iter()
            .enumerate()
            .map(|(n, v)| R::from_json(v).map_err(|e| SeriesError::Schema(format!("series[{n}]: {e}"))))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(coeffs))
    }
}

/// `Σ_{n <= N} p_n(t) z^n`, exact modulo `z^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries<R: Ring> {
    coeffs: Vec<Poly<R>>,
}

impl<R: Ring> BivariateSeries<R> {
    pub fn new(coeffs: Vec<Poly<R>>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        BivariateSeries { coeffs }
    }

    pub fn constant(p: Poly<R>, order: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); order + 1];
        coeffs[0] = p;
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly<R>] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly<R> {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<Poly<R>> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new((0..=order).map(|n| self.coeffs.get(n).cloned().unwrap_or_default()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Poly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Self::new(out)
    }

    pub fn scale_poly(&self, p: &Poly<R>) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    /// Multiply coefficient `n` by `w_n`.
    pub fn weight(&self, w: impl Fn(usize) -> R) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&w(n))).collect())
    }

    /// `z · self`, keeping the order.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = vec![Poly::zero()];
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Self::new(coeffs)
    }

    /// Inverse; the `z^0` coefficient must be a unit constant.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        let inv0 = match c0.degree() {
            Some(0) => c0.coeff(0).unit_inverse().ok_or(SeriesError::NonUnit)?,
            _ => return Err(SeriesError::NonUnit),
        };
        let mut out: Vec<Poly<R>> = vec![Poly::constant(inv0.clone())];
        for n in 1..=self.order() {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &out[n - k]);
                }
            }
            out.push((-acc).scale(&inv0));
        }
        Ok(Self::new(out))
    }

    /// Coefficientwise exact division by `1 - t`.
    pub fn div_one_minus_t(&self) -> Result<Self, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.div_by_t_minus_one().map(|q| -q).ok_or(SeriesError::InexactDivision { n }))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Poly::to_json).collect())
    }
}
