use std::fmt;

use serde_json::Value;

use super::ring::Ring;
use super::univariate::Poly;
use super::PolyError;

/// Coordinates of a palindromic polynomial in the basis
/// `t^k (1 + t)^(n - 2k)`, `0 <= k <= n/2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaVector<R: Ring> {
    entries: Vec<R>,
    n: usize,
}

impl<R: Ring> GammaVector<R> {
    pub fn new(entries: Vec<R>, n: usize) -> Result<Self, PolyError> {
        let expected = n / 2 + 1;
        if entries.len() != expected {
            return Err(PolyError::GammaLength { expected, found: entries.len() });
        }
        Ok(GammaVector { entries, n })
    }

    pub fn zero(n: usize) -> Self {
        GammaVector { entries: vec![R::zero(); n / 2 + 1], n }
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    /// Twice the center of symmetry.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The γ-polynomial `Σ γ_k s^k`.
    pub fn as_poly(&self) -> Poly<R> {
        Poly::new(self.entries.clone())
    }

    pub fn expand(&self) -> Poly<R> {
        gamma_expand(&self.entries, self.n).expect("length fixed at construction")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(Ring::is_nonnegative)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(Ring::to_json).collect())
    }
}

impl<R: Ring> fmt::Display for GammaVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Unique `γ` with `f = Σ γ_k t^k (1+t)^(n-2k)`, by peeling off the lowest
/// basis element at each step.
pub fn gamma_extract<R: Ring>(f: &Poly<R>, n: usize) -> Result<GammaVector<R>, PolyError> {
    if !f.is_palindromic(n) {
        return Err(PolyError::NotPalindromic { n });
    }
    let mut rest = f.clone();
    let mut entries = Vec::with_capacity(n / 2 + 1);
    for k in 0..=n / 2 {
        let c = rest.coeff(k);
        if !c.is_zero() {
            let basis = Poly::one_plus_t_pow(n - 2 * k).shift(k);
            rest = &rest - &basis.scale(&c);
        }
        entries.push(c);
    }
    assert!(rest.is_zero(), "palindromic input left a remainder after gamma peeling");
    Ok(GammaVector { entries, n })
}

/// `Σ g_k t^k (1+t)^(n-2k)`.
pub fn gamma_expand<R: Ring>(g: &[R], n: usize) -> Result<Poly<R>, PolyError> {
    let expected = n / 2 + 1;
    if g.len() != expected {
        return Err(PolyError::GammaLength { expected, found: g.len() });
    }
    Ok(g.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| Poly::one_plus_t_pow(n - 2 * k).shift(k).scale(c))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qi, Q};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::from_i64s(c)
    }

    fn g(c: &[i64]) -> Vec<Q> {
        c.iter().map(|&v| qi(v)).collect()
    }

    #[test]
    fn extract_examples() {
        assert_eq!(gamma_extract(&p(&[1, 4, 1]), 2).unwrap().entries(), &g(&[1, 2])[..]);
        assert_eq!(gamma_extract(&p(&[1, 3, 3, 1]), 3).unwrap().entries(), &g(&[1, 0])[..]);
        assert_eq!(gamma_extract(&p(&[1, 0, 1]), 2).unwrap().entries(), &g(&[1, -2])[..]);
        assert_eq!(gamma_extract(&p(&[1, 4, 1]), 3), Err(PolyError::NotPalindromic { n: 3 }));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(gamma_expand(&g(&[1, 2]), 2).unwrap(), p(&[1, 4, 1]));
        assert_eq!(gamma_expand(&g(&[1, 0]), 3).unwrap(), p(&[1, 3, 3, 1]));
        assert_eq!(gamma_expand(&g(&[0, 1]), 2).unwrap(), p(&[0, 1]));
        assert_eq!(
            gamma_expand(&g(&[1]), 2),
            Err(PolyError::GammaLength { expected: 2, found: 1 })
        );
    }

    #[test]
    fn center_zero() {
        assert_eq!(gamma_extract(&p(&[-1]), 0).unwrap().entries(), &g(&[-1])[..]);
        assert_eq!(gamma_extract(&p(&[]), 4).unwrap().entries(), &g(&[0, 0, 0])[..]);
    }
}
