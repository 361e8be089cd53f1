//! Exact univariate polynomials in `t` over pluggable coefficient rings,
//! with the reciprocal operator `I_n`, the difference operator `S_n` and
//! γ-vectors.

mod gamma;
mod mpoly;
mod ring;
mod univariate;

pub use gamma::{gamma_expand, gamma_extract, GammaVector};
pub use mpoly::{MPoly, Monomial, VarNames};
pub use ring::{format_rational, parse_rational, q, qi, ExactDiv, Field, Ring, Q};
pub use univariate::Poly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeExceeds { degree: usize, bound: usize },
    #[error("polynomial is not palindromic with center {n}/2")]
    NotPalindromic { n: usize },
    #[error("gamma vector has length {found}, expected {expected}")]
    GammaLength { expected: usize, found: usize },
    #[error("inexact division")]
    NotDivisible,
}
