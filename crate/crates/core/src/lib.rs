//! Exact Chow-type polynomials of weakly ranked posets, lower-triangular
//! matrices and Toeplitz series, with certificates for palindromicity,
//! γ-positivity, total nonnegativity, real-rootedness and interlacing.

pub mod ltmatrix;
pub mod poly;
pub mod poset;
pub mod realroot;
pub mod toeplitz;
