//! Lower-triangular matrices with unit diagonal and their Chow families.

mod family;
mod gamma;
mod minors;
mod random;
mod resolve;

use serde_json::{json, Value};
use thiserror::Error;

use crate::poly::{MPoly, Monomial, Poly, Ring};

pub use family::{
    apply_deranged, apply_eulerian, augment_matrix, chow_family, chow_via_subsets, conjugate_scale, delete_index,
    ChowFamily,
};
pub use gamma::{beta_set, gamma_chow, gamma_of_family, gv_permutation_sum, sigma_tau, stable_subsets, SigmaTau, GV_BOUND};
pub use minors::{is_tn, is_tn_with_bound, minor, TnVerdict, TnWitness, DEFAULT_TN_BOUND};
pub use random::{random_bidiagonal_product, random_lambda, random_resolvable, random_signed};
pub use resolve::{
    dnk_family, interlacing_step, matrix_from_lambda, resolve, verify_resolution, DnkFamily, Resolution, ResolutionCheck, ResolveOutcome,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("row {row} has {found} entries, expected {expected}")]
    Shape { row: usize, expected: usize, found: usize },
    #[error("diagonal entry r[{n},{n}] is not 1")]
    Diagonal { n: usize },
    #[error("index {index} out of range 0..={n_max}")]
    IndexRange { index: usize, n_max: usize },
    #[error("minor needs equally many rows and columns ({rows} vs {cols})")]
    ShapeMismatch { rows: usize, cols: usize },
    #[error("size {n} exceeds the bound {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("scale factor c[{n}] is zero")]
    ZeroScale { n: usize },
    #[error("scale factor c[0] must be 1")]
    ScaleStart,
    #[error("lambda[{n}][{k}] is negative")]
    NegativeLambda { n: usize, k: usize },
    #[error("polynomial degree {degree} exceeds {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("set {0:?} is not a subset of [1, n-1]")]
    SetRange(Vec<usize>),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("post-hoc check failed: {0}")]
    PostCheck(String),
}

/// `R = (r_{n,k})_{0 <= k <= n <= N}` with `r_{n,n} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LTMatrix<R: Ring> {
    rows: Vec<Vec<R>>,
}

impl<R: Ring> LTMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, MatrixError> {
        if rows.is_empty() {
            return Err(MatrixError::Schema("rows must be nonempty".into()));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(MatrixError::Shape { row: n, expected: n + 1, found: row.len() });
            }
            if !row[n].is_one() {
                return Err(MatrixError::Diagonal { n });
            }
        }
        Ok(LTMatrix { rows })
    }

    pub fn from_fn(n_max: usize, f: impl Fn(usize, usize) -> R) -> Result<Self, MatrixError> {
        Self::from_rows((0..=n_max).map(|n| (0..=n).map(|k| f(n, k)).collect()).collect())
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> &R {
        &self.rows[n][k]
    }

    /// Entry with `r_{n,k} = 0` above the diagonal.
    pub fn entry(&self, n: usize, k: usize) -> R {
        if k > n {
            R::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[R] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.rows
    }

    /// `R_n(t) = Σ_k r_{n,k} t^k`.
    pub fn row_poly(&self, n: usize) -> Poly<R> {
        Poly::new(self.rows[n].clone())
    }

    /// Leading `(m+1) x (m+1)` block.
    pub fn truncated(&self, m: usize) -> Self {
        LTMatrix { rows: self.rows[..=m.min(self.n_max())].to_vec() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LTMatrix<S> {
        LTMatrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn identity(n_max: usize) -> Self {
        Self::from_fn(n_max, |n, k| if n == k { R::one() } else { R::zero() }).unwrap()
    }

    pub fn pascal(n_max: usize) -> Self {
        let mut rows: Vec<Vec<R>> = vec![vec![R::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| match k {
                    0 => R::one(),
                    k if k == n => R::one(),
                    k => prev[k - 1].add(&prev[k]),
                })
                .collect();
            rows.push(row);
        }
        LTMatrix { rows }
    }

    /// `r_{n,k} = a_{n-k}`; requires `a_0 = 1`.
    pub fn toeplitz(a: &[R]) -> Result<Self, MatrixError> {
        if a.is_empty() {
            return Err(MatrixError::Schema("toeplitz sequence must be nonempty".into()));
        }
        Self::from_fn(a.len() - 1, |n, k| a[n - k].clone())
    }

    pub fn index_check(&self, index: usize) -> Result<(), MatrixError> {
        if index > self.n_max() {
            Err(MatrixError::IndexRange { index, n_max: self.n_max() })
        } else {
            Ok(())
        }
    }

    /// `{"rows": [[r_00], [r_10, r_11], ...]}`.
    pub fn to_json(&self) -> Value {
        json!({ "rows": self.rows.iter().map(|r| r.iter().map(Ring::to_json).collect::<Vec<_>>()).collect::<Vec<_>>() })
    }

    pub fn from_json(value: &Value) -> Result<Self, MatrixError> {
        let rows = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| MatrixError::Schema("field \"rows\" must be an array of arrays".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for (n, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| MatrixError::Schema(format!("rows[{n}] must be an array")))?;
            let parsed = row
                .iter()
                .enumerate()
                .map(|(k, v)| R::from_json(v).map_err(|e| MatrixError::Schema(format!("rows[{n}][{k}]: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(parsed);
        }
        Self::from_rows(out)
    }
}

/// Gaussian binomial coefficient `[n choose k]_q` in the variable with index `var`.
pub fn gaussian_binomial(n: usize, k: usize, var: usize) -> MPoly {
    if k > n {
        return MPoly::zero();
    }
    // Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k].
    let mut row = vec![MPoly::one()];
    for m in 1..=n {
        let mut next = vec![MPoly::one(); m + 1];
        for j in 1..m {
            let qj = MPoly::term(Monomial::new(one_hot(var, j as u32)), 1);
            next[j] = row[j - 1].add(&qj.mul(&row[j]));
        }
        row = next;
    }
    row[k].clone()
}

fn one_hot(var: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; var + 1];
    v[var] = e;
    v
}

/// `r_{n,k} = [n choose k]_q` with symbolic `q` (variable 0).
pub fn gaussian_matrix(n_max: usize) -> LTMatrix<MPoly> {
    LTMatrix::from_fn(n_max, |n, k| gaussian_binomial(n, k, 0)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qi, Q};

    #[test]
    fn constructors() {
        let p = LTMatrix::<Q>::pascal(4);
        assert_eq!(p.row(4), &[qi(1), qi(4), qi(6), qi(4), qi(1)][..]);
        assert_eq!(LTMatrix::<Q>::identity(2).get(2, 0), &qi(0));
        let t = LTMatrix::toeplitz(&[qi(1), qi(2), qi(3)]).unwrap();
        assert_eq!(t.row(2), &[qi(3), qi(2), qi(1)][..]);
        assert_eq!(p.row_poly(2), Poly::from_i64s(&[1, 2, 1]));
    }

    #[test]
    fn diagonal_rejected() {
        let err = LTMatrix::from_rows(vec![vec![qi(1)], vec![qi(1), qi(2)]]).unwrap_err();
        assert_eq!(err, MatrixError::Diagonal { n: 1 });
        assert!(err.to_string().contains("diagonal"));
        assert!(matches!(LTMatrix::from_rows(vec![vec![qi(1)], vec![qi(1)]]), Err(MatrixError::Shape { .. })));
    }

    #[test]
    fn json_round_trip() {
        let p = LTMatrix::<Q>::pascal(3);
        assert_eq!(LTMatrix::<Q>::from_json(&p.to_json()).unwrap(), p);
        let g = gaussian_matrix(3);
        assert_eq!(LTMatrix::<MPoly>::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn gaussian_entries() {
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let g = gaussian_binomial(4, 2, 0);
        let at2 = g.eval(&[2]);
        assert_eq!(at2, 35.into());
        assert_eq!(g.specialize(0, 1), MPoly::constant(6));
    }
}
