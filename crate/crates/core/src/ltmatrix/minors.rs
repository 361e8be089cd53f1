use std::collections::HashMap;

use itertools::Itertools;
use serde_json::{json, Value};

use super::{LTMatrix, MatrixError};
use crate::poly::{format_rational, Ring, Q};

pub const DEFAULT_TN_BOUND: usize = 10;

/// `det R[rows, cols]` by Laplace expansion along the first row, memoized on
/// the remaining columns. Index sets are taken in increasing order.
pub fn minor<R: Ring>(r: &LTMatrix<R>, rows: &[usize], cols: &[usize]) -> Result<R, MatrixError> {
    if rows.len() != cols.len() {
        return Err(MatrixError::ShapeMismatch { rows: rows.len(), cols: cols.len() });
    }
    for &i in rows.iter().chain(cols) {
        r.index_check(i)?;
    }
    let rows: Vec<usize> = rows.iter().copied().sorted().collect();
    let cols: Vec<usize> = cols.iter().copied().sorted().collect();
    if rows.len() > 63 {
        return Err(MatrixError::SizeBound { n: rows.len(), bound: 63 });
    }
    let mut memo = HashMap::new();
    Ok(laplace(r, &rows, &cols, (1u64 << cols.len()) - 1, &mut memo))
}

fn laplace<R: Ring>(r: &LTMatrix<R>, rows: &[usize], cols: &[usize], mask: u64, memo: &mut HashMap<u64, R>) -> R {
    let k = mask.count_ones() as usize;
    if k == 0 {
        return R::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let row = rows[rows.len() - k];
    let mut acc = R::zero();
    let mut sign_neg = false;
    for (j, &c) in cols.iter().enumerate() {
        if mask >> j & 1 == 0 {
            continue;
        }
        let a = r.entry(row, c);
        if !a.is_zero() {
            let sub = laplace(r, rows, cols, mask & !(1 << j), memo);
            let term = a.mul(&sub);
            acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
        }
        sign_neg = !sign_neg;
    }
    memo.insert(mask, acc.clone());
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnVerdict {
    pub tn: bool,
    /// First negative minor in the order (size, rows, cols).
    pub witness: Option<TnWitness>,
    pub minors_checked: usize,
}

impl TnVerdict {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "tn": self.tn, "minors_checked": self.minors_checked });
        if let Some(w) = &self.witness {
            v["witness"] = json!({ "rows": w.rows, "cols": w.cols, "value": format_rational(&w.value) });
        }
        v
    }
}

pub fn is_tn(r: &LTMatrix<Q>) -> Result<TnVerdict, MatrixError> {
    is_tn_with_bound(r, DEFAULT_TN_BOUND)
}

/// Exhaustive check of all square minors. Minors of size `m` are expanded
/// along their first row using the stored minors of size `m - 1`. Minors with
/// some `cols[l] > rows[l]` vanish for a lower-triangular matrix and are skipped.
pub fn is_tn_with_bound(r: &LTMatrix<Q>, bound: usize) -> Result<TnVerdict, MatrixError> {
    let n = r.n_max();
    if n > bound {
        return Err(MatrixError::SizeBound { n, bound });
    }
    let dim = n + 1;
    let mask_of = |s: &[usize]| s.iter().fold(0u32, |m, &i| m | 1 << i);
    let mut prev: HashMap<(u32, u32), Q> = HashMap::new();
    prev.insert((0, 0), Q::from_integer(1.into()));
    let mut checked = 0;
    for size in 1..=dim {
        let mut cur = HashMap::new();
        for rows in (0..dim).combinations(size) {
            let rmask = mask_of(&rows);
            let rest_rows = rmask & !(1 << rows[0]);
            for cols in (0..dim).combinations(size) {
                if cols.iter().zip(&rows).any(|(c, r)| c > r) {
                    continue;
                }
                let cmask = mask_of(&cols);
                let mut det = Q::from_integer(0.into());
                for (j, &c) in cols.iter().enumerate() {
                    let a = r.entry(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let Some(sub) = prev.get(&(rest_rows, cmask & !(1 << c))) else { continue };
                    let term = a.mul(sub);
                    det = if j % 2 == 1 { det.sub(&term) } else { det.add(&term) };
                }
                checked += 1;
                if !det.is_nonnegative() {
                    return Ok(TnVerdict {
                        tn: false,
                        witness: Some(TnWitness { rows, cols, value: det }),
                        minors_checked: checked,
                    });
                }
                if !det.is_zero() {
                    cur.insert((rmask, cmask), det);
                }
            }
        }
        prev = cur;
    }
    Ok(TnVerdict { tn: true, witness: None, minors_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qi;

    #[test]
    fn minor_examples() {
        let p = LTMatrix::<Q>::pascal(3);
        assert_eq!(minor(&p, &[2, 3], &[0, 2]).unwrap(), qi(2));
        assert_eq!(minor(&p, &[1, 2], &[0, 1]).unwrap(), qi(1));
        assert_eq!(minor(&p, &[2], &[2]).unwrap(), qi(1));
        assert_eq!(minor(&p, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap(), qi(1));
        assert!(matches!(minor(&p, &[1, 2], &[0]), Err(MatrixError::ShapeMismatch { .. })));
    }

    #[test]
    fn tn_examples() {
        assert!(is_tn(&LTMatrix::<Q>::pascal(6)).unwrap().tn);
        assert!(is_tn(&LTMatrix::<Q>::identity(5)).unwrap().tn);
        let bad = LTMatrix::from_rows(vec![vec![qi(1)], vec![qi(1), qi(1)], vec![qi(1), qi(-1), qi(1)]]).unwrap();
        let v = is_tn(&bad).unwrap();
        assert!(!v.tn);
        let w = v.witness.unwrap();
        assert_eq!((w.rows, w.cols), (vec![2], vec![1]));
        assert!(matches!(is_tn(&LTMatrix::<Q>::pascal(11)), Err(MatrixError::SizeBound { .. })));
    }

    #[test]
    fn larger_minor_failure() {
        // entries are positive but det [[1,1],[3,1]] = -2
        let m = LTMatrix::from_rows(vec![vec![qi(1)], vec![qi(1), qi(1)], vec![qi(3), qi(1), qi(1)]]).unwrap();
        let v = is_tn(&m).unwrap();
        assert!(!v.tn);
        let w = v.witness.unwrap();
        assert_eq!((w.rows.clone(), w.cols.clone()), (vec![1, 2], vec![0, 1]));
        assert_eq!(w.value, minor(&m, &w.rows, &w.cols).unwrap());
    }
}
