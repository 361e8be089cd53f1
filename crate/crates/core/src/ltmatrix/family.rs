use serde_json::{json, Value};

use super::{LTMatrix, MatrixError};
use crate::poly::{Field, Poly, Ring};

/// `H_n, d_n, G_n, A_n` for `0 <= n <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowFamily<R: Ring> {
    pub h: Vec<Poly<R>>,
    pub d: Vec<Poly<R>>,
    pub g: Vec<Poly<R>>,
    pub a: Vec<Poly<R>>,
}

impl<R: Ring> ChowFamily<R> {
    /// `𝒟(f) = Σ f_k d_k`.
    pub fn deranged(&self, f: &Poly<R>) -> Result<Poly<R>, MatrixError> {
        linear_map(&self.d, f)
    }

    /// `𝐀(f) = Σ f_k A_k`.
    pub fn eulerian(&self, f: &Poly<R>) -> Result<Poly<R>, MatrixError> {
        linear_map(&self.a, f)
    }

    pub fn to_json(&self) -> Value {
        let arr = |v: &[Poly<R>]| v.iter().map(Poly::to_json).collect::<Vec<_>>();
        json!({ "H": arr(&self.h), "d": arr(&self.d), "G": arr(&self.g), "A": arr(&self.a) })
    }
}

fn linear_map<R: Ring>(images: &[Poly<R>], f: &Poly<R>) -> Result<Poly<R>, MatrixError> {
    let bound = images.len() - 1;
    if let Some(deg) = f.degree().filter(|&d| d > bound) {
        return Err(MatrixError::DegreeBound { degree: deg, bound });
    }
    Ok(f.coeffs()
        .iter()
        .zip(images)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, p)| p.scale(c))
        .sum())
}

/// `Σ_{k<n} r_{n,k} f_k`.
fn lower_sum<R: Ring>(r: &LTMatrix<R>, n: usize, fs: &[Poly<R>]) -> Poly<R> {
    (0..n)
        .filter(|&k| !r.get(n, k).is_zero())
        .map(|k| fs[k].scale(r.get(n, k)))
        .sum()
}

/// `d_n = t S_{n-1}(Σ_{k<n} r_{n,k} d_k)`, `H_n = Σ_k r_{n,k} d_k`, and
/// `A_n = t S_n(Σ_{k<n} r_{n,k} A_k)`, `G_n = Σ_k r_{n,k} A_k`.
pub fn chow_family<R: Ring>(r: &LTMatrix<R>) -> Result<ChowFamily<R>, MatrixError> {
    let n_max = r.n_max();
    let mut fam = ChowFamily { h: vec![Poly::one()], d: vec![Poly::one()], g: vec![Poly::one()], a: vec![Poly::one()] };
    for n in 1..=n_max {
        let sd = lower_sum(r, n, &fam.d);
        let dn = sd.s_op(n - 1).expect("degree of the d-sum is below n").shift(1);
        fam.h.push(&sd + &dn);
        fam.d.push(dn);
        let sa = lower_sum(r, n, &fam.a);
        let an = sa.s_op(n).expect("degree of the A-sum is at most n").shift(1);
        fam.g.push(&sa + &an);
        fam.a.push(an);
    }
    check_family(r, &fam)?;
    Ok(fam)
}

fn check_family<R: Ring>(r: &LTMatrix<R>, fam: &ChowFamily<R>) -> Result<(), MatrixError> {
    let fail = |what: String| Err(MatrixError::PostCheck(what));
    if fam.d[0] != Poly::one() || fam.a[0] != Poly::one() {
        return fail("d_0 = A_0 = 1".into());
    }
    let t = Poly::t_pow(1);
    for n in 0..=r.n_max() {
        if !fam.d[n].is_palindromic(n) {
            return fail(format!("I_n(d_n) = d_n at n = {n}"));
        }
        if !fam.g[n].is_palindromic(n) {
            return fail(format!("I_n(G_n) = G_n at n = {n}"));
        }
        if n >= 1 {
            if fam.h[n].reciprocal(n).ok() != Some(&t * &fam.h[n]) {
                return fail(format!("I_n(H_n) = t H_n at n = {n}"));
            }
            if !fam.a[n].is_palindromic(n + 1) {
                return fail(format!("I_(n+1)(A_n) = A_n at n = {n}"));
            }
        }
        let row = r.row_poly(n);
        if fam.deranged(&row)? != fam.h[n] {
            return fail(format!("H_n = Σ r_(n,k) d_k at n = {n}"));
        }
        if fam.eulerian(&row)? != fam.g[n] {
            return fail(format!("G_n = Σ r_(n,k) A_k at n = {n}"));
        }
    }
    Ok(())
}

/// `H_n` as a sum over chains `0 = s_0 < s_1 < ... < s_m <= n` of
/// `t^m r_{s_1,s_0} ... r_{n,s_m} Π [s_i - s_{i-1} - 1]_t`.
pub fn chow_via_subsets<R: Ring>(r: &LTMatrix<R>, n: usize) -> Result<Poly<R>, MatrixError> {
    r.index_check(n)?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut total = Poly::zero();
    for mask in 0u64..(1u64 << n) {
        // bit i-1 of mask set means s = i belongs to S
        let s: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let mut prev = 0;
        let mut coef = R::one();
        let mut poly = Poly::one();
        for &si in &s {
            if si - prev < 2 {
                poly = Poly::zero();
                break;
            }
            coef = coef.mul(r.get(si, prev));
            poly = &poly * &Poly::t_integer(si - prev - 1);
            prev = si;
        }
        if poly.is_zero() {
            continue;
        }
        coef = coef.mul(r.get(n, prev));
        if coef.is_zero() {
            continue;
        }
        total = &total + &poly.shift(s.len()).scale(&coef);
    }
    Ok(total)
}

/// `∂_n R`: delete row and column `n`, renumbering the later indices.
pub fn delete_index<R: Ring>(r: &LTMatrix<R>, n: usize) -> Result<LTMatrix<R>, MatrixError> {
    r.index_check(n)?;
    if r.n_max() == 0 {
        return Err(MatrixError::Schema("cannot delete the only index".into()));
    }
    let keep: Vec<usize> = (0..=r.n_max()).filter(|&i| i != n).collect();
    LTMatrix::from_rows(keep.iter().enumerate().map(|(a, &i)| keep[..=a].iter().map(|&j| r.get(i, j).clone()).collect()).collect())
}

/// `R̄` with `r̄_{0,0} = 1`, `r̄_{n+1,0} = r_{n,0}` and `r̄_{n+1,k+1} = r_{n,k}`.
pub fn augment_matrix<R: Ring>(r: &LTMatrix<R>) -> LTMatrix<R> {
    LTMatrix::from_fn(r.n_max() + 1, |n, k| match (n, k) {
        (0, 0) => R::one(),
        (n, 0) => r.get(n - 1, 0).clone(),
        (n, k) => r.get(n - 1, k - 1).clone(),
    })
    .unwrap()
}

/// `r'_{n,k} = r_{n,k} c_n / c_k`.
pub fn conjugate_scale<R: Field>(r: &LTMatrix<R>, c: &[R]) -> Result<LTMatrix<R>, MatrixError> {
    if c.len() != r.n_max() + 1 {
        return Err(MatrixError::Schema(format!("expected {} scale factors, found {}", r.n_max() + 1, c.len())));
    }
    if !c[0].is_one() {
        return Err(MatrixError::ScaleStart);
    }
    let inv: Vec<R> = c
        .iter()
        .enumerate()
        .map(|(n, x)| x.inv().ok_or(MatrixError::ZeroScale { n }))
        .collect::<Result<_, _>>()?;
    LTMatrix::from_fn(r.n_max(), |n, k| r.get(n, k).mul(&c[n]).mul(&inv[k]))
}

pub fn apply_deranged<R: Ring>(r: &LTMatrix<R>, f: &Poly<R>) -> Result<Poly<R>, MatrixError> {
    chow_family(r)?.deranged(f)
}

pub fn apply_eulerian<R: Ring>(r: &LTMatrix<R>, f: &Poly<R>) -> Result<Poly<R>, MatrixError> {
    chow_family(r)?.eulerian(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, qi, Q};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::from_i64s(c)
    }

    #[test]
    fn pascal_family() {
        let f = chow_family(&LTMatrix::<Q>::pascal(3)).unwrap();
        assert_eq!(f.h, vec![p(&[1]), p(&[1]), p(&[1, 1]), p(&[1, 4, 1])]);
        assert_eq!(f.d, vec![p(&[1]), p(&[]), p(&[0, 1]), p(&[0, 1, 1])]);
        assert_eq!(f.g[2], p(&[1, 3, 1]));
        assert_eq!(f.a[2], p(&[0, 1, 1]));
    }

    #[test]
    fn identity_family() {
        let f = chow_family(&LTMatrix::<Q>::identity(4)).unwrap();
        assert_eq!(f.h[0], p(&[1]));
        assert!(f.h[1..].iter().all(Poly::is_zero));
    }

    #[test]
    fn all_ones_toeplitz() {
        let f = chow_family(&LTMatrix::toeplitz(&vec![qi(1); 5]).unwrap()).unwrap();
        for n in 1..=4 {
            assert_eq!(f.h[n], Poly::one_plus_t_pow(n - 1));
        }
        assert_eq!(chow_via_subsets(&LTMatrix::toeplitz(&vec![qi(1); 4]).unwrap(), 3).unwrap(), p(&[1, 2, 1]));
    }

    #[test]
    fn subsets_match_pascal() {
        let r = LTMatrix::<Q>::pascal(3);
        assert_eq!(chow_via_subsets(&r, 3).unwrap(), p(&[1, 4, 1]));
        let t = LTMatrix::from_rows(vec![vec![qi(1)], vec![qi(7), qi(1)]]).unwrap();
        assert_eq!(chow_via_subsets(&t, 1).unwrap(), p(&[7]));
    }

    #[test]
    fn deletion() {
        let r = LTMatrix::<Q>::pascal(3);
        let del = delete_index(&r, 2).unwrap();
        assert_eq!(del.rows(), &[vec![qi(1)], vec![qi(1), qi(1)], vec![qi(1), qi(3), qi(1)]][..]);
        let f = chow_family(&r).unwrap();
        let fd = chow_family(&del).unwrap();
        assert_eq!(f.d[3], fd.h[2].shift(1));
        assert_eq!(delete_index(&r, 3).unwrap(), r.truncated(2));
        assert!(delete_index(&r, 4).is_err());
    }

    #[test]
    fn augmentation() {
        let r = LTMatrix::<Q>::pascal(3);
        let bar = augment_matrix(&r);
        assert_eq!(bar.row(2), &[qi(1), qi(1), qi(1)][..]);
        let fb = chow_family(&bar).unwrap();
        assert_eq!(fb.h[3], p(&[1, 3, 1]));
        let f = chow_family(&r).unwrap();
        assert_eq!(f.g[2], fb.h[3]);
        let fdel = chow_family(&delete_index(&bar, 2).unwrap()).unwrap();
        assert_eq!(fdel.h[2].shift(1), p(&[0, 1, 1]));
    }

    #[test]
    fn scaling() {
        let r = LTMatrix::<Q>::pascal(4);
        let fact = |n: usize| (1..=n as i64).product::<i64>();
        let c: Vec<Q> = (0..=4).map(|n| q(1, fact(n))).collect();
        let s = conjugate_scale(&r, &c).unwrap();
        let (f, fs) = (chow_family(&r).unwrap(), chow_family(&s).unwrap());
        for n in 0..=4 {
            assert_eq!(fs.h[n], f.h[n].scale(&c[n]));
            assert_eq!(fs.a[n], f.a[n].scale(&c[n]));
        }
        assert_eq!(conjugate_scale(&r, &vec![qi(1); 5]).unwrap(), r);
        let mut bad = vec![qi(1); 5];
        bad[2] = qi(0);
        assert_eq!(conjugate_scale(&r, &bad), Err(MatrixError::ZeroScale { n: 2 }));
    }

    #[test]
    fn deranged_map() {
        let r = LTMatrix::<Q>::pascal(3);
        assert_eq!(apply_deranged(&r, &Poly::t_pow(3)).unwrap(), p(&[0, 1, 1]));
        assert_eq!(apply_deranged(&r, &Poly::one_plus_t_pow(3)).unwrap(), p(&[1, 4, 1]));
        assert!(matches!(apply_eulerian(&r, &Poly::t_pow(4)), Err(MatrixError::DegreeBound { .. })));
    }
}
