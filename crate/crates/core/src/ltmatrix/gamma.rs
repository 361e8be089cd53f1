use itertools::Itertools;

use super::family::chow_family;
use super::minors::minor;
use super::resolve::{dnk_family, Resolution};
use super::{LTMatrix, MatrixError};
use crate::poly::{gamma_extract, GammaVector, Poly, Ring, Q};

/// Subsets of `[1, n-1]` with no two consecutive elements, in lexicographic
/// order; with `avoid_one`, also `1 ∉ S` (so `S ∪ {0}` is stable).
pub fn stable_subsets(n: usize, avoid_one: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let start = if avoid_one { 2 } else { 1 };
    fn rec(next: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for s in next..n {
            cur.push(s);
            rec(s + 2, n, cur, out);
            cur.pop();
        }
    }
    rec(start, n, &mut cur, &mut out);
    out
}

/// `γ` of `H_n` (center `(n-1)/2`) or of `G_n` (center `n/2`), summing
/// `det R[S ∪ {n}, {0} ∪ S] t^{|S|}` over stable `S`.
pub fn gamma_chow<R: Ring>(r: &LTMatrix<R>, n: usize, augmented: bool) -> Result<GammaVector<R>, MatrixError> {
    r.index_check(n)?;
    let bound = if augmented { n } else { n.saturating_sub(1) };
    let mut entries = vec![R::zero(); bound / 2 + 1];
    for s in stable_subsets(n, !augmented) {
        let rows: Vec<usize> = s.iter().copied().chain([n]).collect();
        let cols: Vec<usize> = [0].into_iter().chain(s.iter().copied()).collect();
        let m = minor(r, &rows, &cols)?;
        entries[s.len()] = entries[s.len()].add(&m);
    }
    Ok(GammaVector::new(entries, bound).expect("length matches the bound"))
}

/// `α_{[0,n]}(T) = r_{t_1,0} r_{t_2,t_1} ... r_{n,t_m}`.
fn alpha<R: Ring>(r: &LTMatrix<R>, n: usize, t: &[usize]) -> R {
    let mut prev = 0;
    let mut acc = R::one();
    for &x in t.iter().chain([n].iter()) {
        acc = acc.mul(r.get(x, prev));
        prev = x;
    }
    acc
}

/// `β_{[0,n]}(S) = Σ_{T ⊆ S} (-1)^{|S∖T|} α_{[0,n]}(T)`.
pub fn beta_set<R: Ring>(r: &LTMatrix<R>, n: usize, s: &[usize]) -> Result<R, MatrixError> {
    r.index_check(n)?;
    let s: Vec<usize> = s.iter().copied().sorted().dedup().collect();
    if s.iter().any(|&x| x == 0 || x >= n) {
        return Err(MatrixError::SetRange(s));
    }
    let mut acc = R::zero();
    for mask in 0u64..(1 << s.len()) {
        let t: Vec<usize> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        let a = alpha(r, n, &t);
        acc = if (s.len() - t.len()) % 2 == 1 { acc.sub(&a) } else { acc.add(&a) };
    }
    Ok(acc)
}

pub const GV_BOUND: usize = 8;

/// `Σ_{σ ∈ S_n, D(σ) = S} Π_i λ_{i-1, f_σ(i)}` with `f_σ(j) = #{i < j : σ(i) > σ(j)}`.
pub fn gv_permutation_sum(res: &Resolution, n: usize, s: &[usize]) -> Result<Q, MatrixError> {
    if n > GV_BOUND {
        return Err(MatrixError::SizeBound { n, bound: GV_BOUND });
    }
    if n > res.n_max() {
        return Err(MatrixError::IndexRange { index: n, n_max: res.n_max() });
    }
    let s: Vec<usize> = s.iter().copied().sorted().dedup().collect();
    let mut total = Q::zero();
    for sigma in (0..n).permutations(n) {
        let descents: Vec<usize> = (1..n).filter(|&i| sigma[i - 1] > sigma[i]).collect();
        if descents != s {
            continue;
        }
        let mut w = Q::one();
        for j in 0..n {
            let f = (0..j).filter(|&i| sigma[i] > sigma[j]).count();
            w = w.mul(&res.lambda[j][f]);
            if w.is_zero() {
                break;
            }
        }
        total = total.add(&w);
    }
    Ok(total)
}

/// `σ_{m,k} = γ(S_m d_{m,k})` and `τ_{m,k} = γ(S_{m+1} d_{m,k})` for `m <= n`,
/// as γ-polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTau {
    pub sigma: Vec<Vec<Poly<Q>>>,
    pub tau: Vec<Vec<Poly<Q>>>,
}

/// Computed from the `d_{n,k}` and by the recursion
/// `σ_{n+1,k} = Σ_{j>=k} λ_{n,j} τ_{n,j}`,
/// `τ_{n+1,k} = t Σ_{j<k} λ_{n,j} σ_{n,j} + Σ_{j>=k} λ_{n,j} τ_{n,j}`.
pub fn sigma_tau(r: &LTMatrix<Q>, res: &Resolution, n: usize) -> Result<SigmaTau, MatrixError> {
    r.index_check(n)?;
    let dnk = dnk_family(r, res)?;
    let gamma = |f: Poly<Q>, bound: usize| -> Result<Poly<Q>, MatrixError> {
        gamma_extract(&f, bound)
            .map(|g| g.as_poly())
            .map_err(|e| MatrixError::PostCheck(format!("γ extraction: {e}")))
    };
    let mut direct = SigmaTau { sigma: Vec::new(), tau: Vec::new() };
    for m in 0..=n {
        let mut srow = Vec::new();
        let mut trow = Vec::new();
        for d in &dnk.d[m] {
            srow.push(gamma(d.s_op(m).expect("deg d_(m,k) <= m"), m.saturating_sub(1))?);
            trow.push(gamma(d.s_op(m + 1).expect("deg d_(m,k) <= m"), m)?);
        }
        direct.sigma.push(srow);
        direct.tau.push(trow);
    }
    let mut rec = SigmaTau { sigma: vec![vec![Poly::zero()]], tau: vec![vec![Poly::one()]] };
    for m in 0..n {
        let lam = &res.lambda[m];
        let ls: Vec<Poly<Q>> = rec.sigma[m].iter().zip(lam).map(|(p, l)| p.scale(l)).collect();
        let lt: Vec<Poly<Q>> = rec.tau[m].iter().zip(lam).map(|(p, l)| p.scale(l)).collect();
        let mut srow = Vec::with_capacity(m + 2);
        let mut trow = Vec::with_capacity(m + 2);
        for k in 0..=m + 1 {
            let upper: Poly<Q> = lt[k.min(m + 1)..].iter().cloned().sum();
            let lower: Poly<Q> = ls[..k].iter().cloned().sum();
            trow.push(&lower.shift(1) + &upper);
            srow.push(upper);
        }
        rec.sigma.push(srow);
        rec.tau.push(trow);
    }
    if rec != direct {
        return Err(MatrixError::RouteMismatch("σ/τ recursion disagrees with direct evaluation".into()));
    }
    Ok(direct)
}

/// `γ(H_n)` read off from the family, for comparison with [`gamma_chow`].
pub fn gamma_of_family<R: Ring>(r: &LTMatrix<R>, n: usize, augmented: bool) -> Result<GammaVector<R>, MatrixError> {
    let fam = chow_family(r)?;
    let (f, bound) = if augmented { (&fam.g[n], n) } else { (&fam.h[n], n.saturating_sub(1)) };
    gamma_extract(f, bound).map_err(|e| MatrixError::PostCheck(e.to_string()))
}
