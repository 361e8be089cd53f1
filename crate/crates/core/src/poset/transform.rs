use std::collections::BTreeSet;
use std::sync::Arc;

use super::incidence::IncidenceFunction;
use super::{Poset, PosetError};
use crate::ltmatrix::LTMatrix;
use crate::poly::{qi, Poly, Ring, Q};

/// Result of the weak-rank uniformity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniformity {
    /// `r_{n,k} = |{z <= x : ρ(z) = k}|` for any `x` of rank `n`; rows for
    /// ranks that do not occur are filled with the identity row.
    Uniform(LTMatrix<Q>),
    /// `x` and `y` have equal rank but different numbers of elements of
    /// rank `k` below them.
    NotUniform { x: usize, y: usize, k: usize },
}

impl Poset {
    /// Remove the elements of rank `r - 1` and lower the rank of `1̂` by one.
    /// Returns the truncation and the original indices of its elements.
    pub fn truncate_with_map(&self) -> Result<(Poset, Vec<usize>), PosetError> {
        let (bot, top) = self.bounds()?;
        let r = self.rank(bot, top).unwrap();
        if r < 2 {
            return Err(PosetError::RankTooSmall { rank: r, required: 2 });
        }
        let kept: Vec<usize> = (0..self.len()).filter(|&x| self.rank(bot, x).unwrap() != r - 1).collect();
        let lowered = self.with_rank(|x, y| {
            let base = self.rank(x, y).unwrap();
            if y == top && x != top {
                base - 1
            } else {
                base
            }
        });
        Ok((lowered.induced(&kept), kept))
    }

    pub fn truncate(&self) -> Result<Poset, PosetError> {
        self.truncate_with_map().map(|(p, _)| p)
    }

    /// `P_S = {x : ρ(x) ∈ S ∪ {0, r}}` with the induced weak rank.
    pub fn rank_select(&self, s: &BTreeSet<usize>) -> Result<Poset, PosetError> {
        let (bot, top) = self.bounds()?;
        let r = self.rank(bot, top).unwrap();
        if let Some(&bad) = s.iter().find(|&&k| k == 0 || k >= r) {
            return Err(PosetError::SelectionOutOfRange(bad));
        }
        let kept: Vec<usize> = (0..self.len())
            .filter(|&x| {
                let k = self.rank(bot, x).unwrap();
                k == 0 || k == r || s.contains(&k)
            })
            .collect();
        Ok(self.induced(&kept))
    }

    /// Weak-rank uniformity and the matrix `R(P)`.
    pub fn is_weak_rank_uniform(&self) -> Result<Uniformity, PosetError> {
        let bot = self.bottom_or_err()?;
        let n = self.len();
        let rho: Vec<usize> = (0..n).map(|x| self.rank(bot, x).unwrap()).collect();
        let max_rank = rho.iter().copied().max().unwrap_or(0);
        let mut rows: Vec<Option<(usize, Vec<usize>)>> = vec![None; max_rank + 1];
        for &x in self.linear_extension() {
            let mut counts = vec![0usize; rho[x] + 1];
            for z in 0..n {
                if self.leq(z, x) {
                    counts[rho[z]] += 1;
                }
            }
            match &rows[rho[x]] {
                None => rows[rho[x]] = Some((x, counts)),
                Some((y, prev)) => {
                    if let Some(k) = (0..counts.len()).find(|&k| counts[k] != prev[k]) {
                        return Ok(Uniformity::NotUniform { x: *y, y: x, k });
                    }
                }
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(m, row)| match row {
                Some((_, counts)) => counts.into_iter().map(|c| qi(c as i64)).collect(),
                None => (0..=m).map(|k| if k == m { qi(1) } else { qi(0) }).collect(),
            })
            .collect();
        Ok(Uniformity::Uniform(LTMatrix::from_rows(rows).expect("unit diagonal by construction")))
    }
}

/// Adjoin a new least element `0̂_aug` (appended as the last index) with
/// `ρ(0̂_aug, y) = ρ(0̂, y) + 1` and `ḡ(0̂_aug, y) = g(0̂, y)`.
pub fn augment<R: Ring>(g: &IncidenceFunction<R>) -> Result<(Arc<Poset>, IncidenceFunction<R>), PosetError> {
    let p = g.host();
    let bot = p.bottom_or_err()?;
    let n = p.len();
    let mut name = "0aug".to_string();
    while p.index_of(&name).is_some() {
        name.push('\'');
    }
    let mut names = p.names().to_vec();
    names.push(name);
    let m = n + 1;
    let mut leq = vec![false; m * m];
    let mut rank = vec![0u32; m * m];
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) {
                leq[x * m + y] = true;
                rank[x * m + y] = p.rank(x, y).unwrap() as u32;
            }
        }
    }
    leq[n * m + n] = true;
    for y in 0..n {
        leq[n * m + y] = true;
        rank[n * m + y] = p.rank(bot, y).unwrap() as u32 + 1;
    }
    let mut aug = Poset { names, leq, rank, linear: Vec::new() };
    aug.linear = aug.compute_linear_extension();
    let aug = Arc::new(aug);
    let gbar = IncidenceFunction::from_fn(aug.clone(), |x, y| match (x == n, y == n) {
        (true, true) => Poly::one(),
        (true, false) => g.get(bot, y).clone(),
        _ => g.get(x, y).clone(),
    });
    Ok((aug, gbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{boolean_algebra, chain, chow_pair, subspace_lattice};

    #[test]
    fn truncation_examples() {
        let t = boolean_algebra(3).truncate().unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.total_rank().unwrap(), 2);
        assert_eq!(chain(3).truncate().unwrap().total_rank().unwrap(), 2);
        assert_eq!(chain(3).truncate().unwrap().len(), 3);
        let g = IncidenceFunction::<Q>::zeta(Arc::new(t));
        let (h, _) = chow_pair(&g).unwrap();
        let (b, top) = g.host().bounds().unwrap();
        assert_eq!(h.get(b, top), &Poly::from_i64s(&[1, 1]));
        assert!(matches!(chain(1).truncate(), Err(PosetError::RankTooSmall { .. })));
    }

    #[test]
    fn augmentation_examples() {
        let g = IncidenceFunction::<Q>::zeta(Arc::new(boolean_algebra(2)));
        let (aug, gbar) = augment(&g).unwrap();
        assert_eq!(aug.len(), 5);
        assert_eq!(aug.total_rank().unwrap(), 3);
        assert_eq!(gbar.get(4, 3), g.get(0, 3));
    }

    #[test]
    fn rank_selection_examples() {
        let b3 = boolean_algebra(3);
        assert_eq!(b3.rank_select(&BTreeSet::from([1])).unwrap().len(), 5);
        assert_eq!(b3.rank_select(&BTreeSet::from([1, 2])).unwrap(), b3);
        assert!(b3.rank_select(&BTreeSet::from([3])).is_err());
        let s = boolean_algebra(4).rank_select(&BTreeSet::from([2])).unwrap();
        let Uniformity::Uniform(r) = s.is_weak_rank_uniform().unwrap() else { panic!() };
        assert_eq!(r.get(4, 2), &qi(6));
        assert_eq!(r.get(2, 1), &qi(0));
    }

    #[test]
    fn uniform_matrices() {
        let Uniformity::Uniform(r) = boolean_algebra(3).is_weak_rank_uniform().unwrap() else { panic!() };
        assert_eq!(r.row(3), &[qi(1), qi(3), qi(3), qi(1)][..]);
        let Uniformity::Uniform(r) = subspace_lattice(3, 2).unwrap().is_weak_rank_uniform().unwrap() else {
            panic!()
        };
        assert_eq!(r.row(3), &[qi(1), qi(7), qi(7), qi(1)][..]);
        assert_eq!(r.row(2), &[qi(1), qi(3), qi(1)][..]);
    }

    #[test]
    fn non_uniform_witness() {
        // 0 < a, b, c; x covers a, b; y covers c only
        let names: Vec<String> = ["0", "a", "b", "c", "x", "y"].iter().map(|s| s.to_string()).collect();
        let rel = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 5)];
        let p = Poset::from_relation(names, &rel, super::super::WeakRankSpec::Graded).unwrap();
        assert!(matches!(p.is_weak_rank_uniform().unwrap(), Uniformity::NotUniform { k: 1, .. }));
    }
}
