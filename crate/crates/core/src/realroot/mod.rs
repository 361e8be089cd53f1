//! Exact real-root certification over the rationals: Sturm counting, root
//! isolation with multiplicities, and the interlacing order `p ≺ q`.

mod interlace;

pub use interlace::{
    interlaces, is_in_interlacing, is_interlacing_sequence, is_interlacing_sequence_consecutive,
    InterlacingCertificate, InterlacingWitness, Slot,
};

use num_traits::Signed;
use serde_json::{json, Value};
use thiserror::Error;

use crate::poly::{format_rational, qi, Poly, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealRootError {
    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("polynomial {index} has a negative coefficient")]
    NegativeCoefficient { index: usize },
    #[error("polynomial {index} has degree {degree} > {bound}")]
    DegreeExceeds { index: usize, degree: usize, bound: usize },
    #[error("empty interval: lower bound is not below upper bound")]
    EmptyInterval,
}

/// Canonical Sturm sequence `f, f', -rem(...)...`, each term rescaled by a
/// positive constant.
pub fn sturm_sequence(f: &Poly<Q>) -> Vec<Poly<Q>> {
    let mut seq = vec![f.clone()];
    if f.is_zero() {
        return seq;
    }
    let mut next = f.derivative();
    while !next.is_zero() {
        let prev = seq.last().unwrap();
        let rem = -prev.div_rem(&next).1;
        seq.push(next);
        next = normalize_positive(&rem);
    }
    seq
}

fn normalize_positive(f: &Poly<Q>) -> Poly<Q> {
    match f.leading_coeff() {
        Some(lc) => f.scale(&lc.abs().recip()),
        None => Poly::zero(),
    }
}

fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `f(x)`; `None` stands for `-∞` when `at_neg_inf`, else `+∞`.
fn sign_at(f: &Poly<Q>, x: Option<&Q>, at_neg_inf: bool) -> i8 {
    match (x, f.leading_coeff()) {
        (_, None) => 0,
        (Some(x), _) => sign(&f.eval(x)),
        (None, Some(lc)) => {
            let s = sign(lc);
            let odd = f.degree().unwrap() % 2 == 1;
            if at_neg_inf && odd {
                -s
            } else {
                s
            }
        }
    }
}

fn variations(seq: &[Poly<Q>], x: Option<&Q>, at_neg_inf: bool) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let s = sign_at(p, x, at_neg_inf);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn count_with(seq: &[Poly<Q>], a: Option<&Q>, b: Option<&Q>) -> usize {
    variations(seq, a, true) - variations(seq, b, false)
}

/// Number of distinct real roots of `f` in `(a, b]`; `None` bounds are
/// `-∞` and `+∞` respectively.
pub fn sturm_count(f: &Poly<Q>, a: Option<&Q>, b: Option<&Q>) -> Result<usize, RealRootError> {
    if f.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    if let (Some(a), Some(b)) = (a, b) {
        if a >= b {
            return Err(RealRootError::EmptyInterval);
        }
    }
    Ok(count_with(&sturm_sequence(f), a, b))
}

/// `f / gcd(f, f')`, made monic.
pub fn squarefree_part(f: &Poly<Q>) -> Poly<Q> {
    if f.degree().unwrap_or(0) == 0 {
        return f.monic();
    }
    let g = f.gcd(&f.derivative());
    f.div_exact(&g).expect("gcd divides").monic()
}

/// Yun's square-free decomposition: monic `a_1, a_2, ...` with
/// `f = lc * Π a_i^i`, pairwise coprime and square-free.
pub fn squarefree_decomposition(f: &Poly<Q>) -> Vec<Poly<Q>> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).unwrap();
    let mut c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut factors = Vec::new();
    loop {
        let a = b.gcd(&d);
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = &c - &b.derivative();
        factors.push(a);
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    while factors.last().is_some_and(|a| a.degree() == Some(0)) {
        factors.pop();
    }
    factors
}

/// Cauchy bound `1 + max |a_i / a_d|`: every root lies in `(-B, B)`.
pub fn cauchy_bound(f: &Poly<Q>) -> Q {
    let Some(lc) = f.leading_coeff() else {
        return qi(1);
    };
    let d = f.degree().unwrap();
    let max = f.coeffs()[..d]
        .iter()
        .map(|c| (c / lc).abs())
        .fold(qi(0), |m, v| if v > m { v } else { m });
    qi(1) + max
}

/// One isolated real root: the unique root of the square-free part in
/// `(lo, hi]`, and its multiplicity in the original polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIsolation {
    /// Sorted increasingly; intervals are pairwise disjoint.
    pub roots: Vec<IsolatedRoot>,
    pub squarefree_part: Poly<Q>,
}

impl RootIsolation {
    pub fn num_real_roots(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "roots": self.roots.iter().map(|r| json!({
                "interval": [format_rational(&r.lo), format_rational(&r.hi)],
                "multiplicity": r.multiplicity,
            })).collect::<Vec<_>>(),
            "squarefree_part": self.squarefree_part.to_json(),
        })
    }
}

/// Disjoint half-open intervals `(lo, hi]`, one per distinct real root of
/// the square-free `f`, sorted increasingly.
fn isolate_squarefree(f: &Poly<Q>) -> Vec<(Q, Q)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(f);
    let bound = cauchy_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match count_with(&seq, Some(&lo), Some(&hi)) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / qi(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort();
    out
}

/// Isolate the real roots of a nonzero `f` and attach multiplicities.
pub fn isolate(f: &Poly<Q>) -> Result<RootIsolation, RealRootError> {
    if f.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    let sqf = squarefree_part(f);
    let intervals = isolate_squarefree(&sqf);
    let factors: Vec<(usize, Vec<Poly<Q>>)> = squarefree_decomposition(f)
        .into_iter()
        .enumerate()
        .filter(|(_, a)| a.degree().unwrap_or(0) > 0)
        .map(|(i, a)| (i + 1, sturm_sequence(&a)))
        .collect();
    let roots = intervals
        .into_iter()
        .map(|(lo, hi)| {
            let multiplicity = factors
                .iter()
                .filter(|(_, seq)| count_with(seq, Some(&lo), Some(&hi)) == 1)
                .map(|(m, _)| *m)
                .sum();
            IsolatedRoot { lo, hi, multiplicity }
        })
        .collect();
    Ok(RootIsolation { roots, squarefree_part: sqf })
}

/// Zero and constants are real-rooted; otherwise the square-free part must
/// have as many distinct real roots as its degree.
pub fn is_real_rooted(f: &Poly<Q>) -> bool {
    match f.degree() {
        None | Some(0) => true,
        Some(_) => {
            let sqf = squarefree_part(f);
            sturm_count(&sqf, None, None).unwrap() == sqf.degree().unwrap()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::from_i64s(c)
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_count(&p(&[1, 4, 1]), None, None).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 1, 1]), None, None).unwrap(), 0);
        assert_eq!(sturm_count(&p(&[0, 0, 1]), None, None).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[]), None, None), Err(RealRootError::ZeroPolynomial));
    }

    #[test]
    fn sturm_half_open() {
        // roots -1, 1
        let f = p(&[-1, 0, 1]);
        assert_eq!(sturm_count(&f, Some(&qi(-1)), Some(&qi(1))).unwrap(), 1);
        assert_eq!(sturm_count(&f, Some(&qi(-2)), Some(&qi(-1))).unwrap(), 1);
        assert_eq!(sturm_count(&f, Some(&q(-1, 2)), Some(&q(1, 2))).unwrap(), 0);
    }

    #[test]
    fn real_rooted_examples() {
        assert!(is_real_rooted(&p(&[])));
        assert!(is_real_rooted(&p(&[1, 4, 1])));
        assert!(!is_real_rooted(&p(&[1, 1, 1])));
        assert!(is_real_rooted(&p(&[5])));
    }

    #[test]
    fn yun_decomposition() {
        // (t+1)^3 (t-2)
        let f = &p(&[1, 3, 3, 1]) * &p(&[-2, 1]);
        let fs = squarefree_decomposition(&f);
        assert_eq!(fs, vec![p(&[-2, 1]), p(&[1]), p(&[1, 1])]);
    }

    #[test]
    fn isolation_with_multiplicities() {
        let f = &(&p(&[1, 3, 3, 1]) * &p(&[-2, 1])) * &p(&[1, 0, 1]);
        let iso = isolate(&f).unwrap();
        assert_eq!(iso.roots.len(), 2);
        assert_eq!(iso.roots[0].multiplicity, 3);
        assert_eq!(iso.roots[1].multiplicity, 1);
        assert!(iso.roots[0].hi <= iso.roots[1].lo);
        assert_eq!(iso.num_real_roots(), 4);
    }
}
