//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use chow_core::poly::{q, qi, MPoly, Monomial, Poly, Ring, Q};
use chow_core::poset::{IncidenceFunction, Poset, WeakRankSpec};
use chow_core::toeplitz::TruncatedSeries;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(n)
}

/// `#{i : σ(i) > i}` with one-based values.
pub fn exc(s: &[usize]) -> usize {
    s.iter().enumerate().filter(|&(i, &v)| v > i).count()
}

/// One-based descent positions.
pub fn descents(s: &[usize]) -> Vec<usize> {
    (1..s.len()).filter(|&i| s[i - 1] > s[i]).collect()
}

pub fn maj(s: &[usize]) -> usize {
    descents(s).iter().sum()
}

pub fn inv(s: &[usize]) -> usize {
    (0..s.len()).flat_map(|i| (i + 1..s.len()).map(move |j| (i, j))).filter(|&(i, j)| s[i] > s[j]).count()
}

pub fn is_derangement(s: &[usize]) -> bool {
    s.iter().enumerate().all(|(i, &v)| v != i)
}

/// No two consecutive integers; with `with_zero`, also `1 ∉ S`.
pub fn is_stable(s: &[usize], with_zero: bool) -> bool {
    s.windows(2).all(|w| w[1] > w[0] + 1) && !(with_zero && s.first() == Some(&1))
}

/// `Σ_σ t^{exc σ}` over `S_n`, or over derangements only.
pub fn excedance_sum(n: usize, derangements_only: bool) -> Poly<Q> {
    let mut c = vec![0i64; n + 1];
    for s in permutations(n) {
        if !derangements_only || is_derangement(&s) {
            c[exc(&s)] += 1;
        }
    }
    Poly::from_i64s(&c)
}

pub fn q_pow(e: usize) -> MPoly {
    MPoly::term(Monomial::new(vec![e as u32]), 1)
}

/// `Σ_σ q^{maj - exc} t^{exc}` with `q` the variable 0.
pub fn maj_exc_sum(n: usize) -> Poly<MPoly> {
    let mut c = vec![MPoly::zero(); n + 1];
    for s in permutations(n) {
        let e = exc(&s);
        c[e] = c[e].add(&q_pow(maj(&s) - e));
    }
    Poly::new(c)
}

/// `Σ t^{des} q^{inv}` over permutations whose descent set is stable.
pub fn stable_descent_sum(n: usize, with_zero: bool) -> Poly<MPoly> {
    let mut c = vec![MPoly::zero(); n / 2 + 1];
    for s in permutations(n) {
        let d = descents(&s);
        if is_stable(&d, with_zero) {
            c[d.len()] = c[d.len()].add(&q_pow(inv(&s)));
        }
    }
    Poly::new(c)
}

/// A bounded poset with at most `max_elems` elements and a random weak rank:
/// interior elements get random potentials and random relations that
/// respect them, `0̂` has potential 0 and `1̂` lies strictly above everything.
pub fn random_weak_poset(rng: &mut impl Rng, max_elems: usize) -> Poset {
    let interior = rng.gen_range(0..=max_elems - 2);
    let mut pot: Vec<i64> = (0..interior).map(|_| rng.gen_range(1..=4)).collect();
    pot.sort_unstable();
    let top_pot = pot.last().copied().unwrap_or(0) + rng.gen_range(1..=2);
    let n = interior + 2;
    let (bot, top) = (interior, interior + 1);
    let mut potential = pot.clone();
    potential.push(0);
    potential.push(top_pot);
    let mut relation = Vec::new();
    for i in 0..interior {
        relation.push((bot, i));
        relation.push((i, top));
        for j in 0..interior {
            if potential[i] < potential[j] && rng.gen_bool(0.4) {
                relation.push((i, j));
            }
        }
    }
    relation.push((bot, top));
    let names = (0..n).map(|i| format!("v{i}")).collect();
    Poset::from_relation(names, &relation, WeakRankSpec::Potential(potential)).expect("potential ranks are additive")
}

pub fn small_rational(rng: &mut impl Rng) -> Q {
    q(rng.gen_range(-4..=6), rng.gen_range(1..=3))
}

pub fn small_nonnegative(rng: &mut impl Rng) -> Q {
    q(rng.gen_range(0..=6), rng.gen_range(1..=3))
}

/// Scalar `g` with `g_{x,x} = 1` and random values elsewhere.
pub fn random_scalar_g(rng: &mut impl Rng, host: Arc<Poset>) -> IncidenceFunction<Q> {
    let mut vals = Vec::new();
    for x in 0..host.len() {
        for y in 0..host.len() {
            if host.lt(x, y) {
                vals.push((x, y, small_rational(rng)));
            }
        }
    }
    let mut g = IncidenceFunction::zeta(host);
    for (x, y, v) in vals {
        g.set(x, y, Poly::constant(v));
    }
    g
}

pub fn random_series(rng: &mut impl Rng, order: usize) -> TruncatedSeries<Q> {
    let mut c = vec![qi(1)];
    c.extend((0..order).map(|_| small_rational(rng)));
    TruncatedSeries::new(c)
}

/// A random antichain `ℋ` in ranks `(d, n)` of the boolean algebra that
/// covers every element of rank `<= d`, or `None` if the greedy choice fails.
pub fn random_paving_hyper(rng: &mut impl Rng, p: &Poset, n: usize, d: usize) -> Option<Vec<usize>> {
    let bot = p.bottom()?;
    let mut cands: Vec<usize> = (0..p.len())
        .filter(|&x| {
            let r = p.rank(bot, x).unwrap();
            r > d && r < n
        })
        .collect();
    cands.shuffle(rng);
    let mut hyper: Vec<usize> = Vec::new();
    for c in cands {
        if hyper.iter().all(|&h| !p.leq(h, c) && !p.leq(c, h)) {
            hyper.push(c);
        }
        if p.check_paving_covering(d, &hyper).is_ok() {
            return Some(hyper);
        }
    }
    None
}
