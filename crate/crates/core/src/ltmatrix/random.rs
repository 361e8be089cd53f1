use rand::Rng;

use super::resolve::matrix_from_lambda;
use super::LTMatrix;
use crate::poly::{q, Q};

fn small_nonnegative(rng: &mut impl Rng) -> Q {
    const VALUES: [(i64, i64); 7] = [(0, 1), (1, 2), (1, 1), (1, 1), (3, 2), (2, 1), (3, 1)];
    let (n, d) = VALUES[rng.gen_range(0..VALUES.len())];
    q(n, d)
}

/// Product of elementary factors `I + x E_{i,i-1}` with random `x >= 0`.
/// Every such product is TN with unit diagonal.
pub fn random_bidiagonal_product(rng: &mut impl Rng, n_max: usize, factors: usize) -> LTMatrix<Q> {
    let dim = n_max + 1;
    let mut m: Vec<Vec<Q>> = (0..dim).map(|n| (0..=n).map(|k| q((n == k) as i64, 1)).collect()).collect();
    if n_max == 0 {
        return LTMatrix::from_rows(m).unwrap();
    }
    for _ in 0..factors {
        let i = rng.gen_range(1..dim);
        let x = small_nonnegative(rng);
        // left multiplication: row i += x * row (i-1)
        for k in 0..i {
            let add = &m[i - 1][k] * &x;
            m[i][k] += add;
        }
    }
    LTMatrix::from_rows(m).unwrap()
}

/// Random nonnegative `λ_{n,k}` for `0 <= k <= n < n_max`.
pub fn random_lambda(rng: &mut impl Rng, n_max: usize) -> Vec<Vec<Q>> {
    (0..n_max).map(|n| (0..=n).map(|_| small_nonnegative(rng)).collect()).collect()
}

/// Matrix resolved by a random `λ`, together with the `λ`.
pub fn random_resolvable(rng: &mut impl Rng, n_max: usize) -> (LTMatrix<Q>, Vec<Vec<Q>>) {
    let lambda = random_lambda(rng, n_max);
    (matrix_from_lambda(&lambda), lambda)
}

/// Unit diagonal and entries uniform in `-3..=3` below it.
pub fn random_signed(rng: &mut impl Rng, n_max: usize) -> LTMatrix<Q> {
    let rows = (0..=n_max)
        .map(|n| (0..=n).map(|k| if n == k { q(1, 1) } else { q(rng.gen_range(-3..=3), 1) }).collect())
        .collect();
    LTMatrix::from_rows(rows).unwrap()
}
