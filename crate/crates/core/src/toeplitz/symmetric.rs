//! Elementary and complete symmetric polynomials in finitely many variables,
//! word enumerations, and Jacobi–Trudi determinants.

use itertools::Itertools;

use super::{SeriesError, TruncatedSeries};
use crate::poly::{MPoly, Poly, Ring};

/// Largest word length (and alphabet size) accepted by the word enumerators.
pub const WORD_BOUND: usize = 6;

/// Coefficients of `Π_{v in vars} (1 + x_v z)` up to `z^order`.
fn e_product(vars: &[usize], order: usize) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(); order + 1];
    out[0] = MPoly::one();
    for &v in vars {
        let x = MPoly::var(v);
        for n in (1..=order).rev() {
            out[n] = out[n].add(&out[n - 1].mul(&x));
        }
    }
    out
}

/// Coefficients of `Π_{v in vars} 1/(1 - x_v z)` up to `z^order`.
fn h_product(vars: &[usize], order: usize) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(); order + 1];
    out[0] = MPoly::one();
    for &v in vars {
        let x = MPoly::var(v);
        for n in 1..=order {
            out[n] = out[n].add(&out[n - 1].mul(&x));
        }
    }
    out
}

/// `e_k` in the variables with the given indices.
pub fn elementary(k: usize, vars: &[usize]) -> MPoly {
    e_product(vars, k).pop().unwrap()
}

/// `h_k` in the variables with the given indices.
pub fn complete_homogeneous(k: usize, vars: &[usize]) -> MPoly {
    h_product(vars, k).pop().unwrap()
}

/// `Σ_n e_n(x/y) z^n = Π_i (1 + x_i z) / Π_j (1 - y_j z)` to order `order`, with
/// `x_i` the variable `i - 1` and `y_j` the variable `m_pos + j - 1`.
pub fn super_elementary(order: usize, m_pos: usize, m_neg: usize) -> TruncatedSeries<MPoly> {
    let xs: Vec<usize> = (0..m_pos).collect();
    let ys: Vec<usize> = (m_pos..m_pos + m_neg).collect();
    let e = e_product(&xs, order);
    let h = h_product(&ys, order);
    TruncatedSeries::new((0..=order).map(|n| (0..=n).fold(MPoly::zero(), |acc, k| acc.add(&e[k].mul(&h[n - k])))).collect())
}

fn check_size(n: usize, letters: usize) -> Result<(), SeriesError> {
    if n > WORD_BOUND {
        return Err(SeriesError::SizeBound { n, bound: WORD_BOUND });
    }
    if letters > WORD_BOUND {
        return Err(SeriesError::SizeBound { n: letters, bound: WORD_BOUND });
    }
    Ok(())
}

/// `Σ_w t^{des(w)} (1+t)^{col(w)} Π x_{w(i)}` over words `w` of length `n` in
/// the letters `letters` (given by integer value and variable index) whose equal
/// neighbours are all negative.
fn word_sum(n: usize, letters: &[(i64, usize)]) -> Poly<MPoly> {
    let mut buckets: Vec<MPoly> = vec![MPoly::zero(); 2 * n + 1];
    let mut add = |des: usize, col: usize, weight: MPoly| {
        // t^des (1+t)^col
        let mut binom = 1i64;
        for j in 0..=col {
            buckets[des + j] = buckets[des + j].add(&weight.mul(&MPoly::constant(binom)));
            binom = binom * (col - j) as i64 / (j + 1) as i64;
        }
    };
    if n == 0 {
        add(0, 0, MPoly::one());
    } else {
        for w in (0..n).map(|_| letters.iter()).multi_cartesian_product() {
            let mut des = 0;
            let mut col = 0;
            let mut ok = true;
            for pair in w.windows(2) {
                let (a, b) = (pair[0].0, pair[1].0);
                if a == b {
                    if a > 0 {
                        ok = false;
                        break;
                    }
                    col += 1;
                } else if a > b {
                    des += 1;
                }
            }
            if ok {
                let weight = w.iter().fold(MPoly::one(), |acc, &&(_, v)| acc.mul(&MPoly::var(v)));
                add(des, col, weight);
            }
        }
    }
    Poly::new(buckets)
}

/// `Σ_{w Smirnov} t^{des(w)} Π x_{w(i)}` over words of length `n` in `[m]`.
pub fn smirnov_h(n: usize, m: usize) -> Result<Poly<MPoly>, SeriesError> {
    check_size(n, m)?;
    let letters: Vec<(i64, usize)> = (0..m).map(|i| (i as i64 + 1, i)).collect();
    Ok(word_sum(n, &letters))
}

/// `Σ_{w in Q_n} t^{des(w)} (1+t)^{col(w)} Π x_{w(i)}` over words in
/// `{-m_neg..-1} ∪ {1..m_pos}`, with `x_{-j} = y_j`.
pub fn qn_word_h(n: usize, m_pos: usize, m_neg: usize) -> Result<Poly<MPoly>, SeriesError> {
    check_size(n, m_pos + m_neg)?;
    let letters: Vec<(i64, usize)> = (0..m_pos)
        .map(|i| (i as i64 + 1, i))
        .chain((0..m_neg).map(|j| (-(j as i64) - 1, m_pos + j)))
        .collect();
    Ok(word_sum(n, &letters))
}

/// Conjugate shapes `(λ', μ')` for which the minor of `(e_{i-j})` on `rows` and
/// `cols` equals `det(e_{λ'_a - μ'_b - a + b})`.
pub fn skew_shape(rows: &[usize], cols: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = rows.len();
    let conj = |idx: &[usize]| -> Vec<usize> {
        let mut s: Vec<usize> = idx.to_vec();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s.iter().enumerate().map(|(a, &i)| i + a + 1 - k).collect()
    };
    (conj(rows), conj(cols))
}

fn det(m: &[Vec<MPoly>]) -> MPoly {
    let k = m.len();
    if k == 0 {
        return MPoly::one();
    }
    let mut acc = MPoly::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let sub: Vec<Vec<MPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = entry.mul(&det(&sub));
        acc = if j % 2 == 1 { acc.sub(&term) } else { acc.add(&term) };
    }
    acc
}

/// `det(e_{λ'_a - μ'_b - a + b})_{a,b}` with `e` given as a sequence
/// (`e_j = 0` for `j < 0` or beyond the sequence).
pub fn jacobi_trudi(lambda_conj: &[usize], mu_conj: &[usize], e: &[MPoly]) -> MPoly {
    let k = lambda_conj.len();
    let entry = |a: usize, b: usize| {
        let idx = lambda_conj[a] as i64 - mu_conj.get(b).copied().unwrap_or(0) as i64 - a as i64 + b as i64;
        usize::try_from(idx).ok().and_then(|i| e.get(i).cloned()).unwrap_or_else(MPoly::zero)
    };
    let m: Vec<Vec<MPoly>> = (0..k).map(|a| (0..k).map(|b| entry(a, b)).collect()).collect();
    det(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltmatrix::{gamma_chow, minor, stable_subsets, LTMatrix};
    use crate::toeplitz::toeplitz_family;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn small_symmetric_functions() {
        assert_eq!(elementary(2, &[0, 1]), x(0).mul(&x(1)));
        assert_eq!(complete_homogeneous(2, &[0, 1]), x(0).mul(&x(0)).add(&x(0).mul(&x(1))).add(&x(1).mul(&x(1))));
        assert_eq!(elementary(3, &[0, 1]), MPoly::zero());
        let s = super_elementary(2, 1, 1);
        assert_eq!(s.coeff(1), x(0).add(&x(1)));
        assert_eq!(s.coeff(2), x(0).mul(&x(1)).add(&x(1).mul(&x(1))));
    }

    #[test]
    fn smirnov_examples() {
        let h = smirnov_h(2, 3).unwrap();
        let e2 = elementary(2, &[0, 1, 2]);
        assert_eq!(h, Poly::new(vec![e2.clone(), e2]));
        assert_eq!(smirnov_h(1, 3).unwrap(), Poly::constant(elementary(1, &[0, 1, 2])));
        assert!(smirnov_h(7, 2).is_err());
    }

    #[test]
    fn qn_examples() {
        let y2 = x(0).mul(&x(0));
        assert_eq!(qn_word_h(2, 0, 1).unwrap(), Poly::new(vec![y2.clone(), y2]));
        assert_eq!(qn_word_h(3, 2, 0).unwrap(), smirnov_h(3, 2).unwrap());
    }

    #[test]
    fn words_match_matrix_route() {
        for (p, q) in [(2, 0), (0, 2), (1, 1), (2, 1)] {
            let fam = toeplitz_family(&super_elementary(4, p, q)).unwrap();
            for n in 0..=4 {
                assert_eq!(qn_word_h(n, p, q).unwrap(), fam.h[n], "n = {n}, m = ({p}, {q})");
            }
        }
    }

    #[test]
    fn gamma_as_skew_schur_sums() {
        let e = super_elementary(4, 1, 1);
        let r = LTMatrix::toeplitz(e.coeffs()).unwrap();
        for n in 0..=4 {
            let g = gamma_chow(&r, n, false).unwrap();
            let mut sums = vec![MPoly::zero(); g.entries().len()];
            for s in stable_subsets(n, true) {
                let rows: Vec<usize> = s.iter().copied().chain([n]).collect();
                let cols: Vec<usize> = [0].into_iter().chain(s.iter().copied()).collect();
                let (lc, mc) = skew_shape(&rows, &cols);
                let jt = jacobi_trudi(&lc, &mc, e.coeffs());
                assert_eq!(jt, minor(&r, &rows, &cols).unwrap());
                sums[s.len()] = sums[s.len()].add(&jt);
            }
            assert_eq!(sums, g.entries());
            assert!(g.entries().iter().all(Ring::is_nonnegative));
        }
    }
}
