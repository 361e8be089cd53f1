use serde_json::{json, Value};

use super::{BivariateSeries, SeriesError, TruncatedSeries};
use crate::ltmatrix::{chow_family, delete_index, ChowFamily, LTMatrix};
use crate::poly::{format_rational, qi, Field, Poly, Ring, Q};

/// The generating functions `D, H, A, G` of the four families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowSeries<R: Ring> {
    pub d: BivariateSeries<R>,
    pub h: BivariateSeries<R>,
    pub a: BivariateSeries<R>,
    pub g: BivariateSeries<R>,
}

impl<R: Ring> ChowSeries<R> {
    pub fn order(&self) -> usize {
        self.h.order()
    }

    /// Coefficientwise equality with a matrix family on `0..=order`.
    pub fn matches(&self, fam: &ChowFamily<R>) -> bool {
        let n = self.order();
        fam.h.len() > n
            && (0..=n).all(|i| {
                self.d.coeff(i) == &fam.d[i]
                    && self.h.coeff(i) == &fam.h[i]
                    && self.a.coeff(i) == &fam.a[i]
                    && self.g.coeff(i) == &fam.g[i]
            })
    }

    fn weight(&self, w: impl Fn(usize) -> R + Copy) -> Self {
        ChowSeries { d: self.d.weight(w), h: self.h.weight(w), a: self.a.weight(w), g: self.g.weight(w) }
    }

    pub fn to_json(&self) -> Value {
        json!({ "D": self.d.to_json(), "H": self.h.to_json(), "A": self.a.to_json(), "G": self.g.to_json() })
    }
}

fn check_a0<R: Ring>(f: &TruncatedSeries<R>) -> Result<(), SeriesError> {
    if f.coeff(0).is_one() {
        Ok(())
    } else {
        Err(SeriesError::A0 { found: f.coeff(0).to_string() })
    }
}

fn t<R: Ring>() -> Poly<R> {
    Poly::t_pow(1)
}

/// `(f(tz) - t f(z)) / (1 - t)` and its inverse `D(z, t)`.
fn kernel_inverse<R: Ring>(f: &TruncatedSeries<R>) -> Result<BivariateSeries<R>, SeriesError> {
    f.scale_t().sub(&f.lift().scale_poly(&t())).div_one_minus_t()?.invert()
}

/// `num / (f(tz) - t f(z))`, dividing `num` by `1 - t` exactly first.
fn over_kernel<R: Ring>(num: &BivariateSeries<R>, dinv: &BivariateSeries<R>) -> Result<BivariateSeries<R>, SeriesError> {
    Ok(num.div_one_minus_t()?.mul(dinv))
}

/// `D = (1-t)/(f(tz) - t f(z))`, `H = f(z) D`, `A = f(tz) D`, `G = f(tz) f(z) D`.
pub fn chow_series<R: Ring>(f: &TruncatedSeries<R>) -> Result<ChowSeries<R>, SeriesError> {
    check_a0(f)?;
    let order = f.order();
    let (fz, ft) = (f.lift(), f.scale_t());
    let d = kernel_inverse(f)?;
    let h = fz.mul(&d);
    let a = ft.mul(&d);
    let g = ft.mul(&fz).mul(&d);
    let one_minus_t = BivariateSeries::constant(&Poly::one() - &t(), order);
    if a != one_minus_t.add(&h.scale_poly(&t())) {
        return Err(SeriesError::Identity("A = 1 - t + t H".into()));
    }
    Ok(ChowSeries { d, h, a, g })
}

/// Families of the matrices `R(n, k)`, obtained from the Toeplitz matrix of
/// `f` by deleting the indices `n, ..., n + k - 1`. With
/// `f_k(z) = Σ_j a_{k+j} z^j` and `E = f(tz) - t f(z)`:
/// `D = 1 + zt (f_{k+1}(z) - f_{k+1}(tz)) / E`, `H = 1 + (f_k(z) - f_k(tz)) / E`,
/// `A = 1 + t ((f_k(z) - a_k) f(tz) - (f_k(tz) - a_k) f(z)) / E`,
/// `G = 1 + ((f_k(z) - a_k) f(tz) - t (f_k(tz) - a_k) f(z)) / E`.
/// The result has order `N - k`.
pub fn truncated_family_series<R: Ring>(f: &TruncatedSeries<R>, k: usize) -> Result<ChowSeries<R>, SeriesError> {
    check_a0(f)?;
    if k == 0 {
        return Err(SeriesError::Schema("k must be positive".into()));
    }
    let fk = f.tail(k)?;
    let m = fk.order();
    let f = f.truncate(m);
    let fk1 = TruncatedSeries::from_poly(&fk.coeffs()[1..], m);
    let dinv = kernel_inverse(&f)?;
    let one = BivariateSeries::constant(Poly::one(), m);
    let (fz, ft) = (f.lift(), f.scale_t());

    let d_num = fk1.lift().sub(&fk1.scale_t()).mul_z().scale_poly(&t());
    let h_num = fk.lift().sub(&fk.scale_t());
    let ak = BivariateSeries::constant(Poly::constant(fk.coeff(0)), m);
    let (fkz, fkt) = (fk.lift().sub(&ak), fk.scale_t().sub(&ak));
    let a_num = fkz.mul(&ft).sub(&fkt.mul(&fz)).scale_poly(&t());
    let g_num = fkz.mul(&ft).sub(&fkt.mul(&fz).scale_poly(&t()));
    Ok(ChowSeries {
        d: one.add(&over_kernel(&d_num, &dinv)?),
        h: one.add(&over_kernel(&h_num, &dinv)?),
        a: one.add(&over_kernel(&a_num, &dinv)?),
        g: one.add(&over_kernel(&g_num, &dinv)?),
    })
}

/// The same families by deleting indices from the Toeplitz matrix and running
/// the matrix recursions, for `n <= N - k`.
pub fn truncated_family_via_deletion<R: Ring>(f: &TruncatedSeries<R>, k: usize) -> Result<ChowSeries<R>, SeriesError> {
    check_a0(f)?;
    if k == 0 || k > f.order() {
        return Err(SeriesError::Order { k, order: f.order() });
    }
    let m = f.order() - k;
    let mut fam: [Vec<Poly<R>>; 4] = Default::default();
    for n in 0..=m {
        let mut r = LTMatrix::toeplitz(&f.coeffs()[..=n + k]).map_err(|e| SeriesError::Schema(e.to_string()))?;
        for _ in 0..k {
            r = delete_index(&r, n).map_err(|e| SeriesError::Schema(e.to_string()))?;
        }
        let c = chow_family(&r).map_err(|e| SeriesError::Identity(e.to_string()))?;
        for (slot, v) in fam.iter_mut().zip([&c.d, &c.h, &c.a, &c.g]) {
            slot.push(v[n].clone());
        }
    }
    let [d, h, a, g] = fam.map(BivariateSeries::new);
    Ok(ChowSeries { d, h, a, g })
}

/// Family of the Toeplitz matrix `(a_{n-k})`.
pub fn toeplitz_family<R: Ring>(f: &TruncatedSeries<R>) -> Result<ChowFamily<R>, SeriesError> {
    let r = LTMatrix::toeplitz(f.coeffs()).map_err(|e| match e {
        crate::ltmatrix::MatrixError::Diagonal { .. } => SeriesError::A0 { found: f.coeff(0).to_string() },
        e => SeriesError::Schema(e.to_string()),
    })?;
    chow_family(&r).map_err(|e| SeriesError::Identity(e.to_string()))
}

/// `e^{γz} Π (1 + α_i z) / Π (1 - β_i z)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PFData {
    pub gamma: Q,
    pub alphas: Vec<Q>,
    pub betas: Vec<Q>,
}

impl PFData {
    pub fn to_json(&self) -> Value {
        json!({
            "gamma": format_rational(&self.gamma),
            "alphas": self.alphas.iter().map(format_rational).collect::<Vec<_>>(),
            "betas": self.betas.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let num = |x: &Value, field: &str| Q::from_json(x).map_err(|e| SeriesError::Schema(format!("{field}: {e}")));
        let list = |field: &str| -> Result<Vec<Q>, SeriesError> {
            match v.get(field) {
                None => Ok(Vec::new()),
                Some(Value::Array(xs)) => xs.iter().map(|x| num(x, field)).collect(),
                Some(_) => Err(SeriesError::Schema(format!("{field} must be an array"))),
            }
        };
        Ok(PFData {
            gamma: v.get("gamma").map(|x| num(x, "gamma")).transpose()?.unwrap_or_else(|| qi(0)),
            alphas: list("alphas")?,
            betas: list("betas")?,
        })
    }
}

pub fn pf_series(p: &PFData, order: usize) -> Result<TruncatedSeries<Q>, SeriesError> {
    let neg = |name: &str, x: &Q| (!x.is_nonnegative()).then(|| SeriesError::NegativeParameter(format!("{name} = {}", format_rational(x))));
    if let Some(e) = neg("gamma", &p.gamma) {
        return Err(e);
    }
    for (i, x) in p.alphas.iter().enumerate() {
        if let Some(e) = neg(&format!("alphas[{i}]"), x) {
            return Err(e);
        }
    }
    for (i, x) in p.betas.iter().enumerate() {
        if let Some(e) = neg(&format!("betas[{i}]"), x) {
            return Err(e);
        }
    }
    let mut exp = vec![qi(1)];
    for n in 1..=order {
        exp.push(exp[n - 1].mul(&p.gamma).div(&qi(n as i64)).unwrap());
    }
    let mut f = TruncatedSeries::new(exp);
    for a in &p.alphas {
        f = f.mul(&TruncatedSeries::from_poly(&[qi(1), a.clone()], order));
    }
    for b in &p.betas {
        let geom: Vec<Q> = (0..=order).scan(qi(1), |acc, _| {
            let cur = acc.clone();
            *acc = acc.mul(b);
            Some(cur)
        }).collect();
        f = f.mul(&TruncatedSeries::new(geom));
    }
    Ok(f)
}

fn check_factorial(b: &[Q]) -> Result<(), SeriesError> {
    if b.len() < 2 || !b[0].is_one() || !b[1].is_one() {
        return Err(SeriesError::FactorialStart);
    }
    match b.iter().position(|x| x.is_zero()) {
        Some(n) => Err(SeriesError::ZeroFactorial { n }),
        None => Ok(()),
    }
}

fn reciprocal_series(b: &[Q]) -> TruncatedSeries<Q> {
    TruncatedSeries::new(b.iter().map(|x| x.inv().unwrap()).collect())
}

/// Families of a binomial poset with factorial function `B`:
/// `Σ H_n z^n / B(n) = (1-t) b(z) / (b(tz) - t b(z))` with `b = Σ z^n / B(n)`, and
/// likewise for `D, A, G`. The returned coefficients are the `H_n` themselves.
pub fn binomial_series(b: &[Q]) -> Result<ChowSeries<Q>, SeriesError> {
    check_factorial(b)?;
    let s = chow_series(&reciprocal_series(b))?;
    Ok(s.weight(|n| b[n].clone()))
}

/// Families of a Sheffer poset with factorial functions `B` and `C`. With
/// `E = b(tz) - t b(z)`, the scaled series `Σ F_n z^n / C(n)` are
/// `D = 1 + ((1-t) - (c(tz) - t c(z))) / E`,
/// `H = ((1-t) b(z) + c(z) b(tz) - c(tz) b(z)) / E`,
/// `A = 1 + t (c(z) - c(tz)) / E` and `G = (c(z) b(tz) - t b(z) c(tz)) / E`.
pub fn sheffer_series(b: &[Q], c: &[Q]) -> Result<ChowSeries<Q>, SeriesError> {
    check_factorial(b)?;
    check_factorial(c)?;
    let order = b.len().min(c.len()) - 1;
    let bs = reciprocal_series(&b[..=order]);
    let cs = reciprocal_series(&c[..=order]);
    let dinv = kernel_inverse(&bs)?;
    let one = BivariateSeries::constant(Poly::one(), order);
    let one_minus_t = BivariateSeries::constant(&Poly::one() - &t(), order);
    let (bz, bt, cz, ct) = (bs.lift(), bs.scale_t(), cs.lift(), cs.scale_t());
    let d_num = one_minus_t.sub(&ct.sub(&cz.scale_poly(&t())));
    let h_num = one_minus_t.mul(&bz).add(&cz.mul(&bt)).sub(&ct.mul(&bz));
    let a_num = cz.sub(&ct).scale_poly(&t());
    let g_num = cz.mul(&bt).sub(&bz.mul(&ct).scale_poly(&t()));
    let s = ChowSeries {
        d: one.add(&over_kernel(&d_num, &dinv)?),
        h: over_kernel(&h_num, &dinv)?,
        a: one.add(&over_kernel(&a_num, &dinv)?),
        g: over_kernel(&g_num, &dinv)?,
    };
    Ok(s.weight(|n| c[n].clone()))
}

/// `r_{n,0} = 1` and `r_{n,k} = C(n) / (C(k) B(n-k))` for `0 < k <= n`.
pub fn sheffer_matrix(b: &[Q], c: &[Q]) -> Result<LTMatrix<Q>, SeriesError> {
    check_factorial(b)?;
    check_factorial(c)?;
    let order = b.len().min(c.len()) - 1;
    LTMatrix::from_fn(order, |n, k| if k == 0 { qi(1) } else { c[n].div(&c[k].mul(&b[n - k])).unwrap() })
        .map_err(|e| SeriesError::Schema(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltmatrix::chow_family;
    use crate::poly::q;

    fn s(c: &[i64]) -> TruncatedSeries<Q> {
        TruncatedSeries::new(c.iter().map(|&x| qi(x)).collect())
    }

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::from_i64s(c)
    }

    #[test]
    fn geometric_series() {
        let f = s(&[1; 7]);
        let cs = chow_series(&f).unwrap();
        for n in 1..=6 {
            assert_eq!(cs.h.coeff(n), &Poly::one_plus_t_pow(n - 1));
        }
        assert!(cs.matches(&toeplitz_family(&f).unwrap()));
    }

    #[test]
    fn linear_series_collapses() {
        let cs = chow_series(&s(&[1, 1, 0, 0, 0])).unwrap();
        assert_eq!(cs.h.coeffs(), &[p(&[1]), p(&[1]), p(&[]), p(&[]), p(&[])][..]);
        assert!(matches!(chow_series(&s(&[0, 1])), Err(SeriesError::A0 { .. })));
    }

    #[test]
    fn truncated_family_geometric() {
        let f = s(&[1; 8]);
        for k in 1..=3 {
            let a = truncated_family_series(&f, k).unwrap();
            let b = truncated_family_via_deletion(&f, k).unwrap();
            assert_eq!(a, b, "k = {k}");
        }
        let finite = s(&[1, 1, 0, 0, 0, 0]);
        let tf = truncated_family_series(&finite, 2).unwrap();
        assert!(tf.h.coeffs().iter().skip(1).all(Poly::is_zero));
    }

    #[test]
    fn pf_examples() {
        let two_alpha = PFData { alphas: vec![qi(1), qi(1)], ..Default::default() };
        let f = pf_series(&two_alpha, 4).unwrap();
        assert_eq!(f, s(&[1, 2, 1, 0, 0]));
        assert_eq!(chow_series(&f).unwrap().h.coeff(2), &p(&[1, 1]));
        let geo = PFData { betas: vec![qi(1)], ..Default::default() };
        assert_eq!(pf_series(&geo, 3).unwrap(), s(&[1, 1, 1, 1]));
        let exp = PFData { gamma: qi(1), ..Default::default() };
        let h = chow_series(&pf_series(&exp, 4).unwrap()).unwrap();
        assert_eq!(h.h.coeff(3).scale(&qi(6)), p(&[1, 4, 1]));
        let bad = PFData { alphas: vec![qi(-1)], ..Default::default() };
        assert!(matches!(pf_series(&bad, 3), Err(SeriesError::NegativeParameter(_))));
    }

    #[test]
    fn binomial_factorial_is_eulerian() {
        let fact: Vec<Q> = (0..=5).map(|n| qi((1..=n).product::<i64>().max(1))).collect();
        let bs = binomial_series(&fact).unwrap();
        assert_eq!(bs.h.coeff(3), &p(&[1, 4, 1]));
        assert_eq!(bs.h.coeff(1), &p(&[1]));
        assert!(bs.matches(&chow_family(&LTMatrix::pascal(5)).unwrap()));
    }

    #[test]
    fn sheffer_cubical() {
        let fact = |n: i64| (1..=n).product::<i64>().max(1);
        let b: Vec<Q> = (0..=5).map(|n| qi(fact(n))).collect();
        let c: Vec<Q> = (0..=5).map(|n| if n == 0 { qi(1) } else { qi((1 << (n - 1)) * fact(n - 1)) }).collect();
        let m = sheffer_matrix(&b, &c).unwrap();
        assert_eq!((m.get(3, 1), m.get(3, 2)), (&qi(4), &qi(4)));
        let fam = chow_family(&m).unwrap();
        assert_eq!(fam.h[3], p(&[1, 5, 1]));
        assert!(sheffer_series(&b, &c).unwrap().matches(&fam));
        assert_eq!(sheffer_series(&b, &b).unwrap(), binomial_series(&b).unwrap());
    }

    #[test]
    fn cubical_shifted_series() {
        // Σ H_{n+1} z^n / (r^n n!) = (e^{z/r + tz} - t e^{tz/r + z}) / (e^{tz} - t e^z), r = 2
        let order = 4;
        let fact = |n: i64| (1..=n).product::<i64>().max(1);
        let b: Vec<Q> = (0..=order + 1).map(|n| qi(fact(n))).collect();
        let c: Vec<Q> = (0..=order + 1).map(|n| if n == 0 { qi(1) } else { qi((1 << (n - 1)) * fact(n - 1)) }).collect();
        let fam = chow_family(&sheffer_matrix(&b, &c).unwrap()).unwrap();
        let exp_poly = |x: &Poly<Q>, y: &Poly<Q>| {
            // e^{xz} for x a polynomial in t, truncated
            let mut v = vec![Poly::one()];
            let mut pw = Poly::one();
            for n in 1..=order as usize {
                pw = &pw * x;
                v.push(pw.scale(&q(1, fact(n as i64))));
            }
            let _ = y;
            BivariateSeries::new(v)
        };
        let half = Poly::constant(q(1, 2));
        let tt = Poly::t_pow(1);
        let e = |x: Poly<Q>| exp_poly(&x, &tt);
        let num = e(&half + &tt).sub(&e(&tt.scale(&q(1, 2)) + &Poly::one()).scale_poly(&tt));
        let den = e(tt.clone()).sub(&e(Poly::one()).scale_poly(&tt));
        let rhs = num.div_one_minus_t().unwrap().mul(&den.div_one_minus_t().unwrap().invert().unwrap());
        for n in 0..=order as usize {
            let lhs = fam.h[n + 1].scale(&q(1, (1 << n) * fact(n as i64)));
            assert_eq!(&lhs, rhs.coeff(n), "n = {n}");
        }
    }

    #[test]
    fn affine_shifted_series_low_order() {
        // Σ H_{n+1} z^n / (q^n (n)!) = (e_q(z/q) e_q(tz) - t e_q(tz/q) e_q(z)) / (e_q(tz) - t e_q(z)), q = 2
        let order = 3usize;
        let qn = |n: usize| -> Q { (0..n).map(|i| qi(1 << i)).fold(qi(0), |a, b| a + b) };
        let qfact = |n: usize| -> Q { (1..=n).map(qn).fold(qi(1), |a, b| a * b) };
        let b: Vec<Q> = (0..=order + 1).map(qfact).collect();
        let c: Vec<Q> = (0..=order + 1).map(|n| if n == 0 { qi(1) } else { qi(1 << (n - 1)) * qfact(n - 1) }).collect();
        let fam = chow_family(&sheffer_matrix(&b, &c).unwrap()).unwrap();
        let eq = |scale: Q, with_t: bool| {
            BivariateSeries::new(
                (0..=order)
                    .map(|n| {
                        let mut coef = qi(1) / qfact(n);
                        for _ in 0..n {
                            coef *= scale.clone();
                        }
                        Poly::monomial(coef, if with_t { n } else { 0 })
                    })
                    .collect(),
            )
        };
        let tt = Poly::t_pow(1);
        let num = eq(q(1, 2), false).mul(&eq(qi(1), true)).sub(&eq(q(1, 2), true).mul(&eq(qi(1), false)).scale_poly(&tt));
        let den = eq(qi(1), true).sub(&eq(qi(1), false).scale_poly(&tt));
        let rhs = num.div_one_minus_t().unwrap().mul(&den.div_one_minus_t().unwrap().invert().unwrap());
        for n in 0..=1 {
            let lhs = fam.h[n + 1].scale(&(qi(1) / (qi(1 << n) * qfact(n))));
            assert_eq!(&lhs, rhs.coeff(n), "n = {n}");
        }
    }
}
