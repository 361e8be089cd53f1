use std::sync::OnceLock;

use super::incidence::{convolve, invert, IncidenceFunction};
use super::PosetError;
use crate::poly::{Poly, Ring};

/// `g_{x,x} = 1` and `deg g_{x,y} < ρ(x,y)/2` for `x < y`.
pub fn check_kls<R: Ring>(g: &IncidenceFunction<R>) -> Result<(), PosetError> {
    let p = g.host();
    let err = |x: usize, y: usize, reason: String| PosetError::Kls {
        x: p.name(x).to_string(),
        y: p.name(y).to_string(),
        reason,
    };
    for x in 0..p.len() {
        if *g.get(x, x) != Poly::one() {
            return Err(err(x, x, "diagonal value is not 1".into()));
        }
        for y in 0..p.len() {
            if let (true, Some(r)) = (p.lt(x, y), p.rank(x, y)) {
                if let Some(d) = g.get(x, y).degree() {
                    if 2 * d >= r {
                        return Err(err(x, y, format!("degree {d} is not below rank {r} / 2")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `κ = g⁻¹ ℐ(g)`.
pub fn kernel_from_g<R: Ring>(g: &IncidenceFunction<R>) -> Result<IncidenceFunction<R>, PosetError> {
    check_kls(g)?;
    convolve(&invert(g)?, &g.reciprocal()?)
}

/// `H = (-κ̄)⁻¹` with `κ̄ = (κ - tδ)/(t - 1)`.
pub fn chow_via_kernel<R: Ring>(g: &IncidenceFunction<R>) -> Result<IncidenceFunction<R>, PosetError> {
    let kappa = kernel_from_g(g)?;
    let host = kappa.host().clone();
    let t = Poly::t_pow(1);
    let mut neg_reduced = IncidenceFunction::zero(host.clone());
    for x in 0..host.len() {
        for y in host.up_set(x) {
            let mut v = kappa.get(x, y).clone();
            if x == y {
                v = &v - &t;
            }
            let q = v.div_by_t_minus_one().ok_or_else(|| PosetError::NotDivisible {
                x: host.name(x).to_string(),
                y: host.name(y).to_string(),
            })?;
            neg_reduced.set(x, y, -q);
        }
    }
    invert(&neg_reduced)
}

/// `H_{x,·}` and `d_{x,·}` from
/// `d_{x,y} = t S_{ρ-1}(Σ_{x<=z<y} d_{x,z} g_{z,y})`, `H = d g`.
/// Entries for `y` not above `x` are zero. `g` is assumed KLS-valid.
pub fn chow_row<R: Ring>(g: &IncidenceFunction<R>, x: usize) -> (Vec<Poly<R>>, Vec<Poly<R>>) {
    row_recursion(g, x, |r| r - 1)
}

/// `G_{x,·}` and `A_{x,·}` from
/// `A_{x,y} = t S_ρ(Σ_{x<=z<y} A_{x,z} g_{z,y})`, `G = A g`.
pub fn aug_row<R: Ring>(g: &IncidenceFunction<R>, x: usize) -> (Vec<Poly<R>>, Vec<Poly<R>>) {
    row_recursion(g, x, |r| r)
}

fn row_recursion<R: Ring>(
    g: &IncidenceFunction<R>,
    x: usize,
    center: impl Fn(usize) -> usize,
) -> (Vec<Poly<R>>, Vec<Poly<R>>) {
    let p = g.host();
    let n = p.len();
    let mut total = vec![Poly::zero(); n];
    let mut low = vec![Poly::zero(); n];
    let up = p.up_set(x);
    for (i, &y) in up.iter().enumerate() {
        if y == x {
            low[y] = Poly::one();
            total[y] = g.get(x, x).clone();
            continue;
        }
        let mut s = Poly::zero();
        for &z in &up[..i] {
            if p.leq(z, y) && !low[z].is_zero() {
                s = &s + &(&low[z] * g.get(z, y));
            }
        }
        let r = p.rank(x, y).unwrap();
        let v = s.s_op(center(r)).expect("sum has degree within the weak rank").shift(1);
        total[y] = &s + &v;
        low[y] = v;
    }
    (total, low)
}

fn assemble<R: Ring>(
    g: &IncidenceFunction<R>,
    row: impl Fn(&IncidenceFunction<R>, usize) -> (Vec<Poly<R>>, Vec<Poly<R>>),
) -> (IncidenceFunction<R>, IncidenceFunction<R>) {
    let host = g.host().clone();
    let mut total = IncidenceFunction::zero(host.clone());
    let mut low = IncidenceFunction::zero(host.clone());
    for x in 0..host.len() {
        let (t_row, l_row) = row(g, x);
        for y in host.up_set(x) {
            total.set(x, y, t_row[y].clone());
            low.set(x, y, l_row[y].clone());
        }
    }
    (total, low)
}

/// The Chow function `H` and Chow-derangement function `d` of `g`.
pub fn chow_pair<R: Ring>(
    g: &IncidenceFunction<R>,
) -> Result<(IncidenceFunction<R>, IncidenceFunction<R>), PosetError> {
    check_kls(g)?;
    Ok(assemble(g, chow_row))
}

/// The augmented Chow function `G` and Chow-Eulerian function `A` of `g`.
pub fn aug_pair<R: Ring>(
    g: &IncidenceFunction<R>,
) -> Result<(IncidenceFunction<R>, IncidenceFunction<R>), PosetError> {
    check_kls(g)?;
    Ok(assemble(g, aug_row))
}

/// `H_{x,y}` for scalar `g` as a sum over chains `x = z_0 < ... < z_m <= y`
/// of `g_{z_m,y} t^m Π g_{z_{i-1},z_i} [ρ(z_{i-1},z_i) - 1]_t`.
pub fn chow_via_chains<R: Ring>(g: &IncidenceFunction<R>, x: usize, y: usize) -> Result<Poly<R>, PosetError> {
    let p = g.host();
    if !g.is_scalar() {
        let (a, b) = (0..p.len())
            .flat_map(|a| (0..p.len()).map(move |b| (a, b)))
            .find(|&(a, b)| p.leq(a, b) && g.get(a, b).degree().unwrap_or(0) > 0)
            .unwrap();
        return Err(PosetError::NonScalar { x: p.name(a).to_string(), y: p.name(b).to_string() });
    }
    if !p.leq(x, y) {
        return Err(PosetError::Argument(format!("{} is not below {}", p.name(x), p.name(y))));
    }
    let elems = p.interval_elements(x, y);
    // weight[i]: sum over chains from x ending at elems[i]
    let mut weight: Vec<Poly<R>> = vec![Poly::zero(); elems.len()];
    weight[0] = Poly::one();
    for i in 1..elems.len() {
        let z = elems[i];
        let mut acc = Poly::zero();
        for j in 0..i {
            let w = elems[j];
            if p.lt(w, z) && !weight[j].is_zero() {
                let step = Poly::t_integer(p.rank(w, z).unwrap() - 1).shift(1).scale(&g.get(w, z).coeff(0));
                acc = &acc + &(&weight[j] * &step);
            }
        }
        weight[i] = acc;
    }
    Ok(elems
        .iter()
        .zip(&weight)
        .map(|(&z, w)| w.scale(&g.get(z, y).coeff(0)))
        .sum())
}

/// Lazily computed KLS data of a validated `g`.
#[derive(Debug)]
pub struct KlsData<R: Ring> {
    g: IncidenceFunction<R>,
    kernel: OnceLock<IncidenceFunction<R>>,
    chow: OnceLock<(IncidenceFunction<R>, IncidenceFunction<R>)>,
    aug: OnceLock<(IncidenceFunction<R>, IncidenceFunction<R>)>,
}

impl<R: Ring> KlsData<R> {
    pub fn new(g: IncidenceFunction<R>) -> Result<Self, PosetError> {
        check_kls(&g)?;
        g.reciprocal()?;
        Ok(KlsData { g, kernel: OnceLock::new(), chow: OnceLock::new(), aug: OnceLock::new() })
    }

    pub fn g(&self) -> &IncidenceFunction<R> {
        &self.g
    }

    pub fn kernel(&self) -> &IncidenceFunction<R> {
        self.kernel.get_or_init(|| kernel_from_g(&self.g).expect("validated g"))
    }

    pub fn chow(&self) -> &IncidenceFunction<R> {
        &self.chow_pair().0
    }

    pub fn derangement(&self) -> &IncidenceFunction<R> {
        &self.chow_pair().1
    }

    pub fn augmented(&self) -> &IncidenceFunction<R> {
        &self.aug_pair().0
    }

    pub fn eulerian(&self) -> &IncidenceFunction<R> {
        &self.aug_pair().1
    }

    fn chow_pair(&self) -> &(IncidenceFunction<R>, IncidenceFunction<R>) {
        self.chow.get_or_init(|| assemble(&self.g, chow_row))
    }

    fn aug_pair(&self) -> &(IncidenceFunction<R>, IncidenceFunction<R>) {
        self.aug.get_or_init(|| assemble(&self.g, aug_row))
    }
}
