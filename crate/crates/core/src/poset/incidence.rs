use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{Poset, PosetError};
use crate::poly::{Poly, Ring};

/// Function on the intervals `x <= y` of a host poset with values in `R[t]`.
#[derive(Clone, Debug)]
pub struct IncidenceFunction<R: Ring> {
    host: Arc<Poset>,
    values: Vec<Poly<R>>,
}

impl<R: Ring> PartialEq for IncidenceFunction<R> {
    fn eq(&self, other: &Self) -> bool {
        self.same_host(other) && self.values == other.values
    }
}

impl<R: Ring> IncidenceFunction<R> {
    pub fn zero(host: Arc<Poset>) -> Self {
        let n = host.len();
        IncidenceFunction { host, values: vec![Poly::zero(); n * n] }
    }

    pub fn from_fn(host: Arc<Poset>, mut f: impl FnMut(usize, usize) -> Poly<R>) -> Self {
        let mut out = Self::zero(host);
        let n = out.host.len();
        for x in 0..n {
            for y in 0..n {
                if out.host.leq(x, y) {
                    out.values[x * n + y] = f(x, y);
                }
            }
        }
        out
    }

    pub fn delta(host: Arc<Poset>) -> Self {
        Self::from_fn(host, |x, y| if x == y { Poly::one() } else { Poly::zero() })
    }

    pub fn zeta(host: Arc<Poset>) -> Self {
        Self::from_fn(host, |_, _| Poly::one())
    }

    pub fn host(&self) -> &Arc<Poset> {
        &self.host
    }

    pub fn same_host(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.host, &other.host) || *self.host == *other.host
    }

    pub fn get(&self, x: usize, y: usize) -> &Poly<R> {
        &self.values[x * self.host.len() + y]
    }

    /// Set the value on `[x, y]`; panics unless `x <= y`.
    pub fn set(&mut self, x: usize, y: usize, value: Poly<R>) {
        assert!(self.host.leq(x, y), "incidence functions live on intervals");
        let n = self.host.len();
        self.values[x * n + y] = value;
    }

    /// Every value is a constant.
    pub fn is_scalar(&self) -> bool {
        self.values.iter().all(|p| p.degree().unwrap_or(0) == 0)
    }

    /// Transport to a poset whose element `i` is element `map[i]` here.
    pub fn restrict(&self, host: Arc<Poset>, map: &[usize]) -> Self {
        Self::from_fn(host, |i, j| self.get(map[i], map[j]).clone())
    }

    fn name_pair(&self, x: usize, y: usize) -> (String, String) {
        (self.host.name(x).to_string(), self.host.name(y).to_string())
    }

    /// `ℐ(f)_{x,y} = t^{ρ(x,y)} f_{x,y}(1/t)`; requires `deg f_{x,y} <= ρ(x,y)`.
    pub fn reciprocal(&self) -> Result<Self, PosetError> {
        let n = self.host.len();
        let mut out = Self::zero(self.host.clone());
        for x in 0..n {
            for y in 0..n {
                if let Some(r) = self.host.rank(x, y) {
                    out.values[x * n + y] = self.get(x, y).reciprocal(r).map_err(|_| {
                        let (x, y) = self.name_pair(x, y);
                        PosetError::DegreeExceedsRank { x, y, rank: r }
                    })?;
                }
            }
        }
        Ok(out)
    }

    pub fn map_values(&self, f: impl Fn(usize, usize, &Poly<R>) -> Poly<R>) -> Self {
        Self::from_fn(self.host.clone(), |x, y| f(x, y, self.get(x, y)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PosetError> {
        if !self.same_host(other) {
            return Err(PosetError::HostMismatch);
        }
        Ok(self.map_values(|x, y, v| v - other.get(x, y)))
    }

    /// `{"[i,j]": coefficient array}` over comparable pairs.
    pub fn to_json(&self) -> Value {
        let n = self.host.len();
        let mut map = Map::new();
        for x in 0..n {
            for y in 0..n {
                if self.host.leq(x, y) {
                    map.insert(format!("[{x},{y}]"), self.get(x, y).to_json());
                }
            }
        }
        json!(map)
    }

    /// Parse `{"[i,j]": value}` where a value is a coefficient (scalar) or a
    /// coefficient array. Missing pairs default to the zeta function.
    pub fn from_json(host: Arc<Poset>, value: &Value) -> Result<Self, PosetError> {
        let map = value
            .as_object()
            .ok_or_else(|| PosetError::Schema("g must be a map from \"[i,j]\" to values".into()))?;
        let mut g = Self::zeta(host);
        let n = g.host.len();
        for (key, v) in map {
            let idx: Vec<usize> = key
                .trim()
                .trim_start_matches('[')
                .trim_end_matches(']')
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| PosetError::Schema(format!("g key {key:?} is not of the form \"[i,j]\"")))?;
            let [x, y] = idx[..] else {
                return Err(PosetError::Schema(format!("g key {key:?} is not of the form \"[i,j]\"")));
            };
            if x >= n || y >= n || !g.host.leq(x, y) {
                return Err(PosetError::Schema(format!("g key {key:?} is not an interval of the poset")));
            }
            let poly = match v {
                Value::Array(_) => Poly::from_json(v),
                _ => R::from_json(v).map(Poly::constant),
            }
            .map_err(|e| PosetError::Schema(format!("g value at {key:?}: {e}")))?;
            g.set(x, y, poly);
        }
        Ok(g)
    }
}

/// `(fg)_{x,y} = Σ_{x <= z <= y} f_{x,z} g_{z,y}`.
pub fn convolve<R: Ring>(f: &IncidenceFunction<R>, g: &IncidenceFunction<R>) -> Result<IncidenceFunction<R>, PosetError> {
    if !f.same_host(g) {
        return Err(PosetError::HostMismatch);
    }
    let host = f.host.clone();
    let mut out = IncidenceFunction::zero(host.clone());
    let n = host.len();
    for x in 0..n {
        let up = host.up_set(x);
        for &y in &up {
            let mut acc = Poly::zero();
            for &z in &up {
                if host.leq(z, y) {
                    let a = f.get(x, z);
                    if !a.is_zero() {
                        acc = &acc + &(a * g.get(z, y));
                    }
                }
            }
            out.values[x * n + y] = acc;
        }
    }
    Ok(out)
}

/// Two-sided convolution inverse; the diagonal values must be units of `R`.
pub fn invert<R: Ring>(f: &IncidenceFunction<R>) -> Result<IncidenceFunction<R>, PosetError> {
    let host = f.host.clone();
    let n = host.len();
    let mut diag_inv = Vec::with_capacity(n);
    for x in 0..n {
        let d = f.get(x, x);
        let inv = match d.degree() {
            Some(0) => d.coeff(0).unit_inverse(),
            _ => None,
        };
        diag_inv.push(inv.ok_or_else(|| PosetError::NonUnitDiagonal { x: host.name(x).to_string() })?);
    }
    let mut out = IncidenceFunction::zero(host.clone());
    for x in 0..n {
        let up = host.up_set(x);
        for (i, &y) in up.iter().enumerate() {
            if y == x {
                out.values[x * n + x] = Poly::constant(diag_inv[x].clone());
                continue;
            }
            // Σ_{x <= z <= y} inv_{x,z} f_{z,y} = 0, solved for inv_{x,y}.
            let mut acc = Poly::zero();
            for &z in &up[..i] {
                if host.leq(z, y) {
                    acc = &acc + &(out.get(x, z) * f.get(z, y));
                }
            }
            out.values[x * n + y] = (-acc).scale(&diag_inv[y]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qi, Q};
    use crate::poset::{boolean_algebra, chain};

    #[test]
    fn identity_and_interval_counts() {
        let p = Arc::new(chain(2));
        let delta = IncidenceFunction::<Q>::delta(p.clone());
        let zeta = IncidenceFunction::<Q>::zeta(p.clone());
        assert_eq!(convolve(&delta, &zeta).unwrap(), zeta);
        let zz = convolve(&zeta, &zeta).unwrap();
        assert_eq!(zz.get(0, 2), &Poly::constant(qi(3)));
    }

    #[test]
    fn mobius_of_boolean() {
        let p = Arc::new(boolean_algebra(2));
        let zeta = IncidenceFunction::<Q>::zeta(p.clone());
        let mu = invert(&zeta).unwrap();
        assert_eq!(mu.get(0, 3), &Poly::constant(qi(1)));
        assert_eq!(mu.get(0, 1), &Poly::constant(qi(-1)));
        assert_eq!(convolve(&mu, &zeta).unwrap(), IncidenceFunction::delta(p.clone()));
        assert_eq!(convolve(&zeta, &mu).unwrap(), IncidenceFunction::delta(p.clone()));
        let delta = IncidenceFunction::<Q>::delta(p);
        assert_eq!(invert(&delta).unwrap(), delta);
    }

    #[test]
    fn non_unit_diagonal() {
        let p = Arc::new(chain(1));
        let mut f = IncidenceFunction::<Q>::zeta(p);
        f.set(0, 0, Poly::constant(qi(0)));
        assert!(matches!(invert(&f), Err(PosetError::NonUnitDiagonal { .. })));
    }

    #[test]
    fn host_mismatch() {
        let a = IncidenceFunction::<Q>::zeta(Arc::new(chain(1)));
        let b = IncidenceFunction::<Q>::zeta(Arc::new(chain(2)));
        assert_eq!(convolve(&a, &b), Err(PosetError::HostMismatch));
    }
}
