//! Finite weakly ranked posets, their incidence algebra over `R[t]`, and the
//! Kazhdan–Lusztig–Stanley data built from a function `g`: kernel, Chow
//! function `H`, Chow-derangement function `d`, augmented Chow function `G`
//! and Chow-Eulerian function `A`.

mod constructors;
mod incidence;
mod kls;
mod transform;

pub use constructors::{boolean_algebra, chain, paving_extension, partition_lattice, subspace_lattice, GaloisField};
pub use incidence::{convolve, invert, IncidenceFunction};
pub use kls::{
    aug_pair, aug_row, check_kls, chow_pair, chow_row, chow_via_chains, chow_via_kernel, kernel_from_g, KlsData,
};
pub use transform::{augment, Uniformity};

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("relation is not antisymmetric: {a} <= {b} <= {a}")]
    NotAntisymmetric { a: String, b: String },
    #[error("weak-rank {axiom} violated at ({x}, {y})")]
    WeakRank { axiom: &'static str, x: String, y: String },
    #[error("poset has no least element")]
    NoLeastElement,
    #[error("poset is not bounded")]
    NotBounded,
    #[error("rank {rank} is below the required {required}")]
    RankTooSmall { rank: usize, required: usize },
    #[error("incidence functions live on different posets")]
    HostMismatch,
    #[error("diagonal value at {x} is not a unit")]
    NonUnitDiagonal { x: String },
    #[error("g violates the KLS condition on [{x}, {y}]: {reason}")]
    Kls { x: String, y: String, reason: String },
    #[error("g is not scalar on [{x}, {y}]")]
    NonScalar { x: String, y: String },
    #[error("degree of f on [{x}, {y}] exceeds the weak rank {rank}")]
    DegreeExceedsRank { x: String, y: String, rank: usize },
    #[error("kernel value on [{x}, {y}] is not divisible by t - 1")]
    NotDivisible { x: String, y: String },
    #[error("rank selection {0} is outside [1, r-1]")]
    SelectionOutOfRange(usize),
    #[error("elements {a} and {b} of the new corank set are comparable")]
    NotAntichain { a: String, b: String },
    #[error("element {x} has rank {rank} outside ({lo}, {hi})")]
    RankRange { x: String, rank: usize, lo: usize, hi: usize },
    #[error("element {x} of rank <= d lies below no new element")]
    Covering { x: String },
    #[error("{0}")]
    Argument(String),
}

/// How the weak rank of a poset is supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakRankSpec {
    /// Every cover has weight one; all maximal chains of an interval must
    /// have equal length.
    Graded,
    /// `ρ(x, y) = p(y) - p(x)`.
    Potential(Vec<i64>),
    /// Explicit weights `(x, y, w)` on every cover `x ⋖ y`.
    Covers(Vec<(usize, usize, usize)>),
}

/// A finite poset with a closed order relation and a weak rank function
/// `ρ(x, y)` defined for `x <= y`.
#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<bool>,
    rank: Vec<u32>,
    linear: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq && self.rank == other.rank
    }
}

impl Eq for Poset {}

impl Poset {
    /// Build from generating relations `i <= j`; the reflexive-transitive
    /// closure is taken and antisymmetry and the weak-rank axioms checked.
    pub fn from_relation(
        names: Vec<String>,
        relation: &[(usize, usize)],
        weak_rank: WeakRankSpec,
    ) -> Result<Poset, PosetError> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in relation {
            if i >= n || j >= n {
                return Err(PosetError::Schema(format!("relation pair [{i}, {j}] out of range")));
            }
            leq[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::NotAntisymmetric { a: names[i].clone(), b: names[j].clone() });
                }
            }
        }
        let mut p = Poset { names, leq, rank: vec![0; n * n], linear: Vec::new() };
        p.linear = p.compute_linear_extension();
        p.assign_rank(weak_rank)?;
        Ok(p)
    }

    /// Build from an already closed order and a rank potential; used by the
    /// constructors, which produce valid data by construction.
    pub(crate) fn from_closed(names: Vec<String>, leq: Vec<bool>, potential: &[i64]) -> Poset {
        let n = names.len();
        let mut rank = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                if leq[x * n + y] {
                    debug_assert!(x == y || potential[y] > potential[x]);
                    rank[x * n + y] = (potential[y] - potential[x]) as u32;
                }
            }
        }
        let mut p = Poset { names, leq, rank, linear: Vec::new() };
        p.linear = p.compute_linear_extension();
        p
    }

    fn compute_linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let below: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| self.leq(x, y)).count()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&y| below[y]);
        order
    }

    fn assign_rank(&mut self, spec: WeakRankSpec) -> Result<(), PosetError> {
        let n = self.len();
        if let WeakRankSpec::Potential(p) = &spec {
            if p.len() != n {
                return Err(PosetError::Schema(format!("weak_rank has {} entries for {n} elements", p.len())));
            }
            for x in 0..n {
                for y in 0..n {
                    if x != y && self.leq(x, y) {
                        if p[y] <= p[x] {
                            return Err(self.rank_error("positivity", x, y));
                        }
                        self.rank[x * n + y] = (p[y] - p[x]) as u32;
                    }
                }
            }
            return Ok(());
        }
        let covers = self.covers();
        let mut weight: HashMap<(usize, usize), u32> = HashMap::new();
        match spec {
            WeakRankSpec::Graded => {
                for &c in &covers {
                    weight.insert(c, 1);
                }
            }
            WeakRankSpec::Covers(triples) => {
                for (x, y, w) in triples {
                    if x >= n || y >= n {
                        return Err(PosetError::Schema(format!("weak_rank triple [{x}, {y}, {w}] out of range")));
                    }
                    if !covers.contains(&(x, y)) {
                        return Err(PosetError::Schema(format!(
                            "weak_rank triple [{x}, {y}, {w}] is not a cover relation"
                        )));
                    }
                    if w == 0 {
                        return Err(self.rank_error("positivity", x, y));
                    }
                    weight.insert((x, y), w as u32);
                }
                if let Some(&(x, y)) = covers.iter().find(|c| !weight.contains_key(c)) {
                    return Err(PosetError::Schema(format!(
                        "weak_rank is missing the cover ({}, {})",
                        self.names[x], self.names[y]
                    )));
                }
            }
            WeakRankSpec::Potential(_) => unreachable!(),
        }
        // Path sums along covers must not depend on the path.
        let mut up: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for (&(x, y), &w) in &weight {
            up[x].push((y, w));
        }
        for x in 0..n {
            let mut lo: Vec<Option<u32>> = vec![None; n];
            let mut hi: Vec<Option<u32>> = vec![None; n];
            lo[x] = Some(0);
            hi[x] = Some(0);
            for &z in &self.linear {
                let (Some(l), Some(h)) = (lo[z], hi[z]) else { continue };
                for &(y, w) in &up[z] {
                    lo[y] = Some(lo[y].map_or(l + w, |v| v.min(l + w)));
                    hi[y] = Some(hi[y].map_or(h + w, |v| v.max(h + w)));
                }
            }
            for y in 0..n {
                if let (Some(l), Some(h)) = (lo[y], hi[y]) {
                    if l != h {
                        return Err(self.rank_error("additivity", x, y));
                    }
                    self.rank[x * n + y] = l;
                }
            }
        }
        Ok(())
    }

    fn rank_error(&self, axiom: &'static str, x: usize, y: usize) -> PosetError {
        PosetError::WeakRank { axiom, x: self.names[x].clone(), y: self.names[y].clone() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `ρ(x, y)` for `x <= y`.
    pub fn rank(&self, x: usize, y: usize) -> Option<usize> {
        self.leq(x, y).then(|| self.rank[x * self.len() + y] as usize)
    }

    /// Linear extension: `x < y` implies `x` precedes `y`.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// Elements `z` with `x <= z <= y`, in linear-extension order.
    pub fn interval_elements(&self, x: usize, y: usize) -> Vec<usize> {
        self.linear.iter().copied().filter(|&z| self.leq(x, z) && self.leq(z, y)).collect()
    }

    /// Elements `>= x` in linear-extension order.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        self.linear.iter().copied().filter(|&z| self.leq(x, z)).collect()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(x, y)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&y| (0..self.len()).all(|x| self.leq(x, y)))
    }

    pub fn bottom_or_err(&self) -> Result<usize, PosetError> {
        self.bottom().ok_or(PosetError::NoLeastElement)
    }

    /// `(0̂, 1̂)` of a bounded poset.
    pub fn bounds(&self) -> Result<(usize, usize), PosetError> {
        match (self.bottom(), self.top()) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(PosetError::NotBounded),
        }
    }

    /// `ρ(0̂, 1̂)` of a bounded poset.
    pub fn total_rank(&self) -> Result<usize, PosetError> {
        let (b, t) = self.bounds()?;
        Ok(self.rank(b, t).unwrap())
    }

    /// `ρ(0̂, x)`.
    pub fn rank_from_bottom(&self, x: usize) -> Result<usize, PosetError> {
        let b = self.bottom_or_err()?;
        Ok(self.rank(b, x).unwrap())
    }

    /// Every interval has all maximal chains of length `ρ(x, y)`.
    pub fn is_graded(&self) -> bool {
        self.covers().iter().all(|&(x, y)| self.rank(x, y) == Some(1))
    }

    /// Subposet on `elements` (in the given order) with the restricted
    /// order and weak rank.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let m = elements.len();
        let n = self.len();
        let mut leq = vec![false; m * m];
        let mut rank = vec![0; m * m];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                leq[i * m + j] = self.leq(x, y);
                rank[i * m + j] = self.rank[x * n + y];
            }
        }
        let names = elements.iter().map(|&x| self.names[x].clone()).collect();
        let mut p = Poset { names, leq, rank, linear: Vec::new() };
        p.linear = p.compute_linear_extension();
        p
    }

    /// The interval `[x, y]` as a poset, with the list of original indices.
    pub fn interval(&self, x: usize, y: usize) -> (Poset, Vec<usize>) {
        let elems = self.interval_elements(x, y);
        (self.induced(&elems), elems)
    }

    /// Same poset with the weak rank on pairs replaced by `rank(x, y)`.
    pub(crate) fn with_rank(&self, rank: impl Fn(usize, usize) -> usize) -> Poset {
        let n = self.len();
        let mut p = self.clone();
        for x in 0..n {
            for y in 0..n {
                if self.leq(x, y) {
                    p.rank[x * n + y] = rank(x, y) as u32;
                }
            }
        }
        p
    }

    /// Order-reversed poset with `ρ*(x, y) = ρ(y, x)`.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        let mut rank = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(y, x);
                rank[x * n + y] = self.rank[y * n + x];
            }
        }
        let mut p = Poset { names: self.names.clone(), leq, rank, linear: Vec::new() };
        p.linear = p.compute_linear_extension();
        p
    }

    /// `{"elements", "relation" (covers), "weak_rank" (cover weights)}`.
    pub fn to_json(&self) -> Value {
        let covers = self.covers();
        json!({
            "elements": self.names,
            "relation": covers.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
            "weak_rank": covers.iter().map(|&(x, y)| json!([x, y, self.rank(x, y).unwrap()])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Poset, PosetError> {
        let schema = |msg: &str| PosetError::Schema(msg.to_string());
        let obj = value.as_object().ok_or_else(|| schema("poset must be a JSON object"))?;
        let names: Vec<String> = obj
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("field \"elements\" must be an array"))?
            .iter()
            .map(|v| match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(schema("field \"elements\" must contain strings")),
            })
            .collect::<Result<_, _>>()?;
        let lookup = |v: &Value| -> Result<usize, PosetError> {
            match v {
                Value::Number(n) => n
                    .as_u64()
                    .map(|i| i as usize)
                    .ok_or_else(|| schema("field \"relation\" has a non-index entry")),
                Value::String(s) => names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| PosetError::Schema(format!("field \"relation\" names unknown element {s:?}"))),
                _ => Err(schema("field \"relation\" has a non-index entry")),
            }
        };
        let mut relation = Vec::new();
        for pair in obj
            .get("relation")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("field \"relation\" must be an array of pairs"))?
        {
            match pair.as_array().map(Vec::as_slice) {
                Some([a, b]) => relation.push((lookup(a)?, lookup(b)?)),
                _ => return Err(schema("field \"relation\" must contain [i, j] pairs")),
            }
        }
        let spec = match obj.get("weak_rank") {
            None | Some(Value::Null) => WeakRankSpec::Graded,
            Some(Value::String(s)) if s == "graded" => WeakRankSpec::Graded,
            Some(Value::Object(map)) => {
                let mut pot = vec![None; names.len()];
                for (k, v) in map {
                    let i = names
                        .iter()
                        .position(|n| n == k)
                        .ok_or_else(|| PosetError::Schema(format!("field \"weak_rank\" names unknown element {k:?}")))?;
                    pot[i] = Some(v.as_i64().ok_or_else(|| schema("field \"weak_rank\" values must be integers"))?);
                }
                let pot = pot
                    .into_iter()
                    .collect::<Option<Vec<i64>>>()
                    .ok_or_else(|| schema("field \"weak_rank\" must assign a rank to every element"))?;
                WeakRankSpec::Potential(pot)
            }
            Some(Value::Array(triples)) => {
                let mut out = Vec::new();
                for t in triples {
                    match t.as_array().map(Vec::as_slice) {
                        Some([a, b, w]) => out.push((
                            lookup(a)?,
                            lookup(b)?,
                            w.as_u64().ok_or_else(|| schema("field \"weak_rank\" weights must be naturals"))? as usize,
                        )),
                        _ => return Err(schema("field \"weak_rank\" must contain [i, j, rank] triples")),
                    }
                }
                WeakRankSpec::Covers(out)
            }
            Some(_) => return Err(schema("field \"weak_rank\" must be \"graded\", a map or a triple list")),
        };
        Poset::from_relation(names, &relation, spec)
    }
}
