use serde_json::{json, Value};

use super::family::chow_family;
use super::{LTMatrix, MatrixError};
use crate::poly::{format_rational, qi, Field, Poly, Ring, Q};

/// A certificate of resolvability: `λ_{n,k}` for `0 <= k <= n < N` and the
/// ladder `R_{n,k}` with `R_{n,n} = t^n`, `R_{n+1,k} = R_{n+1,k+1} + λ_{n,k} R_{n,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub lambda: Vec<Vec<Q>>,
    pub resolved: Vec<Vec<Poly<Q>>>,
}

impl Resolution {
    pub fn n_max(&self) -> usize {
        self.resolved.len() - 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "resolved": self.resolved.iter().map(|r| r.iter().map(Poly::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Parse `{"lambda": [[λ_00], [λ_10, λ_11], ...]}`.
    pub fn lambda_from_json(value: &Value) -> Result<Vec<Vec<Q>>, MatrixError> {
        let rows = value
            .get("lambda")
            .and_then(Value::as_array)
            .ok_or_else(|| MatrixError::Schema("field \"lambda\" must be an array of arrays".into()))?;
        rows.iter()
            .enumerate()
            .map(|(n, row)| {
                row.as_array()
                    .ok_or_else(|| MatrixError::Schema(format!("lambda[{n}] must be an array")))?
                    .iter()
                    .enumerate()
                    .map(|(k, v)| Q::from_json(v).map_err(|e| MatrixError::Schema(format!("lambda[{n}][{k}]: {e}"))))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionCheck {
    Valid(Resolution),
    /// The first violated condition, at row `n` of the ladder.
    Invalid { n: usize, condition: String },
}

fn ladder(lambda: &[Vec<Q>]) -> Vec<Vec<Poly<Q>>> {
    let mut resolved = vec![vec![Poly::one()]];
    for (n, lam) in lambda.iter().enumerate() {
        let mut row = vec![Poly::zero(); n + 2];
        row[n + 1] = Poly::t_pow(n + 1);
        for k in (0..=n).rev() {
            row[k] = &row[k + 1] + &resolved[n][k].scale(&lam[k]);
        }
        resolved.push(row);
    }
    resolved
}

/// The matrix whose rows are the `R_{n,0}` of the ladder built from `λ`.
pub fn matrix_from_lambda(lambda: &[Vec<Q>]) -> LTMatrix<Q> {
    let resolved = ladder(lambda);
    LTMatrix::from_rows(
        resolved
            .iter()
            .enumerate()
            .map(|(n, row)| (0..=n).map(|k| row[0].coeff(k)).collect())
            .collect(),
    )
    .expect("R_(n,0) is monic of degree n")
}

/// Rebuild the ladder from `λ` and check it against `R`.
pub fn verify_resolution(r: &LTMatrix<Q>, lambda: &[Vec<Q>]) -> Result<ResolutionCheck, MatrixError> {
    let n_max = r.n_max();
    if lambda.len() != n_max {
        return Err(MatrixError::Schema(format!("lambda needs {n_max} rows, found {}", lambda.len())));
    }
    for (n, row) in lambda.iter().enumerate() {
        if row.len() != n + 1 {
            return Err(MatrixError::Shape { row: n, expected: n + 1, found: row.len() });
        }
        if let Some(k) = row.iter().position(|x| !x.is_nonnegative()) {
            return Err(MatrixError::NegativeLambda { n, k });
        }
    }
    let resolved = ladder(lambda);
    for (n, row) in resolved.iter().enumerate() {
        if row[0] != r.row_poly(n) {
            return Ok(ResolutionCheck::Invalid { n, condition: "R_(n,0) equals the row polynomial R_n".into() });
        }
        if let Some(k) = (0..=n).find(|&k| row[k].valuation().is_none_or(|v| v < k)) {
            return Ok(ResolutionCheck::Invalid { n, condition: format!("t^{k} divides R_(n,{k})") });
        }
    }
    Ok(ResolutionCheck::Valid(Resolution { lambda: lambda.to_vec(), resolved }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolveOutcome {
    Resolved(Resolution),
    /// The greedy solver could not determine `λ_{n,k}`.
    Inconclusive { n: usize, k: usize, reason: String },
}

impl ResolveOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            ResolveOutcome::Resolved(res) => {
                let mut v = res.to_json();
                v["verdict"] = json!("resolved");
                v
            }
            ResolveOutcome::Inconclusive { n, k, reason } => {
                json!({ "verdict": "inconclusive", "n": n, "k": k, "reason": reason })
            }
        }
    }
}

/// Row by row, `R_{n+1} - t^{n+1} = Σ_j λ_{n,j} R_{n,j}` is a lower-triangular
/// system in the `λ_{n,j}` since `t^j | R_{n,j}`; the pivot is `[t^j] R_{n,j}`.
/// A zero pivot with zero residual gives `λ = 0`.
pub fn resolve(r: &LTMatrix<Q>) -> ResolveOutcome {
    let mut lambda: Vec<Vec<Q>> = Vec::new();
    let mut resolved: Vec<Vec<Poly<Q>>> = vec![vec![Poly::one()]];
    for n in 0..r.n_max() {
        let mut lam = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut residual = r.get(n + 1, i).clone();
            for (j, l) in lam.iter().enumerate() {
                residual = residual.sub(&resolved[n][j].coeff(i).mul(l));
            }
            let pivot = resolved[n][i].coeff(i);
            let value = match pivot.inv() {
                Some(inv) => residual.mul(&inv),
                None if residual.is_zero() => qi(0),
                None => {
                    return ResolveOutcome::Inconclusive {
                        n,
                        k: i,
                        reason: format!("zero pivot with residual {}", format_rational(&residual)),
                    }
                }
            };
            if !value.is_nonnegative() {
                return ResolveOutcome::Inconclusive {
                    n,
                    k: i,
                    reason: format!("negative value {}", format_rational(&value)),
                };
            }
            lam.push(value);
        }
        lambda.push(lam);
        resolved = ladder(&lambda);
    }
    match verify_resolution(r, &lambda) {
        Ok(ResolutionCheck::Valid(res)) => ResolveOutcome::Resolved(res),
        Ok(ResolutionCheck::Invalid { n, condition }) => ResolveOutcome::Inconclusive {
            n,
            k: 0,
            reason: format!("solution fails {condition}"),
        },
        Err(e) => ResolveOutcome::Inconclusive { n: 0, k: 0, reason: e.to_string() },
    }
}

/// `d_{n,k} = 𝒟(R_{n,k})` and `A_{n,k} = 𝐀(R_{n,k})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnkFamily {
    pub d: Vec<Vec<Poly<Q>>>,
    pub a: Vec<Vec<Poly<Q>>>,
}

impl DnkFamily {
    pub fn to_json(&self) -> Value {
        let arr = |v: &[Vec<Poly<Q>>]| {
            v.iter().map(|r| r.iter().map(Poly::to_json).collect::<Vec<_>>()).collect::<Vec<_>>()
        };
        json!({ "d": arr(&self.d), "A": arr(&self.a) })
    }
}

/// Both arrays, by applying the maps to the ladder and by the recursion
/// `d_{n+1,k} = t S_n(Σ_j λ_{n,j} d_{n,j}) + Σ_{j>=k} λ_{n,j} d_{n,j}`
/// (`S_{n+1}` for `A`). The two routes must agree.
pub fn dnk_family(r: &LTMatrix<Q>, res: &Resolution) -> Result<DnkFamily, MatrixError> {
    if res.n_max() != r.n_max() {
        return Err(MatrixError::Schema("resolution and matrix sizes differ".into()));
    }
    let fam = chow_family(r)?;
    let mut direct = DnkFamily { d: Vec::new(), a: Vec::new() };
    for row in &res.resolved {
        direct.d.push(row.iter().map(|p| fam.deranged(p)).collect::<Result<_, _>>()?);
        direct.a.push(row.iter().map(|p| fam.eulerian(p)).collect::<Result<_, _>>()?);
    }
    let mut rec = DnkFamily { d: vec![vec![Poly::one()]], a: vec![vec![Poly::one()]] };
    for (n, lam) in res.lambda.iter().enumerate() {
        rec.d.push(dnk_step(&rec.d[n], lam, n));
        rec.a.push(dnk_step(&rec.a[n], lam, n + 1));
    }
    if rec != direct {
        let n = (0..direct.d.len()).find(|&n| rec.d[n] != direct.d[n] || rec.a[n] != direct.a[n]).unwrap();
        return Err(MatrixError::RouteMismatch(format!("d_(n,k) or A_(n,k) at n = {n}")));
    }
    Ok(direct)
}

fn dnk_step(prev: &[Poly<Q>], lam: &[Q], center: usize) -> Vec<Poly<Q>> {
    let weighted: Vec<Poly<Q>> = prev.iter().zip(lam).map(|(p, l)| p.scale(l)).collect();
    interlacing_step(&weighted, center)
}

/// `g_k = t S_n(Σ_j f_j) + Σ_{j>=k} f_j` for `0 <= k <= m + 1`.
pub fn interlacing_step(fs: &[Poly<Q>], n: usize) -> Vec<Poly<Q>> {
    let total: Poly<Q> = fs.iter().cloned().sum();
    let head = total.s_op(n).expect("degree within bound").shift(1);
    let mut out = vec![head.clone(); fs.len() + 1];
    let mut tail = Poly::zero();
    for k in (0..fs.len()).rev() {
        tail = &tail + &fs[k];
        out[k] = &head + &tail;
    }
    out
}
