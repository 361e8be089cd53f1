use std::path::Path;
use std::sync::Arc;

use chow_core::ltmatrix::{
    augment_matrix, chow_family, chow_via_subsets, dnk_family, gamma_chow, gamma_of_family, is_tn, matrix_from_lambda, minor,
    resolve as resolve_matrix, verify_resolution, LTMatrix, Resolution, ResolutionCheck, ResolveOutcome, DEFAULT_TN_BOUND,
};
use chow_core::poly::{Poly, Q};
use chow_core::poset::{
    aug_pair, augment, boolean_algebra, chain, chow_pair, chow_via_chains, chow_via_kernel, partition_lattice,
    subspace_lattice, IncidenceFunction, Poset,
};
use chow_core::realroot::{interlaces, is_in_interlacing, isolate, is_real_rooted, sturm_count};
use chow_core::toeplitz::{
    binomial_series, chow_series, pf_series, sheffer_matrix, sheffer_series, toeplitz_family, truncated_family_series,
    truncated_family_via_deletion, ChowSeries, PFData, TruncatedSeries,
};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::input::{check_cap, parse_input};
use crate::{CliError, OracleMode};

const DEFAULT_SERIES_ORDER: usize = 10;

fn mismatch(what: impl Into<String>) -> CliError {
    CliError::Oracle(what.into())
}

fn build_poset(v: &Value) -> Result<Poset, CliError> {
    let Some(c) = v.get("constructor") else {
        return Ok(Poset::from_json(v)?);
    };
    let name = c.get("name").and_then(Value::as_str).ok_or_else(|| CliError::Schema("constructor.name must be a string".into()))?;
    let n = c.get("n").and_then(Value::as_u64).ok_or_else(|| CliError::Schema("constructor.n must be a natural number".into()))? as usize;
    let p = match name {
        "chain" => chain(n),
        "boolean_algebra" => boolean_algebra(n),
        "partition_lattice" => partition_lattice(n),
        "subspace_lattice" => {
            let q = c.get("q").and_then(Value::as_u64).ok_or_else(|| CliError::Schema("constructor.q must be a natural number".into()))?;
            subspace_lattice(n, q as usize)?
        }
        other => return Err(CliError::Schema(format!("unknown constructor {other:?}"))),
    };
    Ok(if c.get("dual").and_then(Value::as_bool).unwrap_or(false) { p.dual() } else { p })
}

pub fn poset(v: &Value, g_path: Option<&Path>, oracle: OracleMode, cap: usize) -> Result<Value, CliError> {
    let host = Arc::new(build_poset(v)?);
    let g = match (v.get("g"), g_path) {
        (Some(_), Some(_)) => return Err(CliError::Schema("g given both inline and with --g".into())),
        (Some(gv), None) => IncidenceFunction::<Q>::from_json(host.clone(), gv)?,
        (None, Some(path)) => IncidenceFunction::<Q>::from_json(host.clone(), &parse_input(&path.to_string_lossy())?)?,
        (None, None) => IncidenceFunction::zeta(host.clone()),
    };
    let size = (0..host.len())
        .cartesian_product(0..host.len())
        .filter_map(|(x, y)| host.rank(x, y))
        .max()
        .unwrap_or(0);
    check_cap(size, cap)?;
    let (h, d) = chow_pair(&g)?;
    let (gg, a) = aug_pair(&g)?;
    let mut routes = vec!["kernel inversion"];
    if oracle.enabled(size) {
        if chow_via_kernel(&g)? != h {
            return Err(mismatch("H from the kernel differs from the recursion"));
        }
        if g.is_scalar() {
            routes.push("chain sums");
            for (x, y) in (0..host.len()).cartesian_product(0..host.len()).filter(|&(x, y)| host.leq(x, y)) {
                if &chow_via_chains(&g, x, y)? != h.get(x, y) {
                    return Err(mismatch(format!("chain sum differs on [{}, {}]", host.name(x), host.name(y))));
                }
            }
        }
        if let Some(bot) = host.bottom() {
            routes.push("augmentation");
            let (ahost, ag) = augment(&g)?;
            let (ah, _) = chow_pair(&ag)?;
            let new_bot = ahost.len() - 1;
            for y in host.up_set(bot) {
                if ah.get(new_bot, y) != gg.get(bot, y) {
                    return Err(mismatch(format!("G at {} differs from H of the augmented interval", host.name(y))));
                }
            }
        }
    }
    Ok(json!({
        "elements": host.names(),
        "H": h.to_json(),
        "d": d.to_json(),
        "G": gg.to_json(),
        "A": a.to_json(),
        "oracle": oracle.meta(size, &routes.join(", ")),
    }))
}

fn load_matrix(v: &Value, n: Option<usize>, cap: usize) -> Result<LTMatrix<Q>, CliError> {
    let mut r = LTMatrix::<Q>::from_json(v)?;
    if let Some(n) = n {
        r.index_check(n)?;
        r = r.truncated(n);
    }
    check_cap(r.n_max(), cap)?;
    Ok(r)
}

pub fn matrix(v: &Value, n: Option<usize>, oracle: OracleMode, cap: usize) -> Result<Value, CliError> {
    let r = load_matrix(v, n, cap)?;
    let n = r.n_max();
    let fam = chow_family(&r)?;
    if oracle.enabled(n) {
        let aug = augment_matrix(&r);
        for m in 0..=n {
            if chow_via_subsets(&r, m)? != fam.h[m] {
                return Err(mismatch(format!("subset sum for H_{m} differs from the recursion")));
            }
            if chow_via_subsets(&aug, m + 1)? != fam.g[m] {
                return Err(mismatch(format!("subset sum for G_{m} differs from the recursion")));
            }
        }
    }
    let mut out = fam.to_json();
    out["n"] = json!(n);
    out["oracle"] = oracle.meta(n, "subset sums");
    Ok(out)
}

fn factorials(v: &Value, field: &str) -> Result<Vec<Q>, CliError> {
    let arr = v.as_array().ok_or_else(|| CliError::Schema(format!("{field} must be an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| chow_core::poly::Ring::from_json(x).map_err(|e| CliError::Schema(format!("{field}[{i}]: {e}"))))
        .collect()
}

fn series_order(v: &Value, n: Option<usize>, default: usize) -> Result<usize, CliError> {
    match (n, v.get("N")) {
        (Some(n), _) => Ok(n),
        (None, Some(x)) => x.as_u64().map(|x| x as usize).ok_or_else(|| CliError::Schema("N must be a natural number".into())),
        (None, None) => Ok(default),
    }
}

fn family_matches(s: &ChowSeries<Q>, fam: &chow_core::ltmatrix::ChowFamily<Q>, what: &str) -> Result<(), CliError> {
    if s.matches(fam) {
        Ok(())
    } else {
        Err(mismatch(format!("{what}: series coefficients differ from the matrix recursion")))
    }
}

pub fn toeplitz(v: &Value, n: Option<usize>, oracle: OracleMode, cap: usize) -> Result<Value, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::Schema("toeplitz input must be an object".into()))?;
    let sources: Vec<&str> = ["series", "pf", "binomial", "sheffer"].into_iter().filter(|k| obj.contains_key(*k)).collect();
    let [source] = sources[..] else {
        return Err(CliError::Schema("exactly one of series, pf, binomial, sheffer is required".into()));
    };
    let k = match obj.get("k") {
        None => None,
        Some(x) => Some(x.as_u64().filter(|&k| k >= 1).ok_or_else(|| CliError::Schema("k must be a positive integer".into()))? as usize),
    };
    if k.is_some() && !matches!(source, "series" | "pf") {
        return Err(CliError::Schema("k is only accepted with series or pf".into()));
    }
    let (series, order, route) = match source {
        "series" | "pf" => {
            let order = series_order(v, n, DEFAULT_SERIES_ORDER)?;
            check_cap(order, cap)?;
            let f = if source == "series" {
                TruncatedSeries::<Q>::from_json(&obj["series"])?.truncate(order)
            } else {
                pf_series(&PFData::from_json(&obj["pf"])?, order)?
            };
            match k {
                None => {
                    let s = chow_series(&f)?;
                    if oracle.enabled(order) {
                        family_matches(&s, &toeplitz_family(&f)?, "toeplitz")?;
                    }
                    (s, order, "Toeplitz matrix recursion")
                }
                Some(k) => {
                    let s = truncated_family_series(&f, k)?;
                    if oracle.enabled(order) && truncated_family_via_deletion(&f, k)? != s {
                        return Err(mismatch("truncated-family series differ from index deletion"));
                    }
                    (s, order - k, "index deletion")
                }
            }
        }
        "binomial" => {
            let b = factorials(&obj["binomial"], "binomial")?;
            let order = series_order(v, n, b.len().saturating_sub(1))?;
            check_cap(order, cap)?;
            if order + 1 > b.len() {
                return Err(CliError::Schema(format!("binomial needs {} values for N = {order}", order + 1)));
            }
            let b = &b[..=order];
            let s = binomial_series(b)?;
            if oracle.enabled(order) {
                family_matches(&s, &chow_family(&sheffer_matrix(b, b)?)?, "binomial")?;
            }
            (s, order, "binomial matrix recursion")
        }
        _ => {
            let sh = &obj["sheffer"];
            let b = factorials(sh.get("B").unwrap_or(&Value::Null), "sheffer.B")?;
            let c = factorials(sh.get("C").unwrap_or(&Value::Null), "sheffer.C")?;
            let avail = b.len().min(c.len()).saturating_sub(1);
            let order = series_order(v, n, avail)?;
            check_cap(order, cap)?;
            if order > avail {
                return Err(CliError::Schema(format!("sheffer needs {} values of B and C for N = {order}", order + 1)));
            }
            let (b, c) = (&b[..=order], &c[..=order]);
            let s = sheffer_series(b, c)?;
            if oracle.enabled(order) {
                family_matches(&s, &chow_family(&sheffer_matrix(b, c)?)?, "sheffer")?;
            }
            (s, order, "Sheffer matrix recursion")
        }
    };
    let mut out = series.to_json();
    out["N"] = json!(order);
    out["source"] = json!(source);
    if let Some(k) = k {
        out["k"] = json!(k);
    }
    out["oracle"] = oracle.meta(order, route);
    Ok(out)
}

pub fn check_tn(v: &Value, n: Option<usize>, oracle: OracleMode, cap: usize) -> Result<Value, CliError> {
    let r = load_matrix(v, n, cap)?;
    let n = r.n_max();
    let verdict = is_tn(&r)?;
    if oracle.enabled(n) {
        let first_negative = (1..=n + 1)
            .flat_map(|size| {
                (0..=n).combinations(size).flat_map(move |rows| (0..=n).combinations(size).map(move |cols| (rows.clone(), cols)))
            })
            .map(|(rows, cols)| minor(&r, &rows, &cols).map(|m| (rows, cols, m)))
            .find(|res| res.as_ref().map_or(true, |(_, _, m)| m < &chow_core::poly::qi(0)))
            .transpose()?;
        let agrees = match (&verdict.witness, first_negative) {
            (None, None) => verdict.tn,
            (Some(w), Some((rows, cols, m))) => !verdict.tn && w.rows == rows && w.cols == cols && w.value == m,
            _ => false,
        };
        if !agrees {
            return Err(mismatch("exhaustive minor expansion disagrees with the TN verdict"));
        }
    }
    let mut out = verdict.to_json();
    out["n"] = json!(n);
    out["oracle"] = oracle.meta(n, "exhaustive minor expansion");
    Ok(out)
}

fn check_ladder(r: &LTMatrix<Q>, lambda: &[Vec<Q>]) -> Result<(), CliError> {
    if &matrix_from_lambda(lambda) != r {
        return Err(mismatch("matrix rebuilt from lambda differs from the input"));
    }
    Ok(())
}

pub fn resolve(v: &Value, n: Option<usize>, oracle: OracleMode, cap: usize) -> Result<Value, CliError> {
    let r = load_matrix(v, n, cap)?;
    let n = r.n_max();
    let mut out = if v.get("lambda").is_some() {
        let mut lambda = Resolution::lambda_from_json(v)?;
        lambda.truncate(n + 1);
        match verify_resolution(&r, &lambda)? {
            ResolutionCheck::Valid(res) => {
                if oracle.enabled(n) {
                    check_ladder(&r, &res.lambda)?;
                }
                let mut out = res.to_json();
                out["verdict"] = json!("valid");
                out["dnk"] = dnk_family(&r, &res)?.to_json();
                out
            }
            ResolutionCheck::Invalid { n, condition } => json!({ "verdict": "invalid", "n": n, "condition": condition }),
        }
    } else {
        let outcome = resolve_matrix(&r);
        let mut out = outcome.to_json();
        if let ResolveOutcome::Resolved(res) = &outcome {
            if oracle.enabled(n) {
                if !matches!(verify_resolution(&r, &res.lambda)?, ResolutionCheck::Valid(_)) {
                    return Err(mismatch("computed lambda fails verification"));
                }
                check_ladder(&r, &res.lambda)?;
            }
            out["dnk"] = dnk_family(&r, res)?.to_json();
        }
        out
    };
    out["n"] = json!(n);
    out["oracle"] = oracle.meta(n, "verification and rebuild from lambda");
    Ok(out)
}

pub fn gamma(v: &Value, n: Option<usize>, augmented: bool, oracle: OracleMode, cap: usize) -> Result<Value, CliError> {
    let r = load_matrix(v, n, cap)?;
    let n = r.n_max();
    let g = gamma_chow(&r, n, augmented)?;
    if oracle.enabled(n) && gamma_of_family(&r, n, augmented)? != g {
        return Err(mismatch("minor formula differs from γ extraction"));
    }
    Ok(json!({
        "gamma": g.to_json(),
        "n": n,
        "augmented": augmented,
        "nonnegative": g.is_nonnegative(),
        "oracle": oracle.meta(n, "γ extraction from the family"),
    }))
}

fn root_certificate(f: &Poly<Q>, check: bool) -> Result<Value, CliError> {
    let real_rooted = is_real_rooted(f);
    if f.degree().unwrap_or(0) == 0 {
        return Ok(json!({ "poly": f.to_json(), "real_rooted": real_rooted, "roots": [] }));
    }
    let iso = isolate(f)?;
    if check {
        let sqf = &iso.squarefree_part;
        for root in &iso.roots {
            if sturm_count(sqf, Some(&root.lo), Some(&root.hi))? != 1 {
                return Err(mismatch("an isolating interval does not hold exactly one root"));
            }
        }
        if (iso.roots.len() == sqf.degree().unwrap()) != real_rooted {
            return Err(mismatch("root isolation disagrees with the Sturm count"));
        }
    }
    let mut v = iso.to_json();
    v["poly"] = f.to_json();
    v["real_rooted"] = json!(real_rooted);
    Ok(v)
}

pub fn certify(v: &Value, n: Option<usize>, oracle: OracleMode, cap: usize) -> Result<Value, CliError> {
    let r = load_matrix(v, n, cap)?;
    let n = r.n_max();
    let check = oracle.enabled(n);
    let fam = chow_family(&r)?;
    let mut all_real = true;
    let mut families = serde_json::Map::new();
    for (name, polys) in [("H", &fam.h), ("d", &fam.d), ("G", &fam.g), ("A", &fam.a)] {
        let certs = polys.iter().map(|f| root_certificate(f, check)).collect::<Result<Vec<_>, _>>()?;
        all_real &= certs.iter().all(|c| c["real_rooted"] == json!(true));
        families.insert(name.to_string(), json!(certs));
    }
    let mut all_interlace = true;
    let mut pairs = serde_json::Map::new();
    let same = |a: &[Poly<Q>], b: &[Poly<Q>]| (0..=n).map(|m| interlaces(&a[m], &b[m])).collect::<Vec<_>>();
    let next = |a: &[Poly<Q>]| (0..n).map(|m| interlaces(&a[m], &a[m + 1])).collect::<Vec<_>>();
    for (name, certs) in [
        ("H_n < d_n", same(&fam.h, &fam.d)),
        ("H_n < H_n+1", next(&fam.h)),
        ("d_n < d_n+1", next(&fam.d)),
        ("G_n < A_n", same(&fam.g, &fam.a)),
        ("G_n < G_n+1", next(&fam.g)),
        ("A_n < A_n+1", next(&fam.a)),
    ] {
        all_interlace &= certs.iter().all(|c| c.verdict);
        pairs.insert(name.to_string(), json!(certs.iter().map(|c| c.to_json()).collect::<Vec<_>>()));
    }
    let tn = if n <= DEFAULT_TN_BOUND { is_tn(&r)?.to_json() } else { Value::Null };
    let outcome = resolve_matrix(&r);
    let rows = match &outcome {
        ResolveOutcome::Resolved(res) => {
            let dnk = dnk_family(&r, res)?;
            let d_rows = (0..=n).map(|m| is_in_interlacing(&dnk.d[m], m)).collect::<Result<Vec<_>, _>>();
            let a_rows = (0..=n).map(|m| is_in_interlacing(&dnk.a[m], m + 1)).collect::<Result<Vec<_>, _>>();
            match (d_rows, a_rows) {
                (Ok(d), Ok(a)) => json!({ "d": d, "A": a }),
                (Err(e), _) | (_, Err(e)) => json!({ "error": e.to_string() }),
            }
        }
        ResolveOutcome::Inconclusive { .. } => Value::Null,
    };
    Ok(json!({
        "n": n,
        "families": families,
        "all_real_rooted": all_real,
        "interlacing": pairs,
        "all_interlacing": all_interlace,
        "tn": tn,
        "resolution": outcome.to_json(),
        "row_interlacing": rows,
        "oracle": oracle.meta(n, "Sturm counts on isolating intervals"),
    }))
}
