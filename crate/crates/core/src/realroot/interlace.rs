use num_traits::Signed;
use serde_json::{json, Value};

use super::{count_with, is_real_rooted, isolate_squarefree, squarefree_decomposition, squarefree_part, sturm_count, sturm_sequence, RealRootError};
use crate::poly::{Poly, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterlacingWitness {
    /// The polynomial in `slot` has fewer distinct real roots than its
    /// square-free degree.
    NotRealRooted { slot: Slot, distinct_real_roots: usize, squarefree_degree: usize },
    /// After sign normalization the degrees differ by something other than
    /// 0 or 1 in the required direction.
    DegreeMismatch { lower: usize, upper: usize },
    /// Position `i` (0-based, roots sorted decreasingly) where
    /// `a_{i+1} <= b_i <= a_i` fails.
    Interleaving { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingCertificate {
    pub verdict: bool,
    pub witness: Option<InterlacingWitness>,
    /// Sign of the leading coefficient of `p'q - pq'`, or 0 if it vanishes.
    pub wronskian_sign: i8,
}

impl InterlacingCertificate {
    fn pass(wronskian_sign: i8) -> Self {
        InterlacingCertificate { verdict: true, witness: None, wronskian_sign }
    }

    fn fail(witness: InterlacingWitness, wronskian_sign: i8) -> Self {
        InterlacingCertificate { verdict: false, witness: Some(witness), wronskian_sign }
    }

    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            None => Value::Null,
            Some(InterlacingWitness::NotRealRooted { slot, distinct_real_roots, squarefree_degree }) => json!({
                "kind": "not_real_rooted",
                "slot": if *slot == Slot::P { "p" } else { "q" },
                "distinct_real_roots": distinct_real_roots,
                "squarefree_degree": squarefree_degree,
            }),
            Some(InterlacingWitness::DegreeMismatch { lower, upper }) => json!({
                "kind": "degree_mismatch",
                "lower": lower,
                "upper": upper,
            }),
            Some(InterlacingWitness::Interleaving { position }) => json!({
                "kind": "interleaving",
                "position": position,
            }),
        };
        json!({
            "verdict": self.verdict,
            "witness": witness,
            "wronskian_sign": self.wronskian_sign,
        })
    }
}

fn lc_sign(f: &Poly<Q>) -> i8 {
    match f.leading_coeff() {
        Some(c) if c.is_negative() => -1,
        Some(_) => 1,
        None => 0,
    }
}

fn wronskian_sign(p: &Poly<Q>, q: &Poly<Q>) -> i8 {
    let w = &(&p.derivative() * q) - &(p * &q.derivative());
    lc_sign(&w)
}

fn real_root_witness(f: &Poly<Q>, slot: Slot) -> Option<InterlacingWitness> {
    if is_real_rooted(f) {
        return None;
    }
    let sqf = squarefree_part(f);
    Some(InterlacingWitness::NotRealRooted {
        slot,
        distinct_real_roots: sturm_count(&sqf, None, None).unwrap(),
        squarefree_degree: sqf.degree().unwrap(),
    })
}

/// Root indices (into the common isolation) repeated by multiplicity,
/// sorted decreasingly.
fn root_indices(f: &Poly<Q>, intervals: &[(Q, Q)]) -> Vec<usize> {
    let factors: Vec<(usize, Vec<Poly<Q>>)> = squarefree_decomposition(f)
        .into_iter()
        .enumerate()
        .filter(|(_, a)| a.degree().unwrap_or(0) > 0)
        .map(|(i, a)| (i + 1, sturm_sequence(&a)))
        .collect();
    let mut out = Vec::new();
    for (idx, (lo, hi)) in intervals.iter().enumerate().rev() {
        for (m, seq) in &factors {
            if count_with(seq, Some(lo), Some(hi)) == 1 {
                out.extend(std::iter::repeat_n(idx, *m));
            }
        }
    }
    out
}

/// `lower ≺ upper` for real-rooted polynomials with positive leading
/// coefficients: `... <= b_2 <= a_2 <= b_1 <= a_1` where `b` are the roots
/// of `lower` and `a` those of `upper`.
fn positive_pattern(lower: &Poly<Q>, upper: &Poly<Q>) -> Option<InterlacingWitness> {
    let dl = lower.degree().unwrap();
    let du = upper.degree().unwrap();
    if du != dl && du != dl + 1 {
        return Some(InterlacingWitness::DegreeMismatch { lower: dl, upper: du });
    }
    let intervals = isolate_squarefree(&squarefree_part(&(lower * upper)));
    let b = root_indices(lower, &intervals);
    let a = root_indices(upper, &intervals);
    for (i, bi) in b.iter().enumerate() {
        if *bi > a[i] || a.get(i + 1).is_some_and(|next| bi < next) {
            return Some(InterlacingWitness::Interleaving { position: i });
        }
    }
    None
}

/// Decide `p ≺ q`: both real-rooted, zeros interlace and `p'q - pq' <= 0`.
/// The zero polynomial interlaces with everything, in both slots.
pub fn interlaces(p: &Poly<Q>, q: &Poly<Q>) -> InterlacingCertificate {
    let ws = wronskian_sign(p, q);
    if p.is_zero() || q.is_zero() {
        return InterlacingCertificate::pass(ws);
    }
    if let Some(w) = real_root_witness(p, Slot::P).or_else(|| real_root_witness(q, Slot::Q)) {
        return InterlacingCertificate::fail(w, ws);
    }
    // p ≺ q iff -p ≺ -q iff -q ≺ p iff q ≺ -p.
    let (lower, upper) = match (lc_sign(p), lc_sign(q)) {
        (1, 1) => (p.clone(), q.clone()),
        (-1, -1) => (-p, -q),
        (1, -1) => (-q, p.clone()),
        _ => (q.clone(), -p),
    };
    match positive_pattern(&lower, &upper) {
        None => InterlacingCertificate::pass(ws),
        Some(w) => InterlacingCertificate::fail(w, ws),
    }
}

fn check_nonnegative(fs: &[Poly<Q>]) -> Result<(), RealRootError> {
    match fs.iter().position(|f| !f.is_nonnegative()) {
        Some(index) => Err(RealRootError::NegativeCoefficient { index }),
        None => Ok(()),
    }
}

/// `f_i ≺ f_j` for every `i < j`; inputs must have nonnegative coefficients.
pub fn is_interlacing_sequence(fs: &[Poly<Q>]) -> Result<bool, RealRootError> {
    check_nonnegative(fs)?;
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if !interlaces(&fs[i], &fs[j]).verdict {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cheaper test valid for nonzero polynomials with positive leading
/// coefficients: consecutive pairs plus the first/last pair.
pub fn is_interlacing_sequence_consecutive(fs: &[Poly<Q>]) -> Result<bool, RealRootError> {
    check_nonnegative(fs)?;
    let fs: Vec<&Poly<Q>> = fs.iter().filter(|f| !f.is_zero()).collect();
    if fs.len() < 2 {
        return Ok(true);
    }
    let consecutive = fs.windows(2).all(|w| interlaces(w[0], w[1]).verdict);
    Ok(consecutive && interlaces(fs[0], fs[fs.len() - 1]).verdict)
}

/// `f_1, ..., f_m, I_n(f_m), ..., I_n(f_1)` is an interlacing sequence.
pub fn is_in_interlacing(fs: &[Poly<Q>], n: usize) -> Result<bool, RealRootError> {
    check_nonnegative(fs)?;
    let mut doubled = fs.to_vec();
    for (index, f) in fs.iter().enumerate().rev() {
        let r = f.reciprocal(n).map_err(|_| RealRootError::DegreeExceeds {
            index,
            degree: f.degree().unwrap_or(0),
            bound: n,
        })?;
        doubled.push(r);
    }
    is_interlacing_sequence(&doubled)
}
