use std::collections::HashMap;

use super::{Poset, PosetError};

/// The chain `0 < 1 < ... < n` of rank `n`.
pub fn chain(n: usize) -> Poset {
    let m = n + 1;
    let names = (0..m).map(|i| i.to_string()).collect();
    let leq = (0..m * m).map(|ij| ij / m <= ij % m).collect();
    let potential: Vec<i64> = (0..m as i64).collect();
    Poset::from_closed(names, leq, &potential)
}

/// Subsets of `{1..n}` ordered by inclusion; element `i` is the subset with
/// bitmask `i`.
pub fn boolean_algebra(n: usize) -> Poset {
    let m = 1usize << n;
    let names = (0..m)
        .map(|s| {
            let elems: Vec<String> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", elems.join(","))
        })
        .collect();
    let leq = (0..m * m).map(|ij| (ij / m) & !(ij % m) == 0).collect();
    let potential: Vec<i64> = (0..m).map(|s| s.count_ones() as i64).collect();
    Poset::from_closed(names, leq, &potential)
}

/// Set partitions of `{1..n}` ordered by refinement (finer below), ranked
/// by `n - #blocks`.
pub fn partition_lattice(n: usize) -> Poset {
    // restricted growth strings
    let mut parts: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for rgs in &parts {
            let max = rgs.iter().copied().max().map_or(0, |m| m + 1);
            for b in 0..=max {
                let mut r = rgs.clone();
                r.push(b);
                next.push(r);
            }
        }
        parts = next;
    }
    let blocks = |r: &Vec<usize>| r.iter().copied().max().map_or(0, |m| m + 1);
    let names = parts
        .iter()
        .map(|r| {
            (0..blocks(r))
                .map(|b| (0..n).filter(|&i| r[i] == b).map(|i| (i + 1).to_string()).collect::<String>())
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    let m = parts.len();
    let mut leq = vec![false; m * m];
    for (a, pa) in parts.iter().enumerate() {
        for (b, pb) in parts.iter().enumerate() {
            leq[a * m + b] = (0..n).all(|i| (0..n).all(|j| pa[i] != pa[j] || pb[i] == pb[j]));
        }
    }
    let potential: Vec<i64> = parts.iter().map(|r| (n - blocks(r)) as i64).collect();
    Poset::from_closed(names, leq, &potential)
}

/// The finite field with `q = p^k` elements, encoded as `0..q` via base-`p`
/// digits of polynomials in a root of a fixed irreducible polynomial.
#[derive(Clone, Debug)]
pub struct GaloisField {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self, PosetError> {
        let not_prime_power = || PosetError::Argument(format!("{q} is not a prime power"));
        if !(2..=256).contains(&q) {
            return Err(PosetError::Argument(format!("field order {q} outside [2, 256]")));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut k = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(not_prime_power());
        }
        let digits = |mut v: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<usize> = (0..k).map(|i| (da[i] + db[i]) % p).collect();
                add[a * q + b] = encode(&s);
            }
        }
        // monic modulus x^k + Σ c_i x^i, c encoded by `low`
        for low in 0..q {
            let modulus = digits(low);
            let mul_poly = |a: usize, b: usize| -> usize {
                let (da, db) = (digits(a), digits(b));
                let mut prod = vec![0; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        prod[deg] = 0;
                        for i in 0..k {
                            prod[deg - k + i] = (prod[deg - k + i] + (p - c) * modulus[i]) % p;
                        }
                    }
                }
                encode(&prod[..k])
            };
            let mut mul = vec![0; q * q];
            let mut field = true;
            'outer: for a in 0..q {
                for b in 0..q {
                    let v = mul_poly(a, b);
                    if a != 0 && b != 0 && v == 0 {
                        field = false;
                        break 'outer;
                    }
                    mul[a * q + b] = v;
                }
            }
            if field {
                return Ok(GaloisField { q, add, mul });
            }
        }
        Err(not_prime_power())
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}

/// Subspaces of `F_q^n` ordered by inclusion and ranked by dimension.
pub fn subspace_lattice(n: usize, q: usize) -> Result<Poset, PosetError> {
    let field = GaloisField::new(q)?;
    let size = q
        .checked_pow(n as u32)
        .filter(|&s| s <= 1 << 12)
        .ok_or_else(|| PosetError::Argument(format!("F_{q}^{n} is too large")))?;
    let coords = |mut v: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let d = v % q;
                v /= q;
                d
            })
            .collect()
    };
    let encode = |cs: &[usize]| cs.iter().rev().fold(0, |acc, &d| acc * q + d);
    let vadd = |a: usize, b: usize| -> usize {
        let (ca, cb) = (coords(a), coords(b));
        encode(&(0..n).map(|i| field.add(ca[i], cb[i])).collect::<Vec<_>>())
    };
    let vscale = |c: usize, a: usize| -> usize { encode(&coords(a).iter().map(|&x| field.mul(c, x)).collect::<Vec<_>>()) };
    let words = size.div_ceil(64);
    let to_bits = |vs: &[usize]| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        for &v in vs {
            bits[v / 64] |= 1 << (v % 64);
        }
        bits
    };
    let show = |v: usize| coords(v).iter().map(|d| d.to_string()).collect::<String>();
    // (members, generators), grouped by dimension
    let mut spaces: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], Vec::new())];
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::from([(to_bits(&[0]), 0)]);
    let mut layer = vec![0usize];
    for _ in 0..n {
        let mut next = Vec::new();
        for &s in &layer {
            let (members, gens) = spaces[s].clone();
            let bits = to_bits(&members);
            for v in 0..size {
                if bits[v / 64] >> (v % 64) & 1 == 1 {
                    continue;
                }
                let mut span = members.clone();
                for c in 1..q {
                    let cv = vscale(c, v);
                    span.extend(members.iter().map(|&m| vadd(m, cv)));
                }
                span.sort_unstable();
                let key = to_bits(&span);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(spaces.len());
                    next.push(spaces.len());
                    let mut g = gens.clone();
                    g.push(v);
                    spaces.push((span, g));
                }
            }
        }
        layer = next;
    }
    let bits: Vec<Vec<u64>> = spaces.iter().map(|(m, _)| to_bits(m)).collect();
    let m = spaces.len();
    let mut leq = vec![false; m * m];
    for a in 0..m {
        for b in 0..m {
            leq[a * m + b] = bits[a].iter().zip(&bits[b]).all(|(x, y)| x & !y == 0);
        }
    }
    let names = spaces
        .iter()
        .map(|(_, g)| format!("<{}>", g.iter().map(|&v| show(v)).collect::<Vec<_>>().join(",")))
        .collect();
    let potential: Vec<i64> = spaces.iter().map(|(_, g)| g.len() as i64).collect();
    Ok(Poset::from_closed(names, leq, &potential))
}

impl Poset {
    /// Every `x` with `ρ(x) <= d` lies below some element of `hyper`; this
    /// makes the paving extension graded.
    pub fn check_paving_covering(&self, d: usize, hyper: &[usize]) -> Result<(), PosetError> {
        let bot = self.bottom_or_err()?;
        for x in 0..self.len() {
            if self.rank(bot, x).unwrap() <= d && !hyper.iter().any(|&y| self.leq(x, y)) {
                return Err(PosetError::Covering { x: self.name(x).to_string() });
            }
        }
        Ok(())
    }
}

/// `P(d, ℋ)`: the elements of rank `<= d`, the antichain `ℋ` declared to
/// have rank `d + 1`, and `1̂` of rank `d + 2`.
pub fn paving_extension(p: &Poset, d: usize, hyper: &[usize]) -> Result<Poset, PosetError> {
    let (bot, top) = p.bounds()?;
    if !p.is_graded() {
        return Err(PosetError::Argument("paving extension needs a graded poset".into()));
    }
    let n = p.rank(bot, top).unwrap();
    if d >= n {
        return Err(PosetError::Argument(format!("d = {d} must be below the rank {n}")));
    }
    for &y in hyper {
        if y >= p.len() {
            return Err(PosetError::Argument(format!("element index {y} out of range")));
        }
        let r = p.rank(bot, y).unwrap();
        if r <= d || r >= n {
            return Err(PosetError::RankRange { x: p.name(y).to_string(), rank: r, lo: d, hi: n });
        }
    }
    for (i, &a) in hyper.iter().enumerate() {
        for &b in &hyper[i + 1..] {
            if p.leq(a, b) || p.leq(b, a) {
                return Err(PosetError::NotAntichain { a: p.name(a).to_string(), b: p.name(b).to_string() });
            }
        }
    }
    let mut kept: Vec<usize> = (0..p.len()).filter(|&x| p.rank(bot, x).unwrap() <= d).collect();
    kept.extend_from_slice(hyper);
    kept.push(top);
    let m = kept.len();
    let names = kept.iter().map(|&x| p.name(x).to_string()).collect();
    let leq = (0..m * m).map(|ij| p.leq(kept[ij / m], kept[ij % m])).collect();
    let potential: Vec<i64> = kept
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if i == m - 1 {
                d as i64 + 2
            } else if hyper.contains(&x) {
                d as i64 + 1
            } else {
                p.rank(bot, x).unwrap() as i64
            }
        })
        .collect();
    Ok(Poset::from_closed(names, leq, &potential))
}
