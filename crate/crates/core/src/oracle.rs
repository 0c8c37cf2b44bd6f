//! Homological ground truth for monomial quotients.
//!
//! Multigraded Betti numbers come from the upper Koszul simplicial complex
//! `K^b(I) = { τ ⊆ supp(b) : x^(b-τ) ∈ I }` via
//! `β_{i,b}(S/I) = dim H̃_{i-2}(K^b(I); Q)` for `i >= 1`, and `β_{0,0} = 1`.
//! Depth follows from Auslander-Buchsbaum. Nothing here looks at primary
//! decompositions except [`dim`], so the answers are independent of the
//! constructive side of the crate.

use std::collections::BTreeMap;

use serde_json::json;

use crate::decomposition::height_dim;
use crate::error::AlgebraError;
use crate::monomial::{box_monomials, monomials_of_degree, Monomial, MonomialIdeal};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    /// `(homological index, multidegree) -> rank`, non-zero entries only.
    pub entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    /// Projective dimension of `S/I`: the largest index with a non-zero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Total Betti number `β_i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, r)| r)
            .sum()
    }

    pub fn get(&self, i: usize, degree: &Monomial) -> u64 {
        self.entries.get(&(i, degree.clone())).copied().unwrap_or(0)
    }
}

/// Rank over Q of an integer matrix by fraction-free elimination.
pub(crate) fn rank_over_q(mut rows: Vec<Vec<i64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[col] - f * pv;
            }
            let g = row.iter().fold(0i64, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reduced homology ranks `dim H̃_k` for `k = -1 ..= vertices-1` of the
/// simplicial complex given by its faces as bitmasks over `vertices` bits.
/// Index `k + 1` of the returned vector holds `H̃_k`.
pub(crate) fn reduced_homology(faces: &[u32], vertices: usize) -> Vec<u64> {
    let by_dim = |k: isize| -> Vec<u32> {
        faces
            .iter()
            .copied()
            .filter(|f| f.count_ones() as isize == k + 1)
            .collect()
    };
    let chains: Vec<Vec<u32>> = (-1..vertices as isize).map(by_dim).collect();
    // boundary from dimension k to k-1, for k = 0..vertices-1
    let boundary_rank = |k: usize| -> usize {
        let (hi, lo) = (&chains[k + 1], &chains[k]);
        if hi.is_empty() || lo.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = hi
            .iter()
            .map(|&sigma| {
                lo.iter()
                    .map(|&tau| {
                        if tau & !sigma != 0 || (sigma & !tau).count_ones() != 1 {
                            return 0;
                        }
                        let removed = sigma & !tau;
                        // sign = (-1)^(position of the removed vertex within sigma)
                        let below = (sigma & (removed - 1)).count_ones();
                        if below % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        rank_over_q(rows)
    };
    let ranks: Vec<usize> = (0..vertices).map(boundary_rank).collect();
    (0..chains.len())
        .map(|idx| {
            let c = chains[idx].len();
            // ∂ out of this dimension is ranks[idx - 1]; into it is ranks[idx]
            let out = if idx == 0 { 0 } else { ranks[idx - 1] };
            let into = ranks.get(idx).copied().unwrap_or(0);
            (c - out - into) as u64
        })
        .collect()
}

/// Faces of the upper Koszul complex of `I` in multidegree `b`, as bitmasks.
pub fn upper_koszul_faces(i: &MonomialIdeal, b: &Monomial) -> Vec<u32> {
    let supp = b.support();
    let mut faces = Vec::new();
    let mut tau = supp;
    loop {
        let shifted: Vec<u32> = b
            .exponents()
            .iter()
            .enumerate()
            .map(|(v, &e)| if tau & (1 << v) != 0 { e - 1 } else { e })
            .collect();
        if i.contains(&Monomial::new(shifted)) {
            faces.push(tau);
        }
        if tau == 0 {
            break;
        }
        tau = (tau - 1) & supp;
    }
    faces
}

/// Multigraded Betti numbers of `S/I`.
pub fn betti_table(i: &MonomialIdeal) -> BettiTable {
    let n = i.n();
    let mut table = BettiTable::default();
    if i.is_unit() {
        return table;
    }
    table.entries.insert((0, Monomial::one(n)), 1);
    if i.is_zero() {
        return table;
    }
    let lcm = i.lcm_of_gens();
    for b in box_monomials(lcm.exponents()) {
        if !i.contains(&b) {
            continue;
        }
        let faces = upper_koszul_faces(i, &b);
        if faces.is_empty() {
            continue;
        }
        // compress the support of b to consecutive vertex labels
        let supp = b.support();
        let verts: Vec<usize> = (0..n).filter(|v| supp & (1 << v) != 0).collect();
        let compress = |f: u32| -> u32 {
            verts
                .iter()
                .enumerate()
                .filter(|(_, &v)| f & (1 << v) != 0)
                .fold(0, |acc, (k, _)| acc | (1 << k))
        };
        let local: Vec<u32> = faces.into_iter().map(compress).collect();
        let h = reduced_homology(&local, verts.len());
        for (idx, &rank) in h.iter().enumerate() {
            if rank > 0 {
                // idx = k + 1 with k = i - 2
                table.entries.insert((idx + 1, b.clone()), rank);
            }
        }
    }
    table
}

pub fn projective_dimension(i: &MonomialIdeal) -> usize {
    betti_table(i).projective_dimension()
}

/// `depth(S/I) = n - pd(S/I)`.
pub fn depth(i: &MonomialIdeal) -> Result<usize, AlgebraError> {
    if i.is_unit() {
        return Err(AlgebraError::DegenerateIdeal(i.to_string()));
    }
    Ok(i.n() - projective_dimension(i))
}

/// Krull dimension of `S/I`.
pub fn dim(i: &MonomialIdeal) -> Result<usize, AlgebraError> {
    Ok(height_dim(i)?.dim)
}

pub fn is_cm(i: &MonomialIdeal) -> Result<bool, AlgebraError> {
    Ok(depth(i)? == dim(i)?)
}

/// Number of standard monomials of `S/I` in each degree `0..=tmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction {
    pub values: Vec<u64>,
}

impl HilbertFunction {
    /// Value at `t`; negative degrees are zero.
    pub fn at(&self, t: i64) -> u64 {
        if t < 0 {
            0
        } else {
            self.values.get(t as usize).copied().unwrap_or(0)
        }
    }
}

pub fn hilbert_function(i: &MonomialIdeal, tmax: u32) -> HilbertFunction {
    let values = (0..=tmax)
        .map(|t| {
            monomials_of_degree(i.n(), t)
                .iter()
                .filter(|m| !i.contains(m))
                .count() as u64
        })
        .collect();
    HilbertFunction { values }
}

/// Checks `HF(S/(J∩P)) + HF(S/(J+P)) = HF(S/J) + HF(S/P)` up to `tmax`,
/// the numerical shadow of `0 → S/(J∩P) → S/J ⊕ S/P → S/(J+P) → 0`.
pub fn ses_additivity_check(j: &MonomialIdeal, p: &MonomialIdeal, tmax: u32) -> Result<bool, AlgebraError> {
    let cap = j.intersect(p)?;
    let cup = j.sum(p)?;
    let (a, b) = (hilbert_function(&cap, tmax), hilbert_function(&cup, tmax));
    let (c, d) = (hilbert_function(j, tmax), hilbert_function(p, tmax));
    Ok((0..=tmax as usize).all(|t| a.values[t] + b.values[t] == c.values[t] + d.values[t]))
}

/// `{"depth":1,"dim":2,"pd":3,"cm":false,"betti":[{"i":1,"deg":{"x":2,"z":1},"rank":1}]}`.
pub fn depth_json(i: &MonomialIdeal, tmax: Option<u32>) -> Result<serde_json::Value, AlgebraError> {
    let amb = i.ambient();
    let table = betti_table(i);
    let pd = table.projective_dimension();
    let d = dim(i)?;
    let depth = i.n() - pd;
    let betti: Vec<serde_json::Value> = table
        .entries
        .iter()
        .map(|((k, b), rank)| {
            let deg: serde_json::Map<String, serde_json::Value> = b
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (amb.name(v).to_string(), e.into()))
                .collect();
            json!({"i": k, "deg": deg, "rank": rank})
        })
        .collect();
    let mut out = json!({"depth": depth, "dim": d, "pd": pd, "cm": depth == d, "betti": betti});
    if let Some(t) = tmax {
        out["hilbert"] = json!(hilbert_function(i, t).values);
    }
    Ok(out)
}
