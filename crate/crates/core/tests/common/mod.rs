//! Brute-force oracles shared by the integration tests. They work on raw
//! exponent vectors and avoid the library's ideal arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use prettyclean::{Ambient, Monomial, MonomialIdeal};
use proptest::prelude::*;

pub type Exps = Vec<u32>;

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn member(gens: &[Exps], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

pub fn raw_gens(i: &MonomialIdeal) -> Vec<Exps> {
    i.gens().iter().map(|g| g.exponents().to_vec()).collect()
}

/// All exponent vectors with `0 <= e_i <= bound`.
pub fn cube(n: usize, bound: u32) -> Vec<Exps> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Exps| {
                (0..=bound).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn ideal(gens: &[Exps]) -> MonomialIdeal {
    let amb = Ambient::xyzw();
    MonomialIdeal::from_gens(amb, gens.iter().map(|g| Monomial::new(g.clone())).collect())
}

/// Generators with exponents in `0..=max_exp`, at least one non-unit generator.
pub fn gens_strategy(max_exp: u32, max_gens: usize) -> impl Strategy<Value = Vec<Exps>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, 4), 1..=max_gens)
        .prop_filter("needs a non-unit generator", |gs| gs.iter().any(|g| g.iter().any(|&e| e > 0)))
        .prop_map(|gs| gs.into_iter().filter(|g| g.iter().any(|&e| e > 0)).collect())
}

/// Irreducible components `(x_v^{e_v} : v in mask)`, intersected.
pub fn irreducible_mix_strategy(max_exp: u32, max_comps: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec((1u32..16, prop::collection::vec(1..=max_exp, 4)), 1..=max_comps).prop_map(|comps| {
        let amb = Ambient::xyzw();
        let ideals: Vec<MonomialIdeal> = comps
            .into_iter()
            .map(|(mask, exps)| {
                let gens = (0..4)
                    .filter(|v| mask & (1 << v) != 0)
                    .map(|v| Monomial::pure_power(4, v, exps[v]))
                    .collect();
                MonomialIdeal::from_gens(amb.clone(), gens)
            })
            .collect();
        MonomialIdeal::intersect_all(&amb, ideals.iter()).unwrap()
    })
}

/// The K-polynomial `sum over subsets T of G(I) of (-1)^|T| t^lcm(T)`, as a
/// map from multidegree to coefficient (zero coefficients dropped).
pub fn k_polynomial_inclusion_exclusion(gens: &[Exps]) -> BTreeMap<Exps, i64> {
    let n = gens.first().map_or(0, Vec::len);
    let mut out: BTreeMap<Exps, i64> = BTreeMap::new();
    for mask in 0u64..(1 << gens.len()) {
        let mut l = vec![0; n];
        let mut size = 0;
        for (k, g) in gens.iter().enumerate() {
            if mask & (1 << k) != 0 {
                size += 1;
                for (a, &b) in l.iter_mut().zip(g) {
                    *a = (*a).max(b);
                }
            }
        }
        *out.entry(l).or_default() += if size % 2 == 0 { 1 } else { -1 };
    }
    out.retain(|_, c| *c != 0);
    out
}

const P: i64 = 32003;

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                let pivot = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Reduced homology ranks of a complex given by all its faces (bitmasks, empty face included).
fn reduced_betti(faces: &[u64]) -> BTreeMap<i64, usize> {
    let mut by_dim: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    for &f in faces {
        by_dim.entry(f.count_ones() as i64 - 1).or_default().push(f);
    }
    let top = *by_dim.keys().max().unwrap_or(&-1);
    let mut boundary_rank: BTreeMap<i64, usize> = BTreeMap::new();
    for d in 0..=top {
        let rows = by_dim.get(&(d - 1)).cloned().unwrap_or_default();
        let cols = by_dim.get(&d).cloned().unwrap_or_default();
        let index: BTreeMap<u64, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (j, &f) in cols.iter().enumerate() {
            let verts: Vec<u32> = (0..64).filter(|v| f & (1 << v) != 0).collect();
            for (k, &v) in verts.iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { P - 1 };
                m[index[&(f & !(1 << v))]][j] = sign;
            }
        }
        boundary_rank.insert(d, rank_mod_p(m));
    }
    (-1..=top)
        .map(|d| {
            let count = by_dim.get(&d).map_or(0, Vec::len);
            let h = count - boundary_rank.get(&d).copied().unwrap_or(0) - boundary_rank.get(&(d + 1)).copied().unwrap_or(0);
            (d, h)
        })
        .collect()
}

/// Cohen-Macaulayness of `S/I` by polarising to a squarefree ideal and
/// testing Reisner's criterion on every link of its Stanley-Reisner complex.
pub fn cohen_macaulay_by_reisner(gens: &[Exps]) -> bool {
    let n = gens[0].len();
    let max: Vec<u32> = (0..n).map(|v| gens.iter().map(|g| g[v]).max().unwrap()).collect();
    let mut offset = vec![0u32; n];
    for v in 1..n {
        offset[v] = offset[v - 1] + max[v - 1];
    }
    let verts = offset[n - 1] + max[n - 1];
    assert!(verts <= 20, "polarisation too large for the brute-force check");
    let polar: Vec<u64> = gens
        .iter()
        .map(|g| {
            let offset = &offset;
            (0..n).flat_map(|v| (0..g[v]).map(move |j| 1u64 << (offset[v] + j))).fold(0, |a, b| a | b)
        })
        .collect();
    let faces: Vec<u64> = (0..(1u64 << verts)).filter(|&f| polar.iter().all(|&p| p & !f != 0)).collect();
    let face_set: HashSet<u64> = faces.iter().copied().collect();
    faces.iter().all(|&f| {
        let link: Vec<u64> = faces.iter().filter(|&&g| g & f == f).map(|&g| g & !f).collect();
        debug_assert!(link.iter().all(|g| face_set.contains(&(g | f))));
        let h = reduced_betti(&link);
        let top = link.iter().map(|g| g.count_ones() as i64 - 1).max().unwrap_or(-1);
        h.iter().all(|(&d, &r)| d >= top || r == 0)
    })
}
