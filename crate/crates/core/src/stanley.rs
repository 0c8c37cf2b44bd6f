//! Stanley decompositions `S/I = ⊕ u_i K[Z_i]` read off prime filtrations.

use serde_json::json;

use crate::error::ConstructionError;
use crate::filtration::PrimeFiltration;
use crate::monomial::{box_monomials, Monomial, MonomialIdeal};
use crate::oracle::depth;

/// The space `u · K[Z]`, with `Z` stored as a variable bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StanleySpace {
    pub u: Monomial,
    pub free: u32,
}

impl StanleySpace {
    pub fn new(u: Monomial, free_vars: &[usize]) -> Self {
        let free = free_vars.iter().fold(0, |acc, &v| acc | (1 << v));
        Self { u, free }
    }

    /// `u | m` and `supp(m/u) ⊆ Z`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.u.divides(m) && m.quotient_by_gcd(&self.u).support() & !self.free == 0
    }

    pub fn dimension(&self) -> usize {
        self.free.count_ones() as usize
    }

    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.u.n()).filter(|&v| self.free & (1 << v) != 0).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StanleyDecomposition {
    pub ideal: MonomialIdeal,
    pub spaces: Vec<StanleySpace>,
}

impl StanleyDecomposition {
    /// `min |Z_i|`; `n` for the empty decomposition of the zero module.
    pub fn sdepth(&self) -> usize {
        self.spaces
            .iter()
            .map(StanleySpace::dimension)
            .min()
            .unwrap_or(self.ideal.n())
    }

    /// The box `lcm(G(I)) + 1` in every coordinate.
    pub fn default_box(&self) -> Vec<u32> {
        let mut bound: Vec<u32> = self.ideal.max_exponents().iter().map(|e| e + 1).collect();
        for s in &self.spaces {
            for (b, &e) in bound.iter_mut().zip(s.u.exponents()) {
                *b = (*b).max(e + 1);
            }
        }
        bound
    }

    pub fn to_json(&self) -> serde_json::Value {
        let amb = self.ideal.ambient();
        let spaces: Vec<serde_json::Value> = self
            .spaces
            .iter()
            .map(|s| {
                let free: Vec<&str> = s.free_vars().into_iter().map(|v| amb.name(v)).collect();
                json!({"u": s.u.to_string_in(amb), "free": free})
            })
            .collect();
        json!({"spaces": spaces})
    }
}

/// One space per step: `u_i · K[variables outside P_i]`.
pub fn to_stanley(pf: &PrimeFiltration) -> Result<StanleyDecomposition, ConstructionError> {
    let report = pf.verify();
    if !report.ok || !pf.is_complete() {
        return Err(ConstructionError::UnverifiedFiltration(report.failing_step));
    }
    let all = (1u32 << pf.base.n()) - 1;
    let spaces = pf
        .steps
        .iter()
        .map(|s| StanleySpace { u: s.u.clone(), free: all & !s.prime.mask() })
        .collect();
    Ok(StanleyDecomposition { ideal: pf.base.clone(), spaces })
}

/// Every monomial of the box lies in exactly one space if it is outside `I`,
/// and in none if it is inside.
pub fn verify_stanley(sd: &StanleyDecomposition, bound: &[u32]) -> bool {
    box_monomials(bound).all(|m| {
        let hits = sd.spaces.iter().filter(|s| s.contains(&m)).count();
        if sd.ideal.contains(&m) {
            hits == 0
        } else {
            hits == 1
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StanleyReport {
    pub sdepth: usize,
    pub depth: usize,
    pub stanley_ok: bool,
}

/// Compares `sdepth` of the decomposition with `depth(S/I)` from the Betti oracle.
/// The unit ideal has depth and sdepth `n` by convention.
pub fn stanley_report(i: &MonomialIdeal, sd: &StanleyDecomposition) -> Result<StanleyReport, ConstructionError> {
    let sdepth = sd.sdepth();
    let depth = if i.is_unit() { i.n() } else { depth(i)? };
    Ok(StanleyReport { sdepth, depth, stanley_ok: sdepth >= depth })
}

/// `{"spaces":[{"u":"y","free":["y","z","w"]}],"sdepth":3,"depth":3,"stanley_ok":true}`.
pub fn stanley_json(sd: &StanleyDecomposition, report: &StanleyReport) -> serde_json::Value {
    let mut out = sd.to_json();
    out["sdepth"] = json!(report.sdepth);
    out["depth"] = json!(report.depth);
    out["stanley_ok"] = json!(report.stanley_ok);
    out
}
