//! Dimension filtrations and prime filtrations.
//!
//! A prime filtration is stored as a base ideal and a list of steps `(u_i, P_i)`
//! with `F_i = F_{i-1} + (u_i)` and `(F_{i-1} : u_i) = P_i`, so that
//! `F_i / F_{i-1} ≅ (S/P_i)` shifted by the multidegree of `u_i`.

use serde_json::json;

use crate::decomposition::{ass_primes, minimal_primes, primary_components};
use crate::error::{AlgebraError, ConstructionError};
use crate::monomial::{Monomial, MonomialIdeal, MonomialPrime};
use crate::oracle::{hilbert_function, is_cm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub u: Monomial,
    pub prime: MonomialPrime,
}

impl FiltrationStep {
    pub fn new(u: Monomial, prime: MonomialPrime) -> Self {
        Self { u, prime }
    }

    /// The integer shift of the factor `(S/P)(-a)`: the total degree of `u`.
    pub fn shift(&self) -> u64 {
        self.u.degree()
    }
}

/// A chain `base = F_0 ⊂ F_1 ⊂ ... ⊂ F_r = top`.
///
/// For a prime filtration of `S/base` the top is the unit ideal; segments
/// produced by [`crate::construction::generic_clean_search`] may stop earlier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFiltration {
    pub base: MonomialIdeal,
    pub top: MonomialIdeal,
    pub steps: Vec<FiltrationStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    /// First step whose invariant fails; `Some(steps.len())` when every step
    /// holds but the chain does not end at `top`.
    pub failing_step: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub clean: bool,
    pub pretty_clean: bool,
}

impl PrimeFiltration {
    /// The empty filtration `base = top`.
    pub fn empty(base: MonomialIdeal) -> Self {
        Self { top: base.clone(), base, steps: Vec::new() }
    }

    /// A filtration of `S/base` ending at the unit ideal.
    pub fn new(base: MonomialIdeal, steps: Vec<FiltrationStep>) -> Self {
        let top = MonomialIdeal::unit(base.ambient().clone());
        Self { base, top, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.top.is_unit()
    }

    /// The chain `F_0, ..., F_r`.
    pub fn ideals(&self) -> Vec<MonomialIdeal> {
        let mut out = vec![self.base.clone()];
        for s in &self.steps {
            let next = out.last().expect("non-empty").add_monomial(&s.u);
            out.push(next);
        }
        out
    }

    /// Checks `u_i ∉ F_{i-1}`, `(F_{i-1} : u_i) = P_i` for every step and that the chain ends at `top`.
    pub fn verify(&self) -> VerificationReport {
        let amb = self.base.ambient();
        let mut f = self.base.clone();
        for (k, s) in self.steps.iter().enumerate() {
            let ok = s.u.n() == f.n()
                && !f.contains(&s.u)
                && f.colon(&s.u).is_ok_and(|c| c == s.prime.to_ideal(amb));
            if !ok {
                return VerificationReport { ok: false, failing_step: Some(k) };
            }
            f = f.add_monomial(&s.u);
        }
        if f != self.top {
            return VerificationReport { ok: false, failing_step: Some(self.steps.len()) };
        }
        VerificationReport { ok: true, failing_step: None }
    }

    /// Clean: every step prime is a minimal prime of the base.
    /// Pretty clean: no earlier step prime is strictly contained in a later one.
    pub fn classify(&self) -> Result<Classification, ConstructionError> {
        let report = self.verify();
        if !report.ok || !self.is_complete() {
            return Err(ConstructionError::UnverifiedFiltration(report.failing_step));
        }
        if self.base.is_unit() {
            return Ok(Classification { clean: true, pretty_clean: true });
        }
        let minimal = if self.base.is_zero() {
            Default::default()
        } else {
            minimal_primes(&ass_primes(&self.base)?)
        };
        let clean = self.steps.iter().all(|s| minimal.contains(&s.prime));
        let pretty_clean = self.steps.iter().enumerate().all(|(i, si)| {
            self.steps[i..]
                .iter()
                .all(|sj| !(si.prime != sj.prime && si.prime.is_subset_of(&sj.prime)))
        });
        Ok(Classification { clean, pretty_clean })
    }

    /// Transports a filtration of `S/J` with `J = (onto : multiplier)` to the
    /// interval from `onto` to `onto + multiplier * top`.
    pub fn lift(&self, multiplier: &Monomial, onto: &MonomialIdeal) -> PrimeFiltration {
        let steps = self
            .steps
            .iter()
            .map(|s| FiltrationStep::new(multiplier.mul(&s.u), s.prime))
            .collect();
        let mut top_gens: Vec<Monomial> = onto.gens().to_vec();
        top_gens.extend(self.top.gens().iter().map(|g| multiplier.mul(g)));
        PrimeFiltration {
            base: onto.clone(),
            top: MonomialIdeal::from_gens(onto.ambient().clone(), top_gens),
            steps,
        }
    }

    /// Appends a filtration that starts where this one ends.
    pub fn append(&mut self, next: PrimeFiltration) -> Result<(), ConstructionError> {
        if next.base != self.top {
            return Err(ConstructionError::InternalVerificationFailure {
                step: Some(self.steps.len()),
                detail: format!("segment starts at {} but the chain is at {}", next.base, self.top),
            });
        }
        self.steps.extend(next.steps);
        self.top = next.top;
        Ok(())
    }

    /// `{"base":[...],"steps":[{"u":"y","prime":["x"]}],"clean":true,"pretty_clean":true}`.
    pub fn to_json(&self) -> serde_json::Value {
        let amb = self.base.ambient();
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .map(|s| json!({"u": s.u.to_string_in(amb), "prime": s.prime.names(amb)}))
            .collect();
        let mut out = json!({"base": self.base.gen_strings(), "steps": steps});
        match self.classify() {
            Ok(c) => {
                out["clean"] = json!(c.clean);
                out["pretty_clean"] = json!(c.pretty_clean);
            }
            Err(_) => {
                out["verified"] = json!(false);
            }
        }
        if !self.is_complete() {
            out["top"] = json!(self.top.gen_strings());
        }
        out
    }
}

/// Checked entry points mirroring the methods.
pub fn verify_prime_filtration(pf: &PrimeFiltration) -> VerificationReport {
    pf.verify()
}

pub fn classify_filtration(pf: &PrimeFiltration) -> Result<Classification, ConstructionError> {
    pf.classify()
}

/// `I = D_{-1} ⊆ D_0 ⊆ ... ⊆ D_{n-1} = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionFiltration {
    /// `levels[k]` holds `D_{k-1}`.
    pub levels: Vec<MonomialIdeal>,
}

impl DimensionFiltration {
    /// `D_i` for `-1 <= i <= n-1`.
    pub fn level(&self, i: isize) -> &MonomialIdeal {
        &self.levels[(i + 1) as usize]
    }
}

/// `D_i` is the intersection of the primary components whose prime has `dim(S/p) > i`.
pub fn dimension_filtration(i: &MonomialIdeal) -> Result<DimensionFiltration, AlgebraError> {
    let comps = primary_components(i)?;
    let n = i.n();
    let levels = (-1..n as isize)
        .map(|level| {
            let parts: Vec<&MonomialIdeal> = comps
                .iter()
                .filter(|c| c.radical.dim(n) as isize > level)
                .map(|c| &c.ideal)
                .collect();
            MonomialIdeal::intersect_all(i.ambient(), parts)
        })
        .collect::<Result<_, _>>()?;
    Ok(DimensionFiltration { levels })
}

/// The monomial `u` with `D_{n-2}(I) = (u)`; the unit monomial when `D_{n-2} = S`.
pub fn principal_part(i: &MonomialIdeal) -> Result<Monomial, AlgebraError> {
    let df = dimension_filtration(i)?;
    Ok(principal_generator(df.level(i.n() as isize - 2)))
}

fn principal_generator(d: &MonomialIdeal) -> Monomial {
    debug_assert_eq!(d.gens().len(), 1, "intersections of height-one primaries are principal");
    d.gens()[0].clone()
}

fn require_four(i: &MonomialIdeal) -> Result<(), AlgebraError> {
    if i.n() != 4 {
        return Err(AlgebraError::WrongArity { expected: 4, found: i.n() });
    }
    if i.is_zero() || i.is_unit() {
        return Err(AlgebraError::DegenerateIdeal(i.to_string()));
    }
    Ok(())
}

/// The layer `D_2 / D_1 ≅ S/(D_1 : u)` in four variables, or `None` when it vanishes.
pub fn dimension_two_layer(i: &MonomialIdeal) -> Result<Option<(Monomial, MonomialIdeal)>, ConstructionError> {
    require_four(i)?;
    let df = dimension_filtration(i)?;
    let (d1, d2) = (df.level(1), df.level(2));
    if d1 == d2 {
        return Ok(None);
    }
    let u = principal_generator(d2);
    let j = d1.colon(&u)?;
    let ass = ass_primes(&j)?;
    if let Some(bad) = ass.iter().find(|p| p.height() != 2) {
        return Err(ConstructionError::ImpureDimensionTwoLayer(format!(
            "{j} (prime {})",
            bad.to_string_in(i.ambient())
        )));
    }
    Ok(Some((u, j)))
}

/// Sequentially Cohen-Macaulay test in four variables.
///
/// The factors of dimension 0 and 1 are always Cohen-Macaulay and
/// `S/D_2 = S/(u)` is a hypersurface, so only `D_2/D_1 ≅ S/(D_1 : u)` is tested.
pub fn is_scm(i: &MonomialIdeal) -> Result<bool, ConstructionError> {
    match dimension_two_layer(i)? {
        None => Ok(true),
        Some((_, j)) => Ok(is_cm(&j)?),
    }
}

/// `HF(S/D_1)(t) - HF(S/D_2)(t) = HF(S/(D_1 : u))(t - deg u)` for `t <= tmax`.
pub fn dimension_two_hilbert_identity(i: &MonomialIdeal, tmax: u32) -> Result<bool, AlgebraError> {
    let df = dimension_filtration(i)?;
    let k = i.n() as isize;
    let (d1, d2) = (df.level(k - 3), df.level(k - 2));
    let u = principal_generator(d2);
    let j = d1.colon(&u)?;
    let (h1, h2, hj) = (
        hilbert_function(d1, tmax),
        hilbert_function(d2, tmax),
        hilbert_function(&j, tmax),
    );
    let shift = u.degree() as i64;
    Ok((0..=tmax as i64).all(|t| h1.at(t) - h2.at(t) == hj.at(t - shift)))
}

/// `{"dimfilt":[{"level":-1,"gens":[...]}],"u":"x","scm":true}`.
pub fn dimfilt_json(i: &MonomialIdeal) -> Result<serde_json::Value, ConstructionError> {
    let df = dimension_filtration(i)?;
    let levels: Vec<serde_json::Value> = df
        .levels
        .iter()
        .enumerate()
        .map(|(k, d)| json!({"level": k as isize - 1, "gens": d.gen_strings()}))
        .collect();
    let u = principal_generator(df.level(i.n() as isize - 2));
    let mut out = json!({"dimfilt": levels, "u": u.to_string_in(i.ambient())});
    if i.n() == 4 {
        out["scm"] = json!(is_scm(i)?);
    }
    Ok(out)
}
