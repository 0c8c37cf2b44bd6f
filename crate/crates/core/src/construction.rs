//! Clean and pretty clean filtrations in four variables.
//!
//! Height-2 unmixed ideals are classified by the graph their associated
//! primes form on the four variables (each prime `(v, w)` is an edge of K4).
//! Up to relabelling there are ten such graphs. For each one the
//! Cohen-Macaulay property is equivalent to a combinatorial condition on the
//! primary components (conjunctions of disjunctions of inclusions
//! `P_i ⊆ P_j + P_k`), and a clean filtration is built by splitting off an
//! irreducible component `Q = (v^a, w^b)`:
//!
//! ```text
//! I ⊂ (I, v^a) ⊂ Q ⊂ S
//! (I, v^a)/I ≅ S/(I : v^a)          recursively, lifted by v^a
//! Q/(I, v^a) ≅ S/((I, v^a) : w^b)   recursively, lifted by w^b
//! S/Q                               peeled monomial by monomial
//! ```
//!
//! Which component and which variable is peeled follows the case analysis
//! for each graph; when that choice does not apply (or a colon turns out
//! differently), every other split is tried in turn. Every filtration
//! returned here has been re-verified step by step.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::decomposition::{ass_primes, irreducible_decomposition, primary_components, PrimaryComponent};
use crate::error::{AlgebraError, ConstructionError};
use crate::filtration::{dimension_filtration, dimension_two_layer, is_scm, FiltrationStep, PrimeFiltration};
use crate::monomial::{box_monomials, Ambient, Monomial, MonomialIdeal, MonomialPrime};

/// Isomorphism type of a set of height-2 primes in four variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigKind {
    Single,
    TwoShared,
    TwoDisjoint,
    Triangle,
    Star3,
    Path3,
    Paw4,
    Cycle4,
    Five,
    Six,
}

/// `P_sub ⊆ P_left + P_right`, with 1-based prime labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub sub: usize,
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{} ⊆ P{}+P{}", self.sub, self.left, self.right)
    }
}

/// Split recipe in canonical labels: take a component of prime `edge`,
/// peel the power of `peel`, keep the power of `keep`.
struct SplitRule {
    requires: &'static [Inclusion],
    edge: usize,
    peel: usize,
    keep: usize,
    /// Use prime 5 `(y,z)` peeling `z` when `y^b` is not a generator of `P5`.
    fallback_to_p5: bool,
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const W: usize = 3;

impl ConfigKind {
    pub const ALL: [ConfigKind; 10] = [
        ConfigKind::Single,
        ConfigKind::TwoShared,
        ConfigKind::TwoDisjoint,
        ConfigKind::Triangle,
        ConfigKind::Star3,
        ConfigKind::Path3,
        ConfigKind::Paw4,
        ConfigKind::Cycle4,
        ConfigKind::Five,
        ConfigKind::Six,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::Single => "Single",
            ConfigKind::TwoShared => "TwoShared",
            ConfigKind::TwoDisjoint => "TwoDisjoint",
            ConfigKind::Triangle => "Triangle",
            ConfigKind::Star3 => "Star3",
            ConfigKind::Path3 => "Path3",
            ConfigKind::Paw4 => "Paw4",
            ConfigKind::Cycle4 => "Cycle4",
            ConfigKind::Five => "Five",
            ConfigKind::Six => "Six",
        }
    }

    /// Canonical primes `P1, P2, ...` as variable pairs over `x, y, z, w`.
    pub fn canonical_edges(self) -> &'static [(usize, usize)] {
        match self {
            ConfigKind::Single => &[(X, Y)],
            ConfigKind::TwoShared => &[(X, Y), (X, Z)],
            ConfigKind::TwoDisjoint => &[(X, Y), (Z, W)],
            ConfigKind::Triangle => &[(X, Y), (X, Z), (Y, Z)],
            ConfigKind::Star3 => &[(X, Y), (X, Z), (X, W)],
            ConfigKind::Path3 => &[(X, Y), (X, Z), (Z, W)],
            ConfigKind::Paw4 => &[(X, Y), (X, W), (Y, W), (X, Z)],
            ConfigKind::Cycle4 => &[(X, Y), (X, Z), (Z, W), (Y, W)],
            ConfigKind::Five => &[(X, Y), (X, Z), (Z, W), (Y, W), (Y, Z)],
            ConfigKind::Six => &[(X, Y), (X, Z), (Z, W), (Y, W), (Y, Z), (X, W)],
        }
    }

    /// The Cohen-Macaulay condition as a conjunction of disjunctions.
    /// An empty list means the condition holds unconditionally, except for
    /// `TwoDisjoint`, which is never Cohen-Macaulay.
    pub fn condition(self) -> &'static [&'static [Inclusion]] {
        match self {
            ConfigKind::Single
            | ConfigKind::TwoShared
            | ConfigKind::TwoDisjoint
            | ConfigKind::Triangle
            | ConfigKind::Star3 => &[],
            ConfigKind::Path3 => &[&[Inclusion { sub: 2, left: 1, right: 3 }]],
            ConfigKind::Paw4 => &[&[Inclusion { sub: 1, left: 3, right: 4 }, Inclusion { sub: 2, left: 3, right: 4 }]],
            ConfigKind::Cycle4 => &[&[Inclusion { sub: 1, left: 2, right: 4 }, Inclusion { sub: 3, left: 2, right: 4 }], &[Inclusion { sub: 2, left: 1, right: 3 }, Inclusion { sub: 4, left: 1, right: 3 }]],
            ConfigKind::Five => &[
                &[Inclusion { sub: 1, left: 2, right: 4 }, Inclusion { sub: 3, left: 2, right: 4 }, Inclusion { sub: 5, left: 2, right: 4 }],
                &[Inclusion { sub: 2, left: 1, right: 3 }, Inclusion { sub: 4, left: 1, right: 3 }, Inclusion { sub: 5, left: 1, right: 3 }],
            ],
            ConfigKind::Six => &[
                &[Inclusion { sub: 1, left: 5, right: 6 }, Inclusion { sub: 2, left: 5, right: 6 }, Inclusion { sub: 3, left: 5, right: 6 }, Inclusion { sub: 4, left: 5, right: 6 }],
                &[Inclusion { sub: 1, left: 2, right: 4 }, Inclusion { sub: 3, left: 2, right: 4 }, Inclusion { sub: 5, left: 2, right: 4 }, Inclusion { sub: 6, left: 2, right: 4 }],
                &[Inclusion { sub: 2, left: 1, right: 3 }, Inclusion { sub: 4, left: 1, right: 3 }, Inclusion { sub: 5, left: 1, right: 3 }, Inclusion { sub: 6, left: 1, right: 3 }],
            ],
        }
    }

    /// Whether every ideal of this kind is Cohen-Macaulay.
    pub fn is_unconditional(self) -> bool {
        matches!(
            self,
            ConfigKind::Single | ConfigKind::TwoShared | ConfigKind::Triangle | ConfigKind::Star3
        )
    }

    fn rules(self) -> &'static [SplitRule] {
        const PEEL_SHARED: &[SplitRule] =
            &[SplitRule { requires: &[], edge: 1, peel: X, keep: Y, fallback_to_p5: false }];
        match self {
            ConfigKind::Single | ConfigKind::TwoDisjoint => &[],
            ConfigKind::TwoShared | ConfigKind::Triangle | ConfigKind::Star3 => PEEL_SHARED,
            ConfigKind::Path3 => &[SplitRule {
                requires: &[Inclusion { sub: 2, left: 1, right: 3 }],
                edge: 3,
                peel: Z,
                keep: W,
                fallback_to_p5: false,
            }],
            ConfigKind::Paw4 => &[
                SplitRule { requires: &[Inclusion { sub: 1, left: 3, right: 4 }], edge: 1, peel: X, keep: Y, fallback_to_p5: false },
                SplitRule { requires: &[Inclusion { sub: 2, left: 3, right: 4 }], edge: 2, peel: X, keep: W, fallback_to_p5: false },
            ],
            ConfigKind::Cycle4 => &[SplitRule {
                requires: &[Inclusion { sub: 1, left: 2, right: 4 }, Inclusion { sub: 2, left: 1, right: 3 }],
                edge: 1,
                peel: X,
                keep: Y,
                fallback_to_p5: false,
            }],
            ConfigKind::Five => &[SplitRule {
                requires: &[Inclusion { sub: 1, left: 2, right: 4 }, Inclusion { sub: 2, left: 1, right: 3 }],
                edge: 1,
                peel: X,
                keep: Y,
                fallback_to_p5: true,
            }],
            ConfigKind::Six => &[SplitRule {
                requires: &[Inclusion { sub: 1, left: 5, right: 6 }, Inclusion { sub: 1, left: 2, right: 4 }, Inclusion { sub: 2, left: 1, right: 3 }],
                edge: 1,
                peel: X,
                keep: Y,
                fallback_to_p5: false,
            }],
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConfigKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown configuration kind {s:?}"))
    }
}

/// A configuration kind together with a relabelling of the variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AssConfiguration {
    pub kind: ConfigKind,
    /// `perm[v]` is the canonical variable that input variable `v` plays.
    pub perm: [usize; 4],
}

impl AssConfiguration {
    fn inverse(&self) -> [usize; 4] {
        let mut inv = [0; 4];
        for (v, &c) in self.perm.iter().enumerate() {
            inv[c] = v;
        }
        inv
    }

    /// The input variable playing canonical variable `c`.
    pub fn input_var(&self, c: usize) -> usize {
        self.inverse()[c]
    }

    /// Canonical prime `P_k` (1-based) in input coordinates.
    pub fn prime(&self, k: usize) -> MonomialPrime {
        let (a, b) = self.kind.canonical_edges()[k - 1];
        MonomialPrime::from_vars(&[self.input_var(a), self.input_var(b)]).expect("two variables")
    }

    pub fn perm_names(&self, ambient: &Ambient) -> Vec<String> {
        self.perm.iter().map(|&c| ambient.name(c).to_string()).collect()
    }
}

fn all_perms() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|v| p.contains(&v)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn edge_mask(a: usize, b: usize) -> u32 {
    (1 << a) | (1 << b)
}

fn image_under(perm: &[usize; 4], p: &MonomialPrime) -> u32 {
    p.vars().iter().fold(0, |acc, &v| acc | (1 << perm[v]))
}

fn perm_matches(kind: ConfigKind, perm: &[usize; 4], primes: &BTreeSet<MonomialPrime>) -> bool {
    let canonical: BTreeSet<u32> = kind.canonical_edges().iter().map(|&(a, b)| edge_mask(a, b)).collect();
    let image: BTreeSet<u32> = primes.iter().map(|p| image_under(perm, p)).collect();
    image == canonical
}

fn check_height_two(primes: &BTreeSet<MonomialPrime>, ambient: &Ambient) -> Result<(), ConstructionError> {
    if ambient.n() != 4 {
        return Err(AlgebraError::WrongArity { expected: 4, found: ambient.n() }.into());
    }
    if let Some(p) = primes.iter().find(|p| p.height() != 2) {
        return Err(ConstructionError::NotHeightTwoPure(p.to_string_in(ambient)));
    }
    if primes.is_empty() || primes.len() > 6 {
        return Err(ConstructionError::BadPrimeCount(primes.len()));
    }
    Ok(())
}

/// Classifies a set of height-2 primes of `K[x,y,z,w]`.
///
/// The permutation returned is the lexicographically first one that maps the
/// input primes onto the canonical primes of the kind.
pub fn classify_ass_config(
    primes: &BTreeSet<MonomialPrime>,
    ambient: &Ambient,
) -> Result<AssConfiguration, ConstructionError> {
    check_height_two(primes, ambient)?;
    let perms = all_perms();
    for kind in ConfigKind::ALL {
        if kind.canonical_edges().len() != primes.len() {
            continue;
        }
        if let Some(perm) = perms.iter().find(|p| perm_matches(kind, p, primes)) {
            return Ok(AssConfiguration { kind, perm: *perm });
        }
    }
    unreachable!("the ten kinds cover every edge set of K4")
}

/// Every relabelling that realises the same kind, i.e. the first match composed
/// with each automorphism of the canonical graph.
pub fn equivalent_configurations(config: &AssConfiguration, primes: &BTreeSet<MonomialPrime>) -> Vec<AssConfiguration> {
    all_perms()
        .into_iter()
        .filter(|p| perm_matches(config.kind, p, primes))
        .map(|perm| AssConfiguration { kind: config.kind, perm })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseResult {
    /// Index of the conjunct this disjunct belongs to.
    pub group: usize,
    pub inclusion: Inclusion,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmConditionReport {
    pub kind: ConfigKind,
    pub clauses: Vec<ClauseResult>,
    pub satisfied: bool,
}

impl CmConditionReport {
    pub fn to_json(&self) -> serde_json::Value {
        let clauses: Vec<serde_json::Value> = self
            .clauses
            .iter()
            .map(|c| json!({"group": c.group, "test": c.inclusion.to_string(), "holds": c.holds}))
            .collect();
        json!({"clauses": clauses, "satisfied": self.satisfied})
    }

    pub fn failing(&self) -> impl Iterator<Item = &ClauseResult> {
        self.clauses.iter().filter(|c| !c.holds)
    }
}

/// Primary components labelled `P1, P2, ...` according to a configuration.
struct Labelled<'a> {
    comps: Vec<&'a PrimaryComponent>,
}

impl<'a> Labelled<'a> {
    fn new(config: AssConfiguration, comps: &'a [PrimaryComponent]) -> Result<Self, ConstructionError> {
        let k = config.kind.canonical_edges().len();
        if comps.len() != k {
            return Err(ConstructionError::ConfigMismatch);
        }
        let labelled = (1..=k)
            .map(|idx| {
                let p = config.prime(idx);
                comps.iter().find(|c| c.radical == p).ok_or(ConstructionError::ConfigMismatch)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { comps: labelled })
    }

    fn ideal(&self, k: usize) -> &MonomialIdeal {
        &self.comps[k - 1].ideal
    }

    fn holds(&self, c: &Inclusion) -> Result<bool, ConstructionError> {
        let sum = self.ideal(c.left).sum(self.ideal(c.right))?;
        Ok(self.ideal(c.sub).is_subset_of(&sum))
    }
}

/// Evaluates the Cohen-Macaulay condition of the configuration on the primary components.
pub fn cm_condition(config: &AssConfiguration, comps: &[PrimaryComponent]) -> Result<CmConditionReport, ConstructionError> {
    let labelled = Labelled::new(*config, comps)?;
    let mut clauses = Vec::new();
    let mut satisfied = config.kind != ConfigKind::TwoDisjoint;
    for (group, disjuncts) in config.kind.condition().iter().enumerate() {
        let mut any = false;
        for inclusion in disjuncts.iter() {
            let holds = labelled.holds(inclusion)?;
            any |= holds;
            clauses.push(ClauseResult { group, inclusion: *inclusion, holds });
        }
        satisfied &= any;
    }
    Ok(CmConditionReport { kind: config.kind, clauses, satisfied })
}

/// Configuration and condition report for a height-2 unmixed ideal.
pub fn analyze_codim2(i: &MonomialIdeal) -> Result<(AssConfiguration, CmConditionReport), ConstructionError> {
    let ass = ass_primes(i)?;
    let config = classify_ass_config(&ass, i.ambient())?;
    let comps = primary_components(i)?;
    let report = cm_condition(&config, &comps)?;
    Ok((config, report))
}

/// Filtration of `S/Q` for a `P`-primary `Q` generated in the variables of `P`,
/// peeling standard monomials from the socle down.
pub fn clean_filtration_primary(q: &MonomialIdeal, p: &MonomialPrime) -> Result<PrimeFiltration, ConstructionError> {
    let in_p = |m: &Monomial| m.support() & !p.mask() == 0;
    let primary = !q.is_zero()
        && q.is_proper()
        && q.gens().iter().all(in_p)
        && p.vars().iter().all(|&v| q.gens().iter().any(|g| g.pure_power_var() == Some(v)));
    if !primary {
        return Err(ConstructionError::NotPrimary(q.to_string()));
    }
    let bound = q.max_exponents();
    let mut standard: Vec<Monomial> = box_monomials(&bound)
        .filter(|m| in_p(m) && !q.contains(m))
        .collect();
    // descending degree: every x_i * m is either in Q or already peeled
    standard.sort_by(|a, b| b.grlex_cmp(a));
    let steps = standard.into_iter().map(|m| FiltrationStep::new(m, *p)).collect();
    Ok(PrimeFiltration::new(q.clone(), steps))
}

/// Filtration of `S/(u)` dividing out one variable at a time, lowest index first.
pub fn clean_filtration_principal(ambient: &Ambient, u: &Monomial) -> Result<PrimeFiltration, ConstructionError> {
    if u.is_one() {
        return Err(ConstructionError::UnitPrincipal);
    }
    let base = MonomialIdeal::principal(ambient.clone(), u.clone());
    let mut cur = u.clone();
    let mut steps = Vec::new();
    for v in 0..u.n() {
        let x = Monomial::var(u.n(), v);
        let prime = MonomialPrime::from_vars(&[v])?;
        while cur.exp(v) > 0 {
            cur = cur.quotient_by_gcd(&x);
            steps.push(FiltrationStep::new(cur.clone(), prime));
        }
    }
    Ok(PrimeFiltration::new(base, steps))
}

/// A split in input coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Split {
    edge: MonomialPrime,
    peel: usize,
    keep: usize,
}

/// Counters describing how a construction was reached.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Splits chosen by the case analysis of the configuration.
    pub rule_splits: usize,
    /// Splits found by trying the remaining components.
    pub fallback_splits: usize,
    /// Primary ideals peeled directly.
    pub primary_leaves: usize,
}

/// Recursive builder of clean filtrations for height-2 unmixed ideals.
///
/// The builder does not consult the Cohen-Macaulay condition; it only
/// succeeds when an actual clean filtration has been assembled. Results are
/// memoised per ideal.
#[derive(Default)]
pub struct Codim2Builder {
    memo: HashMap<MonomialIdeal, Option<PrimeFiltration>>,
    stats: BuildStats,
}

impl Codim2Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> BuildStats {
        self.stats
    }

    /// A clean filtration of `S/I`, or `None` if no split sequence produces one.
    pub fn build(&mut self, i: &MonomialIdeal) -> Result<Option<PrimeFiltration>, ConstructionError> {
        if i.is_unit() {
            return Ok(Some(PrimeFiltration::new(i.clone(), Vec::new())));
        }
        if let Some(hit) = self.memo.get(i) {
            return Ok(hit.clone());
        }
        let result = self.build_uncached(i)?;
        self.memo.insert(i.clone(), result.clone());
        Ok(result)
    }

    fn build_uncached(&mut self, i: &MonomialIdeal) -> Result<Option<PrimeFiltration>, ConstructionError> {
        if i.is_zero() || i.n() != 4 {
            return Ok(None);
        }
        let ass = ass_primes(i)?;
        if ass.iter().any(|p| p.height() != 2) {
            return Ok(None);
        }
        let comps = primary_components(i)?;
        if ass.len() == 1 {
            self.stats.primary_leaves += 1;
            let p = *ass.iter().next().expect("one prime");
            return Ok(Some(clean_filtration_primary(i, &p)?));
        }
        let config = classify_ass_config(&ass, i.ambient())?;
        if config.kind == ConfigKind::TwoDisjoint {
            return Ok(None);
        }
        let ruled = rule_splits(i, &config, &ass, &comps)?;
        let mut tried = HashSet::new();
        for split in &ruled {
            if !tried.insert(*split) {
                continue;
            }
            if let Some(pf) = self.try_split(i, &ass, split)? {
                self.stats.rule_splits += 1;
                return Ok(Some(pf));
            }
        }
        for p in &ass {
            let vars = p.vars();
            for (peel, keep) in [(vars[0], vars[1]), (vars[1], vars[0])] {
                let split = Split { edge: *p, peel, keep };
                if !tried.insert(split) {
                    continue;
                }
                if let Some(pf) = self.try_split(i, &ass, &split)? {
                    self.stats.fallback_splits += 1;
                    return Ok(Some(pf));
                }
            }
        }
        Ok(None)
    }

    fn try_split(
        &mut self,
        i: &MonomialIdeal,
        ass: &BTreeSet<MonomialPrime>,
        split: &Split,
    ) -> Result<Option<PrimeFiltration>, ConstructionError> {
        let amb = i.ambient();
        let n = i.n();
        let Some(q1) = split_component(i, split)? else {
            return Ok(None);
        };
        let (a, b) = (q1.exp(split.peel), q1.exp(split.keep));
        let va = Monomial::pure_power(n, split.peel, a);
        let wb = Monomial::pure_power(n, split.keep, b);
        let mid = i.add_monomial(&va);
        let q1_ideal = MonomialIdeal::from_gens(amb.clone(), vec![va.clone(), wb.clone()]);

        let mut pf = PrimeFiltration::empty(i.clone());
        if mid != *i {
            let j1 = i.colon(&va)?;
            let Some(sub) = self.build(&j1)? else {
                return Ok(None);
            };
            pf.append(sub.lift(&va, i))?;
        }
        if q1_ideal != mid {
            let j2 = mid.colon(&wb)?;
            if !ass_primes(&j2)?.is_subset(ass) {
                return Ok(None);
            }
            let Some(sub) = self.build(&j2)? else {
                return Ok(None);
            };
            pf.append(sub.lift(&wb, &mid))?;
        }
        pf.append(clean_filtration_primary(&q1_ideal, &split.edge)?)?;
        Ok(Some(pf))
    }
}

/// The irreducible component `(v^a, w^b)` of prime `edge` with the largest `b`;
/// ties go to the first component in canonical order.
fn split_component(i: &MonomialIdeal, split: &Split) -> Result<Option<Monomial>, ConstructionError> {
    let mut best: Option<Monomial> = None;
    for q in irreducible_decomposition(i)? {
        if q.radical() != split.edge {
            continue;
        }
        let b = q.exponent(split.keep);
        if best.as_ref().is_none_or(|m| b > m.exp(split.keep)) {
            let mut e = vec![0; i.n()];
            for (v, x) in q.entries() {
                e[v] = x;
            }
            best = Some(Monomial::new(e));
        }
    }
    Ok(best)
}

/// The splits prescribed by the case analysis, across all equivalent labellings,
/// restricted to the rules whose hypotheses hold.
fn rule_splits(
    i: &MonomialIdeal,
    config: &AssConfiguration,
    ass: &BTreeSet<MonomialPrime>,
    comps: &[PrimaryComponent],
) -> Result<Vec<Split>, ConstructionError> {
    let mut out = Vec::new();
    for cfg in equivalent_configurations(config, ass) {
        let labelled = Labelled::new(cfg, comps)?;
        for rule in config.kind.rules() {
            let mut ok = true;
            for c in rule.requires {
                ok &= labelled.holds(c)?;
            }
            if !ok {
                continue;
            }
            let split = Split {
                edge: cfg.prime(rule.edge),
                peel: cfg.input_var(rule.peel),
                keep: cfg.input_var(rule.keep),
            };
            if rule.fallback_to_p5 {
                let q1 = split_component(i, &split)?.expect("every labelled prime has a component");
                let yb = Monomial::pure_power(i.n(), split.keep, q1.exp(split.keep));
                if !labelled.ideal(5).gens().contains(&yb) {
                    out.push(Split {
                        edge: cfg.prime(5),
                        peel: cfg.input_var(Z),
                        keep: cfg.input_var(Y),
                    });
                    continue;
                }
            }
            out.push(split);
        }
    }
    Ok(out)
}

fn check_clean(pf: &PrimeFiltration) -> Result<(), ConstructionError> {
    let report = pf.verify();
    if !report.ok {
        return Err(ConstructionError::InternalVerificationFailure {
            step: report.failing_step,
            detail: format!("filtration of S/{} does not verify", pf.base),
        });
    }
    if !pf.classify()?.clean {
        return Err(ConstructionError::InternalVerificationFailure {
            step: None,
            detail: format!("filtration of S/{} is not clean", pf.base),
        });
    }
    Ok(())
}

/// Clean filtration of `S/I` for a height-2 unmixed Cohen-Macaulay ideal in four variables.
///
/// Fails with `NotCohenMacaulay` when the configuration condition does not hold.
pub fn build_codim2_clean(i: &MonomialIdeal) -> Result<PrimeFiltration, ConstructionError> {
    let ass = ass_primes(i)?;
    check_height_two(&ass, i.ambient())?;
    let (_, report) = analyze_codim2(i)?;
    if !report.satisfied {
        return Err(ConstructionError::NotCohenMacaulay);
    }
    clean_codim2_layer(i, &ass)
}

/// The split construction, then the generic search, for an ideal already known to be Cohen-Macaulay.
fn clean_codim2_layer(i: &MonomialIdeal, ass: &BTreeSet<MonomialPrime>) -> Result<PrimeFiltration, ConstructionError> {
    let mut builder = Codim2Builder::new();
    let pf = match builder.build(i)? {
        Some(pf) => pf,
        None => {
            let unit = MonomialIdeal::unit(i.ambient().clone());
            generic_clean_search(i, &unit, Some(ass))?
        }
    };
    check_clean(&pf)?;
    Ok(pf)
}

/// The split construction without consulting the Cohen-Macaulay condition.
///
/// Succeeds exactly when the recursion assembles a clean filtration, which
/// makes it an independent witness next to the condition and the depth oracle.
pub fn attempt_codim2_clean(i: &MonomialIdeal) -> Result<PrimeFiltration, ConstructionError> {
    attempt_codim2_clean_with(&mut Codim2Builder::new(), i)
}

pub fn attempt_codim2_clean_with(builder: &mut Codim2Builder, i: &MonomialIdeal) -> Result<PrimeFiltration, ConstructionError> {
    let ass = ass_primes(i)?;
    check_height_two(&ass, i.ambient())?;
    let pf = builder
        .build(i)?
        .ok_or_else(|| ConstructionError::ConstructionFailed(i.to_string()))?;
    check_clean(&pf)?;
    Ok(pf)
}

const SEARCH_BUDGET: usize = 200_000;

/// Depth-first search for a prime filtration from `base` up to `target` whose
/// primes lie in `allowed` (any prime when `None`).
///
/// The chain is built from the top down. The last step of any prime
/// filtration adds a minimal generator `g` of the top ideal `F`, and the
/// factor is the ray `g·K[Z]` with `Z` the variables outside the prime; so
/// each move deletes such a ray, provided what remains is still an ideal
/// containing `base`. Generators are restricted to the box of the largest
/// exponents of `base` and `target`. Moves are tried by prime height
/// ascending, then grlex ascending, which puts bigger primes first in the
/// resulting bottom-up order.
pub fn generic_clean_search(
    base: &MonomialIdeal,
    target: &MonomialIdeal,
    allowed: Option<&BTreeSet<MonomialPrime>>,
) -> Result<PrimeFiltration, ConstructionError> {
    base.ambient().check_same(target.ambient())?;
    if !base.is_subset_of(target) {
        return Err(ConstructionError::NotNested { base: base.to_string(), target: target.to_string() });
    }
    let n = base.n();
    let bound: Vec<u32> = base
        .max_exponents()
        .iter()
        .zip(target.max_exponents())
        .map(|(&a, b)| a.max(b))
        .collect();
    let primes: Vec<MonomialPrime> = match allowed {
        Some(a) => a.iter().copied().collect(),
        None => (1..(1u32 << n)).filter_map(|m| MonomialPrime::new(m).ok()).collect(),
    };
    let mut search = TopDown { base, bound, primes, failed: HashSet::new(), explored: 0, steps: Vec::new() };
    if search.dfs(target.clone()) {
        let mut steps = search.steps;
        steps.reverse();
        let pf = PrimeFiltration { base: base.clone(), top: target.clone(), steps };
        let report = pf.verify();
        if !report.ok {
            return Err(ConstructionError::InternalVerificationFailure {
                step: report.failing_step,
                detail: "search produced an invalid chain".into(),
            });
        }
        Ok(pf)
    } else {
        Err(ConstructionError::SearchExhausted {
            base: base.to_string(),
            target: target.to_string(),
            explored: search.explored,
        })
    }
}

struct TopDown<'a> {
    base: &'a MonomialIdeal,
    bound: Vec<u32>,
    primes: Vec<MonomialPrime>,
    failed: HashSet<MonomialIdeal>,
    explored: usize,
    steps: Vec<FiltrationStep>,
}

impl TopDown<'_> {
    /// Whether removing `g·K[Z]` (`Z` the variables outside `p`) from `f` leaves an ideal containing the base.
    fn removable(&self, f: &MonomialIdeal, g: &Monomial, p: &MonomialPrime) -> bool {
        let free = !p.mask();
        let meets_ray = |j: &MonomialIdeal, z: u32| j.gens().iter().any(|h| h.support() & !z == 0);
        if meets_ray(&self.base.colon(g).expect("same ring"), free) {
            return false;
        }
        (0..g.n()).filter(|&v| g.exp(v) > 0).all(|v| {
            let below = g.quotient_by_gcd(&Monomial::var(g.n(), v));
            !meets_ray(&f.colon(&below).expect("same ring"), free & !(1 << v))
        })
    }

    fn dfs(&mut self, f: MonomialIdeal) -> bool {
        if f == *self.base {
            return true;
        }
        if self.failed.contains(&f) || self.explored >= SEARCH_BUDGET {
            return false;
        }
        self.explored += 1;
        let n = f.n();
        let mut moves = Vec::new();
        for g in f.gens() {
            if self.base.contains(g) || g.exponents().iter().zip(&self.bound).any(|(e, b)| e > b) {
                continue;
            }
            for p in &self.primes {
                if self.removable(&f, g, p) {
                    moves.push((*p, g.clone()));
                }
            }
        }
        moves.sort_by(|(p, u), (q, v)| p.height().cmp(&q.height()).then_with(|| u.grlex_cmp(v)));
        for (p, g) in moves {
            let mut gens: Vec<Monomial> = f.gens().iter().filter(|h| **h != g).cloned().collect();
            gens.extend(p.vars().into_iter().map(|v| g.mul(&Monomial::var(n, v))));
            let next = MonomialIdeal::from_gens(f.ambient().clone(), gens);
            self.steps.push(FiltrationStep::new(g, p));
            if self.dfs(next) {
                return true;
            }
            self.steps.pop();
        }
        self.failed.insert(f);
        false
    }
}

fn require_four(i: &MonomialIdeal) -> Result<(), ConstructionError> {
    if i.n() != 4 {
        return Err(AlgebraError::WrongArity { expected: 4, found: i.n() }.into());
    }
    if i.is_zero() || i.is_unit() {
        return Err(AlgebraError::DegenerateIdeal(i.to_string()).into());
    }
    Ok(())
}

fn assemble_pretty_clean(i: &MonomialIdeal, gated: bool) -> Result<PrimeFiltration, ConstructionError> {
    require_four(i)?;
    if gated && !is_scm(i)? {
        return Err(ConstructionError::NotSequentiallyCm);
    }
    let amb = i.ambient();
    let df = dimension_filtration(i)?;
    let ass = ass_primes(i)?;
    let of_height = |h: usize| -> BTreeSet<MonomialPrime> { ass.iter().filter(|p| p.height() == h).copied().collect() };

    let mut pf = PrimeFiltration::empty(i.clone());
    let (d0, d1, d2) = (df.level(0), df.level(1), df.level(2));
    if d0 != i {
        pf.append(generic_clean_search(i, d0, Some(&of_height(4)))?)?;
    }
    if d1 != d0 {
        pf.append(generic_clean_search(d0, d1, Some(&of_height(3)))?)?;
    }
    if let Some((u, j)) = dimension_two_layer(i)? {
        let layer = if gated { clean_codim2_layer(&j, &ass_primes(&j)?)? } else { attempt_codim2_clean(&j)? };
        pf.append(layer.lift(&u, d1))?;
    }
    let u = &d2.gens()[0];
    if !u.is_one() {
        pf.append(clean_filtration_principal(amb, u)?)?;
    }
    let report = pf.verify();
    if !report.ok {
        return Err(ConstructionError::InternalVerificationFailure {
            step: report.failing_step,
            detail: format!("assembled filtration of S/{i} does not verify"),
        });
    }
    if !pf.classify()?.pretty_clean {
        return Err(ConstructionError::InternalVerificationFailure {
            step: None,
            detail: format!("assembled filtration of S/{i} is not pretty clean"),
        });
    }
    Ok(pf)
}

/// Pretty clean filtration of `S/I` for a sequentially Cohen-Macaulay `I` in four variables.
///
/// The pieces follow the dimension filtration: finite-length and
/// dimension-one factors by search, the dimension-two factor by the split
/// construction lifted by `u` where `D_2 = (u)`, and `S/(u)` last.
pub fn build_pretty_clean(i: &MonomialIdeal) -> Result<PrimeFiltration, ConstructionError> {
    assemble_pretty_clean(i, true)
}

/// [`build_pretty_clean`] without the sequentially Cohen-Macaulay gate and
/// without the condition gate on the dimension-two layer.
pub fn attempt_pretty_clean(i: &MonomialIdeal) -> Result<PrimeFiltration, ConstructionError> {
    assemble_pretty_clean(i, false)
}

/// `{"config":"Path3","perm":[...],"condition":{...},"filtration":null,"error":"NotCohenMacaulay"}`.
pub fn construction_json(
    config: Option<(&AssConfiguration, &CmConditionReport)>,
    ambient: &Ambient,
    result: &Result<PrimeFiltration, ConstructionError>,
) -> serde_json::Value {
    let (cfg, perm, cond) = match config {
        Some((c, r)) => (json!(c.kind.name()), json!(c.perm_names(ambient)), r.to_json()),
        None => (serde_json::Value::Null, serde_json::Value::Null, serde_json::Value::Null),
    };
    let (filtration, error) = match result {
        Ok(pf) => (pf.to_json(), serde_json::Value::Null),
        Err(e) => (serde_json::Value::Null, json!(error_name(e))),
    };
    json!({"config": cfg, "perm": perm, "condition": cond, "filtration": filtration, "error": error})
}

/// Stable short name of an error, used in JSON output.
pub fn error_name(e: &ConstructionError) -> String {
    match e {
        ConstructionError::NotCohenMacaulay => "NotCohenMacaulay".into(),
        ConstructionError::NotSequentiallyCm => "NotSequentiallyCM".into(),
        ConstructionError::SearchExhausted { .. } => "SearchExhausted".into(),
        ConstructionError::InternalVerificationFailure { .. } => "InternalVerificationFailure".into(),
        ConstructionError::NotHeightTwoPure(_) => "NotHeightTwoPure".into(),
        ConstructionError::ConstructionFailed(_) => "ConstructionFailed".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_monomial};

    fn amb() -> Ambient {
        Ambient::xyzw()
    }

    fn id(s: &str) -> MonomialIdeal {
        parse_ideal(s, &amb()).unwrap()
    }

    fn m(s: &str) -> Monomial {
        parse_monomial(s, &amb()).unwrap()
    }

    fn p(s: &str) -> MonomialPrime {
        id(s).as_prime().unwrap()
    }

    fn primes(list: &[&str]) -> BTreeSet<MonomialPrime> {
        list.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn classify_examples() {
        let c = classify_ass_config(&primes(&["(x,y)", "(x,z)", "(z,w)"]), &amb()).unwrap();
        assert_eq!(c.kind, ConfigKind::Path3);
        assert_eq!(c.perm, [0, 1, 2, 3]);
        let c = classify_ass_config(&primes(&["(x,y)", "(z,w)"]), &amb()).unwrap();
        assert_eq!(c.kind, ConfigKind::TwoDisjoint);
        let input = primes(&["(x,z)", "(y,z)", "(y,w)"]);
        let c = classify_ass_config(&input, &amb()).unwrap();
        assert_eq!(c.kind, ConfigKind::Path3);
        let mapped: BTreeSet<MonomialPrime> = (1..=3).map(|k| c.prime(k)).collect();
        assert_eq!(mapped, input);
        assert!(matches!(
            classify_ass_config(&primes(&["(x,y,z)"]), &amb()),
            Err(ConstructionError::NotHeightTwoPure(_))
        ));
    }

    #[test]
    fn every_edge_set_has_exactly_one_kind() {
        let edges: Vec<MonomialPrime> = (0..4)
            .flat_map(|a| ((a + 1)..4).map(move |b| MonomialPrime::from_vars(&[a, b]).unwrap()))
            .collect();
        let mut counts = HashMap::new();
        for mask in 1u32..64 {
            let set: BTreeSet<MonomialPrime> =
                (0..6).filter(|k| mask & (1 << k) != 0).map(|k| edges[k]).collect();
            let matching: Vec<ConfigKind> = ConfigKind::ALL
                .into_iter()
                .filter(|&k| all_perms().iter().any(|perm| perm_matches(k, perm, &set)))
                .collect();
            assert_eq!(matching.len(), 1, "{set:?}");
            *counts.entry(matching[0]).or_insert(0) += 1;
        }
        // labelled graphs on 4 vertices per isomorphism type
        let expect = [
            (ConfigKind::Single, 6),
            (ConfigKind::TwoShared, 12),
            (ConfigKind::TwoDisjoint, 3),
            (ConfigKind::Triangle, 4),
            (ConfigKind::Star3, 4),
            (ConfigKind::Path3, 12),
            (ConfigKind::Paw4, 12),
            (ConfigKind::Cycle4, 3),
            (ConfigKind::Five, 6),
            (ConfigKind::Six, 1),
        ];
        for (k, c) in expect {
            assert_eq!(counts[&k], c, "{k}");
        }
    }

    #[test]
    fn condition_on_worked_example() {
        let i = id("intersect((x^2,y),(x,z),(z,w))");
        let (config, report) = analyze_codim2(&i).unwrap();
        assert_eq!(config.kind, ConfigKind::Path3);
        assert!(!report.satisfied);
        let failing: Vec<String> = report.failing().map(|c| c.inclusion.to_string()).collect();
        assert_eq!(failing, vec!["P2 ⊆ P1+P3"]);
        let (_, report) = analyze_codim2(&i.radical()).unwrap();
        assert!(report.satisfied);
    }

    #[test]
    fn squarefree_cycle_satisfies_condition() {
        let i = id("intersect((x,y),(x,z),(z,w),(y,w))");
        let (config, report) = analyze_codim2(&i).unwrap();
        assert_eq!(config.kind, ConfigKind::Cycle4);
        assert!(report.satisfied);
        assert!(report.clauses.iter().all(|c| c.holds));
    }

    #[test]
    fn primary_peeling() {
        let pf = clean_filtration_primary(&id("(x^2,y)"), &p("(x,y)")).unwrap();
        assert_eq!(
            pf.steps,
            vec![FiltrationStep::new(m("x"), p("(x,y)")), FiltrationStep::new(m("1"), p("(x,y)"))]
        );
        let pf = clean_filtration_primary(&id("(x,y)"), &p("(x,y)")).unwrap();
        assert_eq!(pf.steps, vec![FiltrationStep::new(m("1"), p("(x,y)"))]);
        let pf = clean_filtration_primary(&id("(x^3,y^2)"), &p("(x,y)")).unwrap();
        assert_eq!(pf.len(), 6);
        assert!(pf.verify().ok);
        let degrees: Vec<u64> = pf.steps.iter().map(FiltrationStep::shift).collect();
        assert!(degrees.windows(2).all(|w| w[0] >= w[1]));
        assert!(clean_filtration_primary(&id("(x^2, z)"), &p("(x,y)")).is_err());
        assert!(clean_filtration_primary(&id("(x^2)"), &p("(x,y)")).is_err());
    }

    #[test]
    fn principal_peeling() {
        let pf = clean_filtration_principal(&amb(), &m("x*y")).unwrap();
        assert_eq!(pf.base, id("(x*y)"));
        assert_eq!(
            pf.steps,
            vec![FiltrationStep::new(m("y"), p("(x)")), FiltrationStep::new(m("1"), p("(y)"))]
        );
        let pf = clean_filtration_principal(&amb(), &m("x^2")).unwrap();
        assert_eq!(
            pf.steps,
            vec![FiltrationStep::new(m("x"), p("(x)")), FiltrationStep::new(m("1"), p("(x)"))]
        );
        let pf = clean_filtration_principal(&amb(), &m("x^2*z")).unwrap();
        let primes: Vec<MonomialPrime> = pf.steps.iter().map(|s| s.prime).collect();
        assert_eq!(primes, vec![p("(x)"), p("(x)"), p("(z)")]);
        assert!(pf.verify().ok);
        assert_eq!(clean_filtration_principal(&amb(), &m("1")), Err(ConstructionError::UnitPrincipal));
    }

    #[test]
    fn codim2_builds() {
        for text in [
            "intersect((x^2,y),(x,z))",
            "intersect((x,y),(x,z),(z,w))",
            "(x^2, y^3)",
            "intersect((x^2,y^3),(x,y^2),(x^3,z),(y,z^2))",
        ] {
            let i = id(text);
            let pf = build_codim2_clean(&i).unwrap();
            assert!(pf.verify().ok, "{text}");
            assert!(pf.classify().unwrap().clean, "{text}");
        }
        assert_eq!(
            build_codim2_clean(&id("intersect((x^2,y),(x,z),(z,w))")),
            Err(ConstructionError::NotCohenMacaulay)
        );
        assert_eq!(build_codim2_clean(&id("(x*z, x*w, y*z, y*w)")), Err(ConstructionError::NotCohenMacaulay));
        assert!(matches!(build_codim2_clean(&id("(x^2, x*y)")), Err(ConstructionError::NotHeightTwoPure(_))));
    }

    #[test]
    fn ungated_construction_fails_on_non_cm() {
        let i = id("intersect((x^2,y),(x,z),(z,w))");
        assert!(matches!(attempt_codim2_clean(&i), Err(ConstructionError::ConstructionFailed(_))));
        assert!(attempt_codim2_clean(&i.radical()).is_ok());
    }

    #[test]
    fn search_examples() {
        let unit = id("(1)");
        let pf = generic_clean_search(&id("(x^2,y,z,w)"), &unit, None).unwrap();
        assert_eq!(
            pf.steps,
            vec![FiltrationStep::new(m("x"), p("(x,y,z,w)")), FiltrationStep::new(m("1"), p("(x,y,z,w)"))]
        );
        // embedded maximal component: I -> D_0 peels only the maximal ideal
        let i = id("intersect((x), (x^2,y,z,w))");
        let d0 = id("(x)");
        let all_max = BTreeSet::from([p("(x,y,z,w)")]);
        let pf = generic_clean_search(&i, &d0, Some(&all_max)).unwrap();
        assert!(!pf.steps.is_empty());
        assert!(pf.steps.iter().all(|s| s.prime == p("(x,y,z,w)")));
        // dimension-one factor with height-3 primes
        let i = id("intersect((x^2,y),(x,y^2,z^2),(y,z,w^2))");
        let df = dimension_filtration(&i).unwrap();
        let h3 = BTreeSet::from([p("(x,y,z)"), p("(y,z,w)")]);
        let pf = generic_clean_search(df.level(0), df.level(1), Some(&h3)).unwrap();
        assert!(pf.verify().ok);
        assert!(pf.steps.iter().all(|s| s.prime.height() == 3));
        assert!(matches!(
            generic_clean_search(&id("(x)"), &id("(y)"), None),
            Err(ConstructionError::NotNested { .. })
        ));
        let only_y = BTreeSet::from([p("(y)")]);
        assert!(matches!(
            generic_clean_search(&id("(x)"), &unit, Some(&only_y)),
            Err(ConstructionError::SearchExhausted { .. })
        ));
    }

    #[test]
    fn pretty_clean_examples() {
        let pf = build_pretty_clean(&id("(x^2, x*y)")).unwrap();
        assert!(pf.classify().unwrap().pretty_clean);
        // codim-2 layer lifted by x, then the principal layer for x
        assert_eq!(
            pf.steps,
            vec![FiltrationStep::new(m("x"), p("(x,y)")), FiltrationStep::new(m("1"), p("(x)"))]
        );
        let pf = build_pretty_clean(&id("(x^2, y^3)")).unwrap();
        let c = pf.classify().unwrap();
        assert!(c.clean && c.pretty_clean);
        assert_eq!(
            build_pretty_clean(&id("intersect((x^2,y),(x,z),(z,w))")),
            Err(ConstructionError::NotSequentiallyCm)
        );
    }

    #[test]
    fn pretty_clean_with_all_layers() {
        let i = id("intersect((x^2), (y,z), (x,y^2,w), (x^2,y^2,z^2,w^2))");
        let pf = build_pretty_clean(&i).unwrap();
        let heights: Vec<usize> = pf.steps.iter().map(|s| s.prime.height()).collect();
        assert!(heights.windows(2).all(|w| w[0] >= w[1]), "{heights:?}");
        assert!(pf.classify().unwrap().pretty_clean);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ConfigKind::ALL {
            assert_eq!(k.name().parse::<ConfigKind>().unwrap(), k);
        }
        assert!("Hexagon".parse::<ConfigKind>().is_err());
    }
}
