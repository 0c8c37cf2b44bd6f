//! Randomised cross-validation of the construction against the oracles.
//!
//! Sample `k` of a campaign with seed `s` draws from its own SplitMix64
//! stream whose initial state is output `k` (0-based) of a SplitMix64 stream
//! started at state `s`:
//!
//! ```text
//! next():  state += 0x9e3779b97f4a7c15
//!          z = state
//!          z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//!          z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//!          return z ^ (z >> 31)
//! below(n) = next() % n
//! ```
//!
//! Samples are evaluated in parallel and folded in index order, so a report
//! depends only on its configuration.

use std::collections::BTreeSet;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use crate::construction::{analyze_codim2, attempt_codim2_clean, attempt_pretty_clean, build_codim2_clean, build_pretty_clean, ConfigKind};
use crate::decomposition::ass_primes;
use crate::filtration::{dimension_two_hilbert_identity, is_scm};
use crate::monomial::{Ambient, Monomial, MonomialIdeal, MonomialPrime};
use crate::oracle::{dim, projective_dimension, ses_additivity_check};
use crate::stanley::{stanley_report, to_stanley, verify_stanley};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub count: usize,
    pub max_exp: u32,
    pub max_comps: usize,
    /// Restrict sampling to these kinds; `None` mixes kind-directed and unstructured samples.
    pub kinds: Option<Vec<ConfigKind>>,
    /// Degree bound of the Hilbert function checks.
    pub tmax: u32,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self { seed: 1, count: 100, max_exp: 3, max_comps: 8, kinds: None, tmax: 8 }
    }
}

impl Serialize for ConfigKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The deterministic per-sample random stream.
pub struct SampleRng(SplitMix64);

impl SampleRng {
    pub fn for_sample(seed: u64, index: u64) -> Self {
        const PHI: u64 = 0x9e37_79b9_7f4a_7c15;
        let state = SplitMix64::seed_from_u64(seed.wrapping_add(index.wrapping_mul(PHI))).next_u64();
        Self(SplitMix64::seed_from_u64(state))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// `next() % n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.0.next_u64() % n
    }

    fn exponent(&mut self, max_exp: u32) -> u32 {
        1 + self.below(max_exp as u64) as u32
    }

    /// A random permutation of `0..4` by Fisher-Yates from the top.
    fn perm4(&mut self) -> [usize; 4] {
        let mut p = [0, 1, 2, 3];
        for i in (1..4).rev() {
            let j = self.below(i as u64 + 1) as usize;
            p.swap(i, j);
        }
        p
    }
}

/// The irreducible ideal `(x_v^{e_v} : v in vars)`.
fn irreducible(ambient: &Ambient, vars: &[usize], exps: &[u32]) -> MonomialIdeal {
    let gens = vars
        .iter()
        .zip(exps)
        .map(|(&v, &e)| Monomial::pure_power(ambient.n(), v, e))
        .collect();
    MonomialIdeal::from_gens(ambient.clone(), gens)
}

fn random_irreducible(rng: &mut SampleRng, ambient: &Ambient, max_exp: u32) -> MonomialIdeal {
    let mask = 1 + rng.below(15) as u32;
    let vars: Vec<usize> = (0..4).filter(|v| mask & (1 << v) != 0).collect();
    let exps: Vec<u32> = vars.iter().map(|_| rng.exponent(max_exp)).collect();
    irreducible(ambient, &vars, &exps)
}

/// An intersection of one component `(v^a, w^b)` per canonical prime of `kind`
/// (relabelled by a random permutation) and up to `max_comps - #primes` more
/// on randomly chosen primes of the kind.
pub fn sample_kind(rng: &mut SampleRng, kind: ConfigKind, max_exp: u32, max_comps: usize) -> MonomialIdeal {
    let ambient = Ambient::xyzw();
    let perm = rng.perm4();
    let edges = kind.canonical_edges();
    let extras = if max_comps > edges.len() { rng.below((max_comps - edges.len()) as u64 + 1) as usize } else { 0 };
    let mut picks: Vec<usize> = (0..edges.len()).collect();
    for _ in 0..extras {
        picks.push(rng.below(edges.len() as u64) as usize);
    }
    let comps: Vec<MonomialIdeal> = picks
        .into_iter()
        .map(|k| {
            let (a, b) = edges[k];
            let exps = [rng.exponent(max_exp), rng.exponent(max_exp)];
            irreducible(&ambient, &[perm[a], perm[b]], &exps)
        })
        .collect();
    MonomialIdeal::intersect_all(&ambient, comps.iter()).expect("one ambient ring")
}

/// An intersection of `1..=max_comps` irreducible ideals on random non-empty variable sets.
pub fn sample_mixed(rng: &mut SampleRng, max_exp: u32, max_comps: usize) -> MonomialIdeal {
    let ambient = Ambient::xyzw();
    let k = 1 + rng.below(max_comps.max(1) as u64) as usize;
    let comps: Vec<MonomialIdeal> = (0..k).map(|_| random_irreducible(rng, &ambient, max_exp)).collect();
    MonomialIdeal::intersect_all(&ambient, comps.iter()).expect("one ambient ring")
}

/// Draws sample `index`: with a kind filter, a kind-directed sample of a kind
/// chosen uniformly from the filter; without one, a fair coin decides between
/// a kind-directed sample (kind uniform over all ten) and [`sample_mixed`].
/// The second return value is the partner ideal of the additivity check.
pub fn draw_sample(cfg: &CampaignConfig, index: u64) -> (MonomialIdeal, MonomialIdeal) {
    let mut rng = SampleRng::for_sample(cfg.seed, index);
    let i = match &cfg.kinds {
        Some(kinds) if !kinds.is_empty() => {
            let kind = kinds[rng.below(kinds.len() as u64) as usize];
            sample_kind(&mut rng, kind, cfg.max_exp, cfg.max_comps)
        }
        _ => {
            if rng.below(2) == 0 {
                let kind = ConfigKind::ALL[rng.below(10) as usize];
                sample_kind(&mut rng, kind, cfg.max_exp, cfg.max_comps)
            } else {
                sample_mixed(&mut rng, cfg.max_exp, cfg.max_comps)
            }
        }
    };
    let partner = random_irreducible(&mut rng, &Ambient::xyzw(), cfg.max_exp);
    (i, partner)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindTally {
    pub kind: Option<ConfigKind>,
    pub samples: usize,
    pub cm_true: usize,
    pub condition_true: usize,
    pub construction_ok: usize,
    pub depth_one: usize,
    pub dim_two: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScmTally {
    pub samples: usize,
    pub scm_true: usize,
    pub pretty_clean_ok: usize,
    pub stanley_ok: usize,
    pub mismatches: usize,
    pub stanley_mismatches: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleTally {
    pub samples: usize,
    pub depth_plus_pd_is_n: usize,
    pub depth_within_bounds: usize,
    pub depth_zero_iff_maximal_associated: usize,
    pub hilbert_identity: usize,
    pub ses_additivity: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub kinds_seen: usize,
    pub all_kinds_covered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub ideal: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub samples: usize,
    pub height_two_pure: usize,
    pub kinds: Vec<KindTally>,
    pub scm: ScmTally,
    pub oracle: OracleTally,
    pub coverage: Coverage,
    pub total_mismatches: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CampaignReport {
    pub fn kind(&self, kind: ConfigKind) -> &KindTally {
        self.kinds.iter().find(|t| t.kind == Some(kind)).expect("one tally per kind")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

/// Everything learned about one sample.
#[derive(Clone, Debug, Default)]
pub struct SampleOutcome {
    pub ideal: String,
    pub codim2: Option<Codim2Outcome>,
    pub scm: bool,
    pub pretty_clean_ok: bool,
    pub stanley_ok: bool,
    pub depth_plus_pd: bool,
    pub depth_bounds: bool,
    pub depth_zero: bool,
    pub hilbert_identity: bool,
    pub ses: bool,
    pub failures: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug)]
pub struct Codim2Outcome {
    pub kind: ConfigKind,
    pub cm: bool,
    pub condition: bool,
    pub construction: bool,
    pub depth_one: bool,
    pub dim_two: bool,
}

/// Runs every check on `i`; `partner` is the second ideal of the additivity check.
pub fn evaluate(i: &MonomialIdeal, partner: &MonomialIdeal, tmax: u32) -> SampleOutcome {
    let mut out = SampleOutcome { ideal: i.to_string(), ..Default::default() };
    
    let mut failures = Vec::new();

    let n = i.n();
    let pd = projective_dimension(i);
    let depth = n - pd;
    let d = match dim(i) {
        Ok(d) => d,
        Err(e) => {
            failures.push(out_fail("oracle", e.to_string()));
            out.failures = failures;
            return out;
        }
    };
    let ass = ass_primes(i).unwrap_or_default();
    let maximal = MonomialPrime::new((1 << n) - 1).expect("non-empty");
    out.depth_plus_pd = depth + pd == n;
    out.depth_bounds = depth <= d && d <= n;
    out.depth_zero = (depth == 0) == ass.contains(&maximal);
    out.hilbert_identity = dimension_two_hilbert_identity(i, tmax).unwrap_or(false);
    out.ses = ses_additivity_check(i, partner, tmax).unwrap_or(false);
    for (ok, what) in [
        (out.depth_plus_pd, "depth + pd = n"),
        (out.depth_bounds, "0 <= depth <= dim <= n"),
        (out.depth_zero, "depth 0 iff maximal ideal associated"),
        (out.hilbert_identity, "Hilbert identity of the dimension-two layer"),
        (out.ses, "additivity of Hilbert functions"),
    ] {
        if !ok {
            failures.push(out_fail("oracle", what.to_string()));
        }
    }

    if ass.iter().all(|p| p.height() == 2) {
        match analyze_codim2(i) {
            Ok((config, report)) => {
                let cm = depth == d;
                let condition = report.satisfied;
                let construction = attempt_codim2_clean(i).is_ok();
                let gated = build_codim2_clean(i);
                out.codim2 = Some(Codim2Outcome {
                    kind: config.kind,
                    cm,
                    condition,
                    construction,
                    depth_one: depth == 1,
                    dim_two: d == 2,
                });
                if cm != condition || condition != construction || condition != gated.is_ok() {
                    failures.push(out_fail(
                        "codim2",
                        format!(
                            "{}: cm={cm} condition={condition} construction={construction} gated={}",
                            config.kind,
                            gated.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|e| e.to_string())
                        ),
                    ));
                }
            }
            Err(e) => failures.push(out_fail("codim2", e.to_string())),
        }
    }

    match is_scm(i) {
        Ok(scm) => {
            out.scm = scm;
            let attempt = attempt_pretty_clean(i);
            out.pretty_clean_ok = attempt.is_ok();
            let gated = if scm { Some(build_pretty_clean(i)) } else { None };
            if scm != out.pretty_clean_ok || gated.as_ref().is_some_and(|g| g.is_err()) {
                let detail = match (&attempt, &gated) {
                    (_, Some(Err(e))) | (Err(e), _) => e.to_string(),
                    _ => "pretty clean filtration of a non-SCM ideal".to_string(),
                };
                failures.push(out_fail("scm", format!("scm={scm}: {detail}")));
            }
            if let (true, Some(Ok(pf))) = (scm, &gated) {
                let checked = to_stanley(pf).and_then(|sd| {
                    let verified = verify_stanley(&sd, &sd.default_box());
                    Ok((verified, stanley_report(i, &sd)?))
                });
                match checked {
                    Ok((verified, report)) => {
                        out.stanley_ok = verified && report.stanley_ok;
                        if !out.stanley_ok {
                            failures.push(out_fail(
                                "stanley",
                                format!("verified={verified} sdepth={} depth={}", report.sdepth, report.depth),
                            ));
                        }
                    }
                    Err(e) => failures.push(out_fail("stanley", e.to_string())),
                }
            }
        }
        Err(e) => failures.push(out_fail("scm", e.to_string())),
    }
    out.failures = failures;
    out
}

fn out_fail(check: &str, detail: String) -> (String, String) {
    (check.to_string(), detail)
}

/// Draws and evaluates `cfg.count` samples and folds them into a report.
pub fn run_campaign(cfg: &CampaignConfig) -> CampaignReport {
    let outcomes: Vec<SampleOutcome> = (0..cfg.count as u64)
        .into_par_iter()
        .map(|k| {
            let (i, partner) = draw_sample(cfg, k);
            evaluate(&i, &partner, cfg.tmax)
        })
        .collect();
    fold_outcomes(cfg, &outcomes)
}

fn fold_outcomes(cfg: &CampaignConfig, outcomes: &[SampleOutcome]) -> CampaignReport {
    let mut kinds: Vec<KindTally> = ConfigKind::ALL
        .iter()
        .map(|&k| KindTally { kind: Some(k), ..Default::default() })
        .collect();
    let mut scm = ScmTally::default();
    let mut oracle = OracleTally::default();
    let mut counterexamples = Vec::new();
    let mut height_two_pure = 0;
    let mut seen = BTreeSet::new();

    for (index, o) in outcomes.iter().enumerate() {
        oracle.samples += 1;
        oracle.depth_plus_pd_is_n += o.depth_plus_pd as usize;
        oracle.depth_within_bounds += o.depth_bounds as usize;
        oracle.depth_zero_iff_maximal_associated += o.depth_zero as usize;
        oracle.hilbert_identity += o.hilbert_identity as usize;
        oracle.ses_additivity += o.ses as usize;

        if let Some(c) = &o.codim2 {
            height_two_pure += 1;
            seen.insert(c.kind);
            let t = kinds.iter_mut().find(|t| t.kind == Some(c.kind)).expect("every kind tallied");
            t.samples += 1;
            t.cm_true += c.cm as usize;
            t.condition_true += c.condition as usize;
            t.construction_ok += c.construction as usize;
            t.depth_one += c.depth_one as usize;
            t.dim_two += c.dim_two as usize;
        }

        scm.samples += 1;
        scm.scm_true += o.scm as usize;
        scm.pretty_clean_ok += o.pretty_clean_ok as usize;
        scm.stanley_ok += o.stanley_ok as usize;

        for (check, detail) in &o.failures {
            match check.as_str() {
                "oracle" => oracle.mismatches += 1,
                "codim2" => match o.codim2 {
                    Some(c) => {
                        kinds.iter_mut().find(|t| t.kind == Some(c.kind)).expect("tallied").mismatches += 1;
                    }
                    None => scm.mismatches += 1,
                },
                "scm" => scm.mismatches += 1,
                _ => scm.stanley_mismatches += 1,
            }
            counterexamples.push(Counterexample {
                index,
                ideal: o.ideal.clone(),
                check: check.clone(),
                detail: detail.clone(),
            });
        }
    }

    let total_mismatches = counterexamples.len();
    CampaignReport {
        config: cfg.clone(),
        samples: outcomes.len(),
        height_two_pure,
        kinds,
        scm,
        oracle,
        coverage: Coverage { kinds_seen: seen.len(), all_kinds_covered: seen.len() == ConfigKind::ALL.len() },
        total_mismatches,
        counterexamples,
    }
}
