mod common;

use common::*;
use prettyclean::campaign::{sample_kind, sample_mixed, SampleRng};
use prettyclean::construction::{
    analyze_codim2, attempt_codim2_clean, build_codim2_clean, build_pretty_clean, generic_clean_search, ConfigKind,
};
use prettyclean::decomposition::ass_primes;
use prettyclean::filtration::is_scm;
use prettyclean::oracle::{depth, is_cm};
use prettyclean::stanley::{stanley_report, to_stanley, verify_stanley};
use prettyclean::{parse_ideal, Ambient, ConstructionError, MonomialIdeal};
use proptest::prelude::*;

fn id(s: &str) -> MonomialIdeal {
    parse_ideal(s, &Ambient::xyzw()).unwrap()
}

fn kind_strategy() -> impl Strategy<Value = ConfigKind> {
    prop::sample::select(ConfigKind::ALL.iter().copied().filter(|k| *k != ConfigKind::TwoDisjoint).collect::<Vec<_>>())
}

fn assert_clean(i: &MonomialIdeal, built: &Result<prettyclean::filtration::PrimeFiltration, ConstructionError>) {
    let pf = built.as_ref().unwrap();
    assert_eq!(&pf.base, i);
    assert!(pf.is_complete());
    assert!(pf.verify().ok);
    assert!(pf.classify().unwrap().clean);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn condition_implies_cm_and_construction_tracks_cm(kind in kind_strategy(), seed in any::<u64>()) {
        let i = sample_kind(&mut SampleRng::for_sample(seed, 0), kind, 3, 8);
        let (config, report) = analyze_codim2(&i).unwrap();
        prop_assert_eq!(config.kind, kind);
        let cm = is_cm(&i).unwrap();
        if report.satisfied {
            prop_assert!(cm);
            assert_clean(&i, &build_codim2_clean(&i));
        } else {
            prop_assert_eq!(build_codim2_clean(&i), Err(ConstructionError::NotCohenMacaulay));
        }
        if kind.is_unconditional() {
            prop_assert!(report.satisfied);
        }
        let attempt = attempt_codim2_clean(&i);
        prop_assert_eq!(attempt.is_ok(), cm);
        if cm {
            assert_clean(&i, &attempt);
        }
    }

    #[test]
    fn classification_ignores_variable_names(kind in kind_strategy(), seed in any::<u64>(), perm in Just([0usize, 1, 2, 3]).prop_shuffle()) {
        let i = sample_kind(&mut SampleRng::for_sample(seed, 1), kind, 3, 6);
        let j = i.permuted(&perm);
        let (ci, ri) = analyze_codim2(&i).unwrap();
        let (cj, rj) = analyze_codim2(&j).unwrap();
        prop_assert_eq!(ci.kind, cj.kind);
        prop_assert_eq!(ri.satisfied, rj.satisfied);
        prop_assert_eq!(is_cm(&i).unwrap(), is_cm(&j).unwrap());
    }

    #[test]
    fn pretty_clean_exactly_when_scm(seed in any::<u64>()) {
        let i = sample_mixed(&mut SampleRng::for_sample(seed, 2), 3, 6);
        prop_assume!(i.is_proper());
        let built = build_pretty_clean(&i);
        prop_assert_eq!(built.is_ok(), is_scm(&i).unwrap());
        if let Ok(pf) = built {
            prop_assert_eq!(&pf.base, &i);
            prop_assert!(pf.verify().ok && pf.is_complete());
            prop_assert!(pf.classify().unwrap().pretty_clean);
            let sd = to_stanley(&pf).unwrap();
            prop_assert!(verify_stanley(&sd, &sd.default_box()));
            let report = stanley_report(&i, &sd).unwrap();
            prop_assert!(report.stanley_ok);
            prop_assert_eq!(report.depth, depth(&i).unwrap());
        } else {
            prop_assert_eq!(built, Err(ConstructionError::NotSequentiallyCm));
        }
    }

    #[test]
    fn stanley_spaces_partition_the_standard_monomials(seed in any::<u64>()) {
        let i = sample_mixed(&mut SampleRng::for_sample(seed, 3), 2, 5);
        prop_assume!(i.is_proper() && is_scm(&i).unwrap());
        let sd = to_stanley(&build_pretty_clean(&i).unwrap()).unwrap();
        let gs = raw_gens(&i);
        for m in cube(4, 4) {
            let mono = prettyclean::Monomial::new(m.clone());
            let hits = sd.spaces.iter().filter(|s| s.contains(&mono)).count();
            prop_assert_eq!(hits, usize::from(!member(&gs, &m)));
        }
    }

    #[test]
    fn search_reaches_the_unit_ideal_from_cm_ideals(kind in kind_strategy(), seed in any::<u64>()) {
        let i = sample_kind(&mut SampleRng::for_sample(seed, 4), kind, 2, 5);
        prop_assume!(is_cm(&i).unwrap());
        let ass = ass_primes(&i).unwrap();
        let unit = MonomialIdeal::unit(Ambient::xyzw());
        let pf = generic_clean_search(&i, &unit, Some(&ass)).unwrap();
        prop_assert!(pf.verify().ok && pf.is_complete());
        prop_assert!(pf.classify().unwrap().clean);
    }
}

/// Cohen-Macaulay ideals whose configuration condition fails. Each one is
/// confirmed by polarising and testing Reisner's criterion, independently of
/// the Betti oracle, and the unconditioned split construction finds a clean
/// filtration for it.
#[test]
fn cm_ideals_outside_the_condition() {
    let cases = [
        ("(x^3*w^2, x*y^2*z, x*y^2*w, x*y*w^2, y^3*z)", ConfigKind::Cycle4),
        ("(x^3*y^2*w, x^2*z^3, x*y^2*z*w, z^2*w^3, x*z^2*w)", ConfigKind::Paw4),
        ("(x*y^3*z^3, x^3*z*w^2, y^3*z*w, y^2*w^3, y*z*w^2)", ConfigKind::Five),
    ];
    for (text, kind) in cases {
        let i = id(text);
        let (config, report) = analyze_codim2(&i).unwrap();
        assert_eq!(config.kind, kind, "{text}");
        assert!(!report.satisfied, "{text}");
        assert!(is_cm(&i).unwrap(), "{text}");
        assert!(cohen_macaulay_by_reisner(&raw_gens(&i)), "{text}");
        assert_eq!(build_codim2_clean(&i), Err(ConstructionError::NotCohenMacaulay));
        assert_clean(&i, &attempt_codim2_clean(&i));
    }
}

#[test]
fn condition_failure_on_the_worked_example() {
    let i = id("intersect((x^2,y),(x,z),(z,w))");
    assert_eq!(i, id("(x^2*z, y*z, x^2*w, x*y*w)"));
    let (config, report) = analyze_codim2(&i).unwrap();
    assert_eq!(config.kind, ConfigKind::Path3);
    assert!(!report.satisfied);
    assert!(!is_cm(&i).unwrap());
    assert!(!is_scm(&i).unwrap());
    assert_eq!(build_pretty_clean(&i), Err(ConstructionError::NotSequentiallyCm));
    let r = i.radical();
    assert!(analyze_codim2(&r).unwrap().1.satisfied);
    assert_clean(&r, &build_codim2_clean(&r));
}
