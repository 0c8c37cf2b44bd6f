mod common;

use std::collections::BTreeSet;

use common::*;
use prettyclean::decomposition::{ass_primes, irreducible_decomposition, primary_components};
use prettyclean::filtration::{dimension_filtration, dimension_two_hilbert_identity, is_scm};
use prettyclean::oracle::{betti_table, depth, dim, hilbert_function, is_cm, ses_additivity_check};
use prettyclean::{Ambient, MonomialIdeal, MonomialPrime};
use proptest::prelude::*;

fn xyzw() -> Ambient {
    Ambient::xyzw()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn irreducible_components_reassemble(gs in gens_strategy(3, 6)) {
        let i = ideal(&gs);
        let comps = irreducible_decomposition(&i).unwrap();
        let ideals: Vec<MonomialIdeal> = comps.iter().map(|c| c.to_ideal(&xyzw())).collect();
        prop_assert_eq!(MonomialIdeal::intersect_all(&xyzw(), ideals.iter()).unwrap(), i.clone());
        for (a, p) in ideals.iter().enumerate() {
            prop_assert!(p.gens().iter().all(|g| g.pure_power_var().is_some()));
            let rest = ideals.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, q)| q);
            let without = MonomialIdeal::intersect_all(&xyzw(), rest).unwrap();
            prop_assert_ne!(without, i.clone(), "component {} is redundant", p);
        }
    }

    #[test]
    fn primary_components_have_distinct_radicals(gs in gens_strategy(3, 6)) {
        let i = ideal(&gs);
        let comps = primary_components(&i).unwrap();
        prop_assert_eq!(MonomialIdeal::intersect_all(&xyzw(), comps.iter().map(|c| &c.ideal)).unwrap(), i.clone());
        let radicals: BTreeSet<MonomialPrime> = comps.iter().map(|c| c.radical).collect();
        prop_assert_eq!(radicals.len(), comps.len());
        for c in &comps {
            prop_assert_eq!(c.ideal.radical(), c.radical.to_ideal(&xyzw()));
        }
        prop_assert_eq!(ass_primes(&i).unwrap(), radicals);
    }

    #[test]
    fn betti_numbers_give_the_k_polynomial(gs in gens_strategy(3, 7)) {
        let i = ideal(&gs);
        let mut from_betti = std::collections::BTreeMap::new();
        for ((k, b), r) in &betti_table(&i).entries {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            *from_betti.entry(b.exponents().to_vec()).or_insert(0i64) += sign * *r as i64;
        }
        from_betti.retain(|_, c| *c != 0);
        prop_assert_eq!(from_betti, k_polynomial_inclusion_exclusion(&raw_gens(&i)));
    }

    #[test]
    fn depth_bounds(gs in gens_strategy(3, 6)) {
        let i = ideal(&gs);
        let (d, k) = (depth(&i).unwrap(), dim(&i).unwrap());
        prop_assert!(d <= k);
        let max = MonomialPrime::from_vars(&[0, 1, 2, 3]).unwrap();
        prop_assert_eq!(d == 0, ass_primes(&i).unwrap().contains(&max));
        let ass = ass_primes(&i).unwrap();
        let smallest = ass.iter().map(|p| p.dim(4)).min().unwrap();
        prop_assert!(d <= smallest);
    }

    #[test]
    fn hilbert_function_counts_standard_monomials(gs in gens_strategy(3, 5)) {
        let i = ideal(&gs);
        let h = hilbert_function(&i, 6);
        for t in 0..=6u32 {
            let count = cube(4, t).into_iter().filter(|m| m.iter().sum::<u32>() == t && !member(&gs, m)).count();
            prop_assert_eq!(h.values[t as usize], count as u64);
        }
    }

    #[test]
    fn short_exact_sequence_additivity(a in gens_strategy(3, 5), b in gens_strategy(3, 5)) {
        prop_assert!(ses_additivity_check(&ideal(&a), &ideal(&b), 8).unwrap());
    }

    #[test]
    fn dimension_filtration_is_nested(i in irreducible_mix_strategy(3, 6)) {
        let df = dimension_filtration(&i).unwrap();
        prop_assert_eq!(df.level(-1), &i);
        prop_assert!(df.level(3).is_unit());
        for k in -1..3isize {
            prop_assert!(df.level(k).is_subset_of(df.level(k + 1)));
            let lower = df.level(k);
            if lower.is_unit() {
                continue;
            }
            let ass = ass_primes(lower).unwrap();
            prop_assert!(ass.iter().all(|p| p.dim(4) as isize > k));
        }
        prop_assert!(dimension_two_hilbert_identity(&i, 8).unwrap());
    }

    #[test]
    fn unmixed_scm_is_cm(i in irreducible_mix_strategy(3, 5)) {
        let ass = ass_primes(&i).unwrap();
        let h = ass.iter().next().unwrap().height();
        prop_assume!(ass.iter().all(|p| p.height() == h) && h < 4);
        prop_assert_eq!(is_scm(&i).unwrap(), is_cm(&i).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cohen_macaulay_agrees_with_reisner(gs in gens_strategy(2, 6)) {
        let i = ideal(&gs);
        prop_assert_eq!(is_cm(&i).unwrap(), cohen_macaulay_by_reisner(&raw_gens(&i)));
    }
}
