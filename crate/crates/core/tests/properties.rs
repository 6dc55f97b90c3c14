mod common;

use std::collections::BTreeSet;

use buchweitz_core::enumeration::enumerate_by_genus;
use buchweitz_core::intset::{
    decompose, extract_decomposition, iterated_sumsets, multiple_sumset, nathanson_threshold,
    normalize, DEFAULT_WINDOW_CAP_BITS,
};
use buchweitz_core::{
    beta, beta_profile, buchweitz_set, buchweitz_set_of_semigroup, BuchKind, BuchweitzResult,
    FiniteIntSet, NumericalSemigroup,
};
use common::{mask_to_vec, naive_beta, naive_multiple, oracle_gapsets};
use num_integer::gcd;
use proptest::collection::btree_set;
use proptest::prelude::*;

fn small_set() -> impl Strategy<Value = Vec<i64>> {
    btree_set(-5i64..=20, 1..=8).prop_map(|s| s.into_iter().collect())
}

/// Normalized sets: contain 0 and have gcd 1, `k ≤ 6`, `a0 ≤ 12`.
fn normalized_set() -> impl Strategy<Value = Vec<i64>> {
    (2i64..=12, btree_set(1i64..12, 0..=4)).prop_filter_map("gcd 1", |(a0, inner)| {
        let mut v: BTreeSet<i64> = inner.into_iter().filter(|&x| x < a0).collect();
        v.insert(0);
        v.insert(a0);
        let g = v.iter().fold(0, |g, &x| gcd(g, x));
        (g == 1).then(|| v.into_iter().collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sumsets_match_naive_enumeration(values in small_set(), n in 1usize..=6) {
        let set: FiniteIntSet = values.iter().copied().collect();
        let engine = multiple_sumset(&set, n as i64, DEFAULT_WINDOW_CAP_BITS).unwrap();
        let naive: Vec<i64> = naive_multiple(&values, n).into_iter().collect();
        prop_assert_eq!(engine.to_vec(), naive);
    }

    #[test]
    fn beta_matches_naive(values in small_set(), n in 1usize..=5) {
        let set: FiniteIntSet = values.iter().copied().collect();
        prop_assert_eq!(beta(&set, n as i64).unwrap(), naive_beta(&values, n));
    }

    #[test]
    fn beta_one_is_one(values in small_set()) {
        let set: FiniteIntSet = values.iter().copied().collect();
        prop_assert_eq!(beta(&set, 1).unwrap(), 1);
    }

    #[test]
    fn sumset_extremes_and_monotone_chain(values in normalized_set()) {
        let set: FiniteIntSet = values.iter().copied().collect();
        let (lo, hi) = (set.min().unwrap(), set.max().unwrap());
        let mut prev: Option<FiniteIntSet> = None;
        for (i, s) in iterated_sumsets(&set, 8).enumerate() {
            let s = s.unwrap();
            let n = i as i64 + 1;
            prop_assert_eq!(s.min(), Some(n * lo));
            prop_assert_eq!(s.max(), Some(n * hi));
            if let Some(p) = &prev {
                prop_assert!(p.iter().all(|x| s.contains(x)));
            }
            prev = Some(s);
        }
    }

    #[test]
    fn affine_invariance(values in small_set(), lambda in prop_oneof![-7i64..=-1, 1i64..=7], mu in -50i64..=50) {
        let set: FiniteIntSet = values.iter().copied().collect();
        let image: FiniteIntSet = values.iter().map(|x| lambda * x + mu).collect();
        for n in 1..=5 {
            prop_assert_eq!(beta(&set, n).unwrap(), beta(&image, n).unwrap());
        }
        if values.len() >= 2 {
            let norm = normalize(&image).unwrap();
            prop_assert_eq!(norm.reconstruct(), image.clone());
            prop_assert!(norm.base.contains(0));
            prop_assert_eq!(buchweitz_set(&set).unwrap(), buchweitz_set(&image).unwrap());
        }
    }

    #[test]
    fn tail_formula_is_exact(values in normalized_set()) {
        let set: FiniteIntSet = values.iter().copied().collect();
        let profile = beta_profile(&set).unwrap();
        let start = profile.tail_start();
        let g_minus_one = set.len() as i64 - 1;
        for (i, s) in iterated_sumsets(&set, (start + 10) as usize).enumerate() {
            let n = i as i64 + 1;
            let explicit = s.unwrap().len() as i64 - (2 * n - 1) * g_minus_one;
            prop_assert_eq!(profile.value(n), explicit, "n = {}", n);
            if n >= profile.explicit_end() {
                prop_assert_eq!(profile.tail_value(n), explicit);
            }
        }
    }

    #[test]
    fn linear_growth_and_stable_decomposition_past_tail_start(values in normalized_set()) {
        let set: FiniteIntSet = values.iter().copied().collect();
        let a0 = set.max().unwrap();
        let start = beta_profile(&set).unwrap().tail_start();
        let sums: Vec<FiniteIntSet> = iterated_sumsets(&set, (start + 11) as usize).map(Result::unwrap).collect();
        let first = decompose(&sums[start as usize - 1], a0, start).unwrap();
        for n in start..start + 10 {
            let here = &sums[n as usize - 1];
            let next = &sums[n as usize];
            prop_assert_eq!(next.len() as i64 - here.len() as i64, a0);
            let d = decompose(here, a0, n).unwrap();
            prop_assert_eq!(d.reassemble(), here.clone());
            prop_assert!(d.same_boundary(&first), "boundary moved at n = {}", n);
        }
    }

    #[test]
    fn decomposition_is_stable_at_the_threshold(values in normalized_set().prop_filter("small threshold", |v| {
        (v.len() as i64 - 2) * (v[v.len() - 1] - 1) * v[v.len() - 1] <= 200
    })) {
        let set: FiniteIntSet = values.iter().copied().collect();
        let norm = normalize(&set).unwrap();
        let t = nathanson_threshold(&norm).unwrap();
        let at = extract_decomposition(&norm, t).unwrap();
        let after = extract_decomposition(&norm, t + 1).unwrap();
        prop_assert!(at.same_boundary(&after));
        let sum_t = multiple_sumset(&norm.base, t + 1, DEFAULT_WINDOW_CAP_BITS).unwrap();
        let sum_t0 = multiple_sumset(&norm.base, t, DEFAULT_WINDOW_CAP_BITS).unwrap();
        prop_assert_eq!(sum_t.len() as i64 - sum_t0.len() as i64, norm.a0);
    }

    #[test]
    fn trichotomy_for_sets_containing_one_and_two(extra in btree_set(3i64..=40, 0..=10)) {
        let mut values: BTreeSet<i64> = extra;
        values.insert(1);
        values.insert(2);
        let set: FiniteIntSet = values.iter().copied().collect();
        let result = buchweitz_set(&set).unwrap();
        let (f, g) = (set.max().unwrap(), set.len() as i64);
        if f == 2 * g - 1 {
            // Constant tail; not necessarily nonpositive outside gapsets.
            let profile = beta_profile(&set).unwrap();
            prop_assert_eq!(profile.tail_slope(), 0);
            let cofinite = profile.tail_intercept() >= 1;
            prop_assert_eq!(result.kind == BuchKind::Cofinite, cofinite, "{} -> {}", set, result);
        } else {
            prop_assert_eq!(result.kind == BuchKind::Cofinite, f >= 2 * g, "{} -> {}", set, result);
        }
    }

    #[test]
    fn semigroup_results_are_finite(gens in btree_set(2i64..=30, 1..=5)) {
        let gens: Vec<i64> = gens.into_iter().collect();
        if gens.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
            return Ok(());
        }
        let s = NumericalSemigroup::from_generators(&gens).unwrap();
        prop_assume!(s.genus() >= 2);
        let r = buchweitz_set_of_semigroup(&s).unwrap();
        prop_assert!(r.is_finite());
        prop_assert!(s.frobenius() <= 2 * s.genus() - 1);
    }
}

#[test]
fn constant_positive_tail_at_the_boundary() {
    // max = 2|A| - 1 and β stays at 1: brute force agrees for n ≤ 8.
    let values = [1, 2, 3, 4, 5, 6, 9, 15];
    let set: FiniteIntSet = values.iter().copied().collect();
    for n in 2..=8 {
        assert_eq!(naive_beta(&values, n), 1);
    }
    assert_eq!(
        buchweitz_set(&set).unwrap(),
        BuchweitzResult::cofinite(vec![], 2)
    );
}

#[test]
fn tree_matches_oracle_up_to_genus_eight() {
    let mut by_genus: Vec<BTreeSet<Vec<i64>>> = vec![BTreeSet::new(); 9];
    enumerate_by_genus(8, |node| {
        let fresh = by_genus[node.genus() as usize].insert(node.gapset().to_vec());
        assert!(fresh, "duplicate node {:?}", node.gapset());
    })
    .unwrap();
    for g in 0..=8u32 {
        let oracle: BTreeSet<Vec<i64>> = oracle_gapsets(g).into_iter().map(mask_to_vec).collect();
        assert_eq!(by_genus[g as usize], oracle, "genus {g}");
    }
}

#[test]
fn symmetric_semigroups_have_empty_buchweitz_sets() {
    let mut checked = 0;
    enumerate_by_genus(11, |node| {
        assert!(node.frobenius() <= 2 * node.genus() as i64 - 1 || node.genus() == 0);
        if node.genus() >= 2 && node.is_symmetric() && node.multiplicity() >= 3 {
            let result = buchweitz_set(&node.gapset()).unwrap();
            assert!(result.is_finite() && result.is_empty(), "{}", node.gapset());
            checked += 1;
        }
    })
    .unwrap();
    assert!(checked > 0);
}
