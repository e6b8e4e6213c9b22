mod common;

use std::collections::BTreeSet;

use gapshift::entropy::{
    characteristic_sum, empirical_entropy, periodic_characteristic, sgap_entropy, solve_entropy, SolverConfig,
};
use gapshift::factor::ln_biguint;
use gapshift::{FactorSource, GapSet, ShiftSpec};
use proptest::prelude::*;

use common::strategies::{gap_set, shift_spec};

/// Distinct length-`n` windows of `word^∞`, counted directly.
fn cyclic_complexity(word: &[u8], n: usize) -> usize {
    let long: Vec<u8> = word.iter().copied().cycle().take(word.len() + n).collect();
    (0..word.len()).map(|i| &long[i..i + n]).collect::<BTreeSet<_>>().len()
}

/// Plain floating-point bisection for `Σ φ(n) λ^{-(n+1)} = 1`.
fn oracle_root(terms: &[(usize, f64)], k: usize) -> f64 {
    let f = |x: f64| terms.iter().map(|&(n, phi)| phi * x.powi(-(n as i32 + 1))).sum::<f64>();
    let (mut lo, mut hi) = (1.0, k as f64 + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn periodic_spec() -> impl Strategy<Value = ShiftSpec> {
    (gap_set(), (1usize..=3).prop_flat_map(|k| (Just(k), prop::collection::vec(1..=k as u8, 1..=5))))
        .prop_map(|(s, (k, word))| ShiftSpec::new(s, FactorSource::periodic(word, k).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncated_enclosures_contain_deeper_partial_sums(spec in shift_spec(), depth in 4usize..16, t in 0.05f64..1.0) {
        let lambda = 1.0 + t * spec.alphabet_size() as f64;
        let value = characteristic_sum(&spec, lambda, depth).unwrap();
        let deeper: f64 = spec.gap_set().elements_upto(4 * depth).unwrap().into_iter()
            .map(|n| (ln_biguint(&spec.factor_source().complexity(n).unwrap()) - (n + 1) as f64 * lambda.ln()).exp())
            .sum();
        prop_assert!(value.lo <= deeper * (1.0 + 1e-12), "{value:?} vs {deeper}");
        prop_assert!(deeper <= value.hi, "{value:?} vs {deeper}");
    }

    #[test]
    fn characteristic_sum_decreases(spec in shift_spec(), a in 0.05f64..1.0, b in 0.05f64..1.0) {
        let k = spec.alphabet_size() as f64;
        let (l1, l2) = (1.0 + a.min(b) * k, 1.0 + a.max(b) * k);
        let f1 = characteristic_sum(&spec, l1, 24).unwrap();
        let f2 = characteristic_sum(&spec, l2, 24).unwrap();
        if f1.hi.is_finite() {
            prop_assert!(f1.lo >= f2.hi - (f1.width() + f2.width()));
        }
    }

    #[test]
    fn solver_invariants(spec in shift_spec()) {
        let cfg = SolverConfig::with_tol(1e-10);
        let e = solve_entropy(&spec, &cfg).unwrap();
        let lam = e.lambda;
        prop_assert!(lam.width() <= cfg.tol);
        if lam.width() > 0.0 {
            let depth = lam.truncation_depth;
            prop_assert!(characteristic_sum(&spec, lam.lo, depth).unwrap().hi >= 1.0);
            prop_assert!(characteristic_sum(&spec, lam.hi, depth).unwrap().lo <= 1.0);
        }
        for n in 1..=25 {
            prop_assert!(empirical_entropy(&spec, n).unwrap() >= e.h_lo - (e.h_hi - e.h_lo) - 1e-12);
        }
        for n in spec.gap_set().elements_upto(30).unwrap() {
            let single = ln_biguint(&spec.factor_source().complexity(n).unwrap()) / (n + 1) as f64;
            prop_assert!(lam.hi >= single.exp() - cfg.tol);
        }
    }

    #[test]
    fn evaluators_agree_for_periodic_words(spec in periodic_spec(), t in 0.05f64..1.0) {
        let lambda = 1.0 + t * spec.alphabet_size() as f64;
        let closed = periodic_characteristic(&spec, lambda, 40).unwrap();
        let truncated = characteristic_sum(&spec, lambda, 40).unwrap();
        prop_assert!(closed.overlaps(&truncated), "{closed:?} vs {truncated:?}");
    }

    #[test]
    fn sgap_reduction(s in gap_set()) {
        let cfg = SolverConfig::with_tol(1e-11);
        let a = solve_entropy(&ShiftSpec::s_gap(s.clone()), &cfg).unwrap();
        let b = sgap_entropy(&s, &cfg).unwrap();
        prop_assert!(a.lambda.overlaps(&b.lambda));
    }

    #[test]
    fn finite_periodic_roots_match_an_independent_solver(
        elements in prop::collection::btree_set(0usize..10, 1..5),
        k in 1usize..=3,
        seed_word in prop::collection::vec(1u8..=3, 1..=5),
    ) {
        let word: Vec<u8> = seed_word.into_iter().map(|c| 1 + (c - 1) % k as u8).collect();
        let spec = ShiftSpec::new(GapSet::finite(elements.clone()).unwrap(), FactorSource::periodic(word.clone(), k).unwrap());
        let terms: Vec<(usize, f64)> = elements.iter().map(|&n| (n, cyclic_complexity(&word, n) as f64)).collect();
        let root = oracle_root(&terms, k);
        let e = solve_entropy(&spec, &SolverConfig::default()).unwrap();
        prop_assert!(e.lambda.lo - 1e-12 <= root && root <= e.lambda.hi + 1e-12, "{:?} vs {root}", e.lambda);
    }
}
