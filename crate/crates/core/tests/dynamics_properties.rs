mod common;

use gapshift::dynamics::{
    constructive_mixing_threshold, finite_s_zero_bound_check, gap_distribution, is_mixing, mixing_gap_witness,
    sample_mme, LegalPointSampler, MixingStatus,
};
use gapshift::entropy::{solve_entropy, CertifiedValue, SolverConfig};
use gapshift::language::{enumerate_words, is_allowed};
use gapshift::{GapSetKind, MARKER};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::corpus_entry;
use common::strategies::{shift_spec, small_shift_spec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_form_gcd_matches_incremental_gcd(spec in shift_spec()) {
        prop_assume!(spec.gap_set().kind() != GapSetKind::Predicate);
        let verdict = is_mixing(&spec, 0).unwrap();
        let first: Vec<usize> = spec.gap_set().elements_upto(2000).unwrap().into_iter().take(200).collect();
        let incremental = first.iter().fold(0usize, |g, &n| g.gcd(&(n + 1)));
        prop_assert_eq!(verdict.gcd_witness, incremental);
        prop_assert_eq!(verdict.status == MixingStatus::Mixing, incremental == 1);
    }

    #[test]
    fn mixing_witnesses_fill_the_window(spec in shift_spec(), seed in any::<u64>()) {
        let verdict = is_mixing(&spec, 400).unwrap();
        prop_assume!(verdict.status == MixingStatus::Mixing);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = LegalPointSampler::new(&spec, 8).unwrap();
        for _ in 0..3 {
            let u = sampler.word(&mut rng, 8).unwrap();
            let v = sampler.word(&mut rng, 8).unwrap();
            let from = constructive_mixing_threshold(&spec, &u, &v, 300).unwrap().unwrap();
            for n in from..=from + 20 {
                let gamma = mixing_gap_witness(&spec, &u, &v, n).unwrap().unwrap();
                prop_assert_eq!(gamma.len(), n);
                prop_assert!(is_allowed(&spec, &[u.clone(), gamma, v.clone()].concat()).unwrap());
            }
        }
    }

    #[test]
    fn non_mixing_gaps_respect_the_congruence(spec in small_shift_spec()) {
        let verdict = is_mixing(&spec, 400).unwrap();
        prop_assume!(verdict.status == MixingStatus::NotMixing);
        let d = verdict.gcd_witness;
        for n in 2..=10 {
            for word in enumerate_words(&spec, n).unwrap() {
                let interior = &word[1..n - 1];
                if word[0] == MARKER && word[n - 1] == MARKER && !interior.contains(&MARKER) {
                    prop_assert_eq!((interior.len() + 1) % d, 0);
                }
            }
        }
    }

    #[test]
    fn gap_law_is_normalized(spec in shift_spec()) {
        let e = solve_entropy(&spec, &SolverConfig::default()).unwrap();
        let dist = gap_distribution(&spec, &e.lambda, 1e-9).unwrap();
        prop_assert!(dist.zero_frequency > 0.0 && dist.zero_frequency <= 1.0);
        if spec.gap_set().is_finite() {
            prop_assert!(finite_s_zero_bound_check(&spec, &dist).unwrap());
        }
        for end in [e.lambda.lo, e.lambda.hi] {
            let at = CertifiedValue { lo: end, hi: end, ..e.lambda };
            let d = gap_distribution(&spec, &at, 1e-9).unwrap();
            prop_assert!((d.total_mass() - 1.0).abs() <= 1e-8 + d.tail_bound, "mass {}", d.total_mass());
        }
    }

    #[test]
    fn samples_are_allowed(spec in shift_spec(), seed in any::<u64>()) {
        let e = solve_entropy(&spec, &SolverConfig::default()).unwrap();
        let dist = gap_distribution(&spec, &e.lambda, 1e-6).unwrap();
        let sample = sample_mme(&spec, &dist, 400, seed).unwrap();
        prop_assert_eq!(sample.word.len(), 400);
        prop_assert!(is_allowed(&spec, &sample.word).unwrap());
        let again = sample_mme(&spec, &dist, 400, seed).unwrap();
        prop_assert_eq!(sample, again);
    }
}

#[test]
fn gap_histograms_follow_the_law() {
    for name in ["golden-mean", "thue-morse", "primes", "fibonacci"] {
        let spec = corpus_entry(name).spec;
        let e = solve_entropy(&spec, &SolverConfig::default()).unwrap();
        let dist = gap_distribution(&spec, &e.lambda, 1e-9).unwrap();
        // about 1.2·10^5 generators: the mean generator length is 1/μ[0]
        let length = (1.2e5 / dist.zero_frequency) as usize;
        let stats = sample_mme(&spec, &dist, length, 11).unwrap().stats();
        let total: usize = stats.gap_histogram.values().sum();
        assert!(total >= 100_000, "{name}: only {total} gaps");
        for &(n, p) in dist.entries.iter().filter(|&&(_, p)| p > 0.01) {
            let seen = *stats.gap_histogram.get(&n).unwrap_or(&0) as f64 / total as f64;
            let sigma = (p * (1.0 - p) / total as f64).sqrt();
            assert!((seen - p).abs() <= 3.0 * sigma, "{name}: p_{n} = {p}, observed {seen}");
        }
        let kac = dist.zero_frequency;
        assert!((stats.zero_frequency_empirical - kac).abs() < 0.01, "{name}: {} vs {kac}", stats.zero_frequency_empirical);
    }
}
