//! The gap law of the measure of maximal entropy and samples from it.
//!
//! `cargo run --example sampler`

use gapshift::dynamics::{finite_s_zero_bound_check, gap_distribution, sample_mme};
use gapshift::entropy::{solve_entropy, SolverConfig};
use gapshift::{format_word, FactorSource, GapSet, ShiftSpec};

fn main() -> gapshift::Result<()> {
    let specs = [
        ("golden mean", ShiftSpec::s_gap(GapSet::finite([0, 1])?)),
        ("S = primes", ShiftSpec::s_gap(GapSet::primes(4096))),
        ("S = {1, 2, 4}, w = TM", ShiftSpec::new(GapSet::finite([1, 2, 4])?, FactorSource::thue_morse())),
    ];
    for (name, spec) in &specs {
        let e = solve_entropy(spec, &SolverConfig::default())?;
        let dist = gap_distribution(spec, &e.lambda, 1e-9)?;
        let sample = sample_mme(spec, &dist, 100_000, 1)?;
        let stats = sample.stats();
        println!("{name}");
        println!(
            "  mu[0]: Kac {:.5}, empirical {:.5}",
            dist.zero_frequency, stats.zero_frequency_empirical
        );
        let total: usize = stats.gap_histogram.values().sum();
        for &(n, p) in dist.entries.iter().take(4) {
            let seen = *stats.gap_histogram.get(&n).unwrap_or(&0) as f64 / total as f64;
            println!("  p_{n} = {p:.5}, observed {seen:.5}");
        }
        if spec.gap_set().is_finite() {
            println!("  mu[0] >= 1/(1 + max S): {}", finite_s_zero_bound_check(spec, &dist)?);
        }
        println!("  {}...", format_word(&sample.word[..60]));
    }
    Ok(())
}
