//! Certified entropy enclosures.
//!
//! `cargo run --example entropy`

use gapshift::entropy::{
    characteristic_sum, empirical_entropy, periodic_characteristic, solve_entropy, SolverConfig,
};
use gapshift::{parse_word, FactorSource, GapSet, Progression, ShiftSpec};

fn main() -> gapshift::Result<()> {
    let cfg = SolverConfig::with_tol(1e-12);
    let all = GapSet::eventually_periodic([], vec![Progression { start: 0, step: 1 }])?;
    let cases = [
        ("golden mean", ShiftSpec::s_gap(GapSet::finite([0, 1])?)),
        ("S = primes", ShiftSpec::s_gap(GapSet::primes(4096))),
        ("w = (12)^inf, S = Z>=0", ShiftSpec::new(all.clone(), FactorSource::periodic(parse_word("12")?, 2)?)),
        ("w = Thue-Morse, S = Z>=0", ShiftSpec::new(all, FactorSource::thue_morse())),
        ("w = Fibonacci, S = {1, 4}", ShiftSpec::new(GapSet::finite([1, 4])?, FactorSource::fibonacci())),
    ];
    for (name, spec) in &cases {
        let e = solve_entropy(spec, &cfg)?;
        println!(
            "{name:<28} h in [{:.12}, {:.12}]  depth {:>4}  {:?}",
            e.h_lo, e.h_hi, e.lambda.truncation_depth, e.lambda.tail_bound_kind
        );
    }

    let (_, spec) = &cases[2];
    println!("f(2.5) closed form {:?}", periodic_characteristic(spec, 2.5, 0)?);
    println!("f(2.5) truncated   {:?}", characteristic_sum(spec, 2.5, 40)?);

    let (_, golden) = &cases[0];
    for n in [5, 20, 80] {
        println!("golden (1/{n}) ln |B_{n}| = {:.6}", empirical_entropy(golden, n)?);
    }
    Ok(())
}
