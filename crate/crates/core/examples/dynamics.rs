//! Mixing verdicts, gap witnesses, synchronization and irreducibility.
//!
//! `cargo run --example dynamics`

use gapshift::dynamics::{
    constructive_mixing_threshold, is_mixing, mixing_gap_witness, verify_irreducibility, verify_synchronization,
};
use gapshift::{format_word, parse_word, FactorSource, GapSet, Progression, ShiftSpec};

fn main() -> gapshift::Result<()> {
    let odd = GapSet::eventually_periodic([], vec![Progression { start: 1, step: 2 }])?;
    let specs = [
        ("S = {0, 1}", ShiftSpec::s_gap(GapSet::finite([0, 1])?)),
        ("S = {1, 3}", ShiftSpec::s_gap(GapSet::finite([1, 3])?)),
        ("S = odd", ShiftSpec::s_gap(odd)),
        ("S = {2, 4}, w = TM", ShiftSpec::new(GapSet::finite([2, 4])?, FactorSource::thue_morse())),
        ("S = primes", ShiftSpec::s_gap(GapSet::primes(1000))),
    ];
    for (name, spec) in &specs {
        let v = is_mixing(spec, 1000)?;
        let sync = verify_synchronization(spec, 2000, 10, 7)?;
        let irr = verify_irreducibility(spec, 500, 10, 8)?;
        println!(
            "{name:<20} {:?} (gcd {}, from {:?})  sync {}/{}  bridges {}/{}",
            v.status, v.gcd_witness, v.certificate, sync.passes, sync.trials, irr.successes, irr.trials
        );
    }

    let (_, spec) = &specs[3];
    let (u, v) = (parse_word("12")?, parse_word("21")?);
    let from = constructive_mixing_threshold(spec, &u, &v, 200)?.expect("mixing");
    println!("S = {{2, 4}}, w = TM: construction works from n = {from}");
    for n in [1, 2, 3, from, from + 7] {
        match mixing_gap_witness(spec, &u, &v, n)? {
            Some(g) => println!("  n = {n:>2}: 12 [{}] 21", format_word(&g)),
            None => println!("  n = {n:>2}: no witness"),
        }
    }
    Ok(())
}
