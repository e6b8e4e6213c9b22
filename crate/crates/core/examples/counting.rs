//! Exact word counts, checked against enumeration, and the concatenation
//! table `|A_n^j|`.
//!
//! `cargo run --example counting`

use gapshift::language::{concatenation_table, count_table, enumerate_words};
use gapshift::{GapSet, ShiftSpec};

fn main() -> gapshift::Result<()> {
    let golden = ShiftSpec::s_gap(GapSet::finite([0, 1])?);
    let counts = count_table(&golden, 30)?;
    println!("golden mean |B_n|, n = 1..30:");
    println!("  {}", counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    for n in 1..=12 {
        assert_eq!(counts[n - 1], enumerate_words(&golden, n)?.len().into());
    }
    println!("  matches enumeration up to n = 12");

    let primes = ShiftSpec::s_gap(GapSet::primes(1000));
    println!("S = primes, |B_200| = {}", count_table(&primes, 200)?[199]);

    // rows j = 0..=3: words that are exactly j generators long
    let table = concatenation_table(&golden, 8, 3)?;
    for (j, row) in table.iter().enumerate() {
        println!("  |A_n^{j}|: {}", row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}
