//! Membership, gap decompositions, enumeration and bridges.
//!
//! `cargo run --example membership`

use gapshift::language::{bridge, decompose, enumerate_words, is_allowed};
use gapshift::{format_word, parse_word, FactorSource, GapSet, ShiftSpec};

fn main() -> gapshift::Result<()> {
    // gaps of length 2 or 5, filled with Thue-Morse factors
    let spec = ShiftSpec::new(GapSet::finite([2, 5])?, FactorSource::thue_morse());

    for text in ["12012", "1101221", "2102210", "01221012"] {
        let word = parse_word(text)?;
        println!("{text:>9} allowed: {}", is_allowed(&spec, &word)?);
    }

    let d = decompose(&spec, &parse_word("21012021")?)?;
    println!(
        "head {}, internal {:?}, tail {:?}",
        format_word(&d.head),
        d.internal_gaps.iter().map(|g| format_word(g)).collect::<Vec<_>>(),
        d.tail.as_deref().map(format_word)
    );

    let words = enumerate_words(&spec, 4)?;
    println!("|B_4| = {}", words.len());
    for chunk in words.chunks(12) {
        println!("  {}", chunk.iter().map(|x| format_word(x)).collect::<Vec<_>>().join(" "));
    }

    let (u, v) = (parse_word("211")?, parse_word("122")?);
    let (t, s) = bridge(&spec, &u, &v)?;
    println!("bridge {} [{}] 0 [{}] {}", format_word(&u), format_word(&t), format_word(&s), format_word(&v));
    Ok(())
}
