//! Factor sources: factor sets, complexity functions and extensions.
//!
//! `cargo run --example complexity`

use gapshift::{format_word, parse_word, FactorSource};

fn main() -> gapshift::Result<()> {
    let sources = [
        ("Thue-Morse", FactorSource::thue_morse()),
        ("Fibonacci", FactorSource::fibonacci()),
        ("(123)^inf", FactorSource::periodic(parse_word("123")?, 3)?),
        ("(1212)^inf", FactorSource::periodic(parse_word("1212")?, 2)?),
        ("full shift k=2", FactorSource::full_shift(2)?),
        // period-doubling
        ("1->12, 2->11", FactorSource::substitution(vec![parse_word("12")?, parse_word("11")?], 1, 2, true)?),
    ];
    for (name, src) in &sources {
        let phi: Vec<String> = (0..=12).map(|n| src.complexity(n).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        println!("{name:<16} {}", phi.join(" "));
    }

    let tm = &sources[0].1;
    println!("Thue-Morse B_4: {}", tm.factor_set(4)?.iter().map(|x| format_word(x)).collect::<Vec<_>>().join(" "));
    let f = parse_word("11")?;
    println!("extend 11 right to 5: {}", format_word(&tm.extend_right(&f, 5)?));
    println!("extend 11 left to 5:  {}", format_word(&tm.extend_left(&f, 5)?));
    println!("111 is a factor: {}", tm.contains_factor(&parse_word("111")?)?);
    Ok(())
}
