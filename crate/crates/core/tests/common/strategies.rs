use gapshift::{parse_word, FactorSource, GapSet, Progression, ShiftSpec};
use proptest::prelude::*;

/// Periodic words, full shifts on at most two letters and a few primitive
/// substitutions.
pub fn factor_source() -> impl Strategy<Value = FactorSource> {
    prop_oneof![
        (1usize..=3).prop_flat_map(|k| {
            prop::collection::vec(1..=k as u8, 1..=6).prop_map(move |word| FactorSource::periodic(word, k).unwrap())
        }),
        (1usize..=2).prop_map(|k| FactorSource::full_shift(k).unwrap()),
        Just(FactorSource::thue_morse()),
        Just(FactorSource::fibonacci()),
        Just(substitution(&["12", "11"])),
        Just(substitution(&["12", "13", "1"])),
    ]
}

pub fn substitution(images: &[&str]) -> FactorSource {
    let rules = images.iter().map(|s| parse_word(s).unwrap()).collect();
    FactorSource::substitution(rules, 1, images.len(), true).unwrap()
}

pub fn gap_set() -> impl Strategy<Value = GapSet> {
    prop_oneof![
        prop::collection::btree_set(0usize..9, 1..4).prop_map(|s| GapSet::finite(s).unwrap()),
        (prop::collection::btree_set(0usize..6, 0..3), 0usize..7, 1usize..5).prop_map(|(sporadic, start, step)| {
            GapSet::eventually_periodic(sporadic, vec![Progression { start, step }]).unwrap()
        }),
        prop::sample::select(vec!["primes", "powers-of-2", "squares"])
            .prop_map(|name| GapSet::named(name, 400).unwrap()),
    ]
}

pub fn shift_spec() -> impl Strategy<Value = ShiftSpec> {
    (gap_set(), factor_source()).prop_map(|(s, w)| ShiftSpec::new(s, w))
}

/// Specs whose alphabet stays at two letters or fewer, for enumeration.
pub fn small_shift_spec() -> impl Strategy<Value = ShiftSpec> {
    shift_spec().prop_filter("alphabet of at most two letters", |s| s.alphabet_size() <= 2)
}
