mod common;

use std::collections::BTreeMap;

use gapshift::format_word;
use gapshift::spec_file::{FactorSourceSpec, GapSetSpec, ProgressionSpec, SolverSection, SpecFile};
use proptest::prelude::*;

use common::corpus;

fn gap_set_spec() -> impl Strategy<Value = GapSetSpec> {
    prop_oneof![
        prop::collection::vec(0usize..50, 1..5).prop_map(|elements| GapSetSpec::Finite { elements }),
        (
            prop::collection::vec(0usize..20, 0..3),
            prop::collection::vec((0usize..10, 1usize..6).prop_map(|(start, step)| ProgressionSpec { start, step }), 1..3),
        )
            .prop_map(|(sporadic, progressions)| GapSetSpec::EventuallyPeriodic { sporadic, progressions }),
        (prop::sample::select(vec!["primes", "powers-of-2", "squares"]), 1usize..5000)
            .prop_map(|(name, enumeration_bound)| GapSetSpec::Predicate { name: name.into(), enumeration_bound }),
    ]
}

fn spec_file() -> impl Strategy<Value = SpecFile> {
    let sources = prop_oneof![
        (1usize..=3).prop_flat_map(|k| {
            prop::collection::vec(1..=k as u8, 1..=6)
                .prop_map(move |w| (k, FactorSourceSpec::Periodic { word: format_word(&w) }))
        }),
        (1usize..=4).prop_map(|k| (k, FactorSourceSpec::FullShift)),
        Just((
            2,
            FactorSourceSpec::Substitution {
                rules: BTreeMap::from([("1".into(), "12".into()), ("2".into(), "21".into())]),
                seed: "1".into(),
                primitive: true,
            }
        )),
    ];
    let finite = prop::num::f64::NORMAL | prop::num::f64::POSITIVE;
    let solver = prop::option::of(
        (
            prop::option::of(finite),
            prop::option::of(1usize..100_000),
            prop::option::of(finite),
            prop::option::of(finite),
            prop::option::of(any::<u64>()),
        )
            .prop_map(|(tol, max_depth, mass_tol, enumeration_budget, seed)| SolverSection {
                tol,
                max_depth,
                mass_tol,
                enumeration_budget,
                seed,
            }),
    );
    (gap_set_spec(), sources, solver).prop_map(|(gap_set, (alphabet_size, factor_source), solver)| SpecFile {
        alphabet_size,
        gap_set,
        factor_source,
        solver,
    })
}

proptest! {
    #[test]
    fn json_round_trip_is_lossless(file in spec_file()) {
        let text = file.to_json();
        let back = SpecFile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_json(), text);
    }
}

#[test]
fn corpus_round_trips() {
    for entry in corpus() {
        let back = SpecFile::from_json(&entry.file.to_json()).unwrap();
        assert_eq!(back, entry.file, "{}", entry.name);
    }
}
