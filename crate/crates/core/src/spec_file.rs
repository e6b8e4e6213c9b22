//! JSON shift-spec documents.
//!
//! ```json
//! {
//!   "alphabet_size": 2,
//!   "gap_set": { "kind": "eventually_periodic", "sporadic": [0],
//!                "progressions": [{ "start": 3, "step": 2 }] },
//!   "factor_source": { "kind": "substitution",
//!                      "rules": { "1": "12", "2": "21" }, "seed": "1" },
//!   "solver": { "tol": 1e-10 }
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::FactorSource;
use crate::gapset::{GapSet, Progression};
use crate::shift::ShiftSpec;
use crate::word::{char_to_symbol, parse_word, Word};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub alphabet_size: usize,
    pub gap_set: GapSetSpec,
    pub factor_source: FactorSourceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GapSetSpec {
    Finite {
        elements: Vec<usize>,
    },
    EventuallyPeriodic {
        #[serde(default)]
        sporadic: Vec<usize>,
        progressions: Vec<ProgressionSpec>,
    },
    /// One of the built-in predicates: `primes`, `powers-of-2`, `squares`.
    Predicate {
        name: String,
        enumeration_bound: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgressionSpec {
    pub start: usize,
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FactorSourceSpec {
    /// `w = word^∞`.
    Periodic { word: String },
    /// `rules` maps every letter `1..k` to its image; `w` is the fixed point
    /// grown from `seed`.
    Substitution {
        rules: BTreeMap<String, String>,
        seed: String,
        #[serde(default = "default_true")]
        primitive: bool,
    },
    FullShift,
}

fn default_true() -> bool {
    true
}

/// Optional overrides of the numeric defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration_budget: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("spec file: {e}")))?;
        file.to_shift_spec()?;
        Ok(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files always serialize")
    }

    pub fn solver(&self) -> SolverSection {
        self.solver.clone().unwrap_or_default()
    }

    pub fn to_shift_spec(&self) -> Result<ShiftSpec> {
        Ok(ShiftSpec::new(self.gap_set.to_gap_set()?, self.factor_source.to_factor_source(self.alphabet_size)?))
    }
}

impl GapSetSpec {
    pub fn to_gap_set(&self) -> Result<GapSet> {
        match self {
            GapSetSpec::Finite { elements } => GapSet::finite(elements.iter().copied()),
            GapSetSpec::EventuallyPeriodic { sporadic, progressions } => GapSet::eventually_periodic(
                sporadic.iter().copied(),
                progressions.iter().map(|p| Progression { start: p.start, step: p.step }).collect(),
            ),
            GapSetSpec::Predicate { name, enumeration_bound } => GapSet::named(name, *enumeration_bound),
        }
    }
}

fn single_letter(text: &str) -> Result<u8> {
    let mut chars = text.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => char_to_symbol(c).ok_or_else(|| Error::Invalid(format!("`{c}` is not a letter"))),
        _ => Err(Error::Invalid(format!("expected a single letter, got `{text}`"))),
    }
}

impl FactorSourceSpec {
    pub fn to_factor_source(&self, alphabet_size: usize) -> Result<FactorSource> {
        match self {
            FactorSourceSpec::Periodic { word } => FactorSource::periodic(parse_word(word)?, alphabet_size),
            FactorSourceSpec::FullShift => FactorSource::full_shift(alphabet_size),
            FactorSourceSpec::Substitution { rules, seed, primitive } => {
                let mut images: Vec<Option<Word>> = vec![None; alphabet_size];
                for (letter, image) in rules {
                    let a = single_letter(letter)? as usize;
                    if a == 0 || a > alphabet_size {
                        return Err(Error::Invalid(format!("rule for letter `{letter}` outside 1..{alphabet_size}")));
                    }
                    images[a - 1] = Some(parse_word(image)?);
                }
                let images = images
                    .into_iter()
                    .enumerate()
                    .map(|(i, image)| image.ok_or_else(|| Error::Invalid(format!("no rule for letter {}", i + 1))))
                    .collect::<Result<Vec<_>>>()?;
                FactorSource::substitution(images, single_letter(seed)?, alphabet_size, *primitive)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_variant() {
        let golden = r#"{"alphabet_size": 1, "gap_set": {"kind": "finite", "elements": [0, 1]},
                         "factor_source": {"kind": "periodic", "word": "1"}}"#;
        let spec = SpecFile::from_json(golden).unwrap().to_shift_spec().unwrap();
        assert_eq!(spec.gap_set().max(), Some(1));

        let tm = r#"{"alphabet_size": 2,
            "gap_set": {"kind": "predicate", "name": "primes", "enumeration_bound": 500},
            "factor_source": {"kind": "substitution", "rules": {"1": "12", "2": "21"}, "seed": "1"},
            "solver": {"tol": 1e-9, "seed": 7}}"#;
        let file = SpecFile::from_json(tm).unwrap();
        assert_eq!(file.solver().seed, Some(7));
        let spec = file.to_shift_spec().unwrap();
        assert_eq!(spec.factor_source().complexity(3).unwrap(), 6u32.into());

        let full = r#"{"alphabet_size": 3, "gap_set": {"kind": "eventually_periodic",
            "progressions": [{"start": 0, "step": 1}]}, "factor_source": {"kind": "full_shift"}}"#;
        assert!(SpecFile::from_json(full).is_ok());
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            r#"{"alphabet_size": 1, "gap_set": {"kind": "finite", "elements": [1]},
                "factor_source": {"kind": "periodic", "word": "1"}, "colour": "red"}"#,
            r#"{"alphabet_size": 1, "gap_set": {"kind": "finite", "elements": [1], "x": 1},
                "factor_source": {"kind": "periodic", "word": "1"}}"#,
            r#"{"alphabet_size": 1, "gap_set": {"kind": "finite", "elements": []},
                "factor_source": {"kind": "periodic", "word": "1"}}"#,
            r#"{"alphabet_size": 1, "gap_set": {"kind": "finite", "elements": [1]},
                "factor_source": {"kind": "periodic", "word": "12"}}"#,
            r#"{"alphabet_size": 2, "gap_set": {"kind": "finite", "elements": [1]},
                "factor_source": {"kind": "substitution", "rules": {"1": "12"}, "seed": "1"}}"#,
            r#"{"alphabet_size": 2, "gap_set": {"kind": "finite", "elements": [1]},
                "factor_source": {"kind": "substitution", "rules": {"1": "1", "2": "21"}, "seed": "1"}}"#,
            r#"{"alphabet_size": 1, "gap_set": {"kind": "predicate", "name": "evens", "enumeration_bound": 9},
                "factor_source": {"kind": "periodic", "word": "1"}}"#,
        ];
        for text in cases {
            assert!(SpecFile::from_json(text).is_err(), "{text}");
        }
        let err = SpecFile::from_json(cases[5]).unwrap_err();
        assert_eq!(err, Error::NotPrimitive);
    }
}
