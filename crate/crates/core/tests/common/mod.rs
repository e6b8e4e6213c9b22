#![allow(dead_code)]

use std::path::PathBuf;

use gapshift::spec_file::SpecFile;
use gapshift::{GapSetKind, ShiftSpec};

pub struct CorpusEntry {
    pub name: String,
    pub path: PathBuf,
    pub file: SpecFile,
    pub spec: ShiftSpec,
}

impl CorpusEntry {
    /// Periodic `w` and a finite or eventually periodic `S`.
    pub fn is_structured(&self) -> bool {
        self.spec.gap_set().kind() != GapSetKind::Predicate && self.spec.factor_source().period().is_some()
    }
}

pub fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs")
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(specs_dir())
        .expect("specs directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let file = SpecFile::load(&path).unwrap();
            let spec = file.to_shift_spec().unwrap();
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            CorpusEntry { name, path, file, spec }
        })
        .collect()
}

pub fn corpus_entry(name: &str) -> CorpusEntry {
    corpus().into_iter().find(|e| e.name == name).unwrap_or_else(|| panic!("no corpus spec `{name}`"))
}

/// Fibonacci numbers starting 1, 1, 2, ...
pub fn fibonacci(count: usize) -> Vec<u64> {
    let mut out = vec![1u64, 1];
    while out.len() < count {
        let n = out.len();
        out.push(out[n - 1] + out[n - 2]);
    }
    out.truncate(count);
    out
}

pub mod strategies;
