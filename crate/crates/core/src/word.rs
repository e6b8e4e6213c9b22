//! Words over the dense alphabet `{0, 1, ..., k}`.
//!
//! Symbol `0` is the gap marker. Letters of `w` are `1..=k`. Text form uses
//! `0-9` then `a-z`, so alphabets up to `k = 35` round-trip through strings.

use crate::error::{Error, Result};

pub type Symbol = u8;
pub type Word = Vec<Symbol>;

/// The marker symbol separating gaps.
pub const MARKER: Symbol = 0;

/// Largest alphabet size representable in text form.
pub const MAX_ALPHABET: usize = 35;

pub fn symbol_to_char(s: Symbol) -> char {
    char::from_digit(s as u32, 36).unwrap_or('?')
}

pub fn char_to_symbol(c: char) -> Option<Symbol> {
    c.to_digit(36).map(|d| d as Symbol)
}

/// Parses `"0120"` into `[0, 1, 2, 0]`.
pub fn parse_word(text: &str) -> Result<Word> {
    text.chars()
        .map(|c| char_to_symbol(c).ok_or_else(|| Error::Invalid(format!("bad symbol {c:?} in {text:?}"))))
        .collect()
}

pub fn format_word(word: &[Symbol]) -> String {
    word.iter().map(|&s| symbol_to_char(s)).collect()
}

/// True when every symbol is a letter of `{1..=k}`.
pub fn is_over_letters(word: &[Symbol], k: usize) -> bool {
    word.iter().all(|&s| s >= 1 && (s as usize) <= k)
}

/// Splits a word at its markers: `v0 0 v1 0 ... 0 vm`.
pub fn split_at_markers(word: &[Symbol]) -> Vec<&[Symbol]> {
    word.split(|&s| s == MARKER).collect()
}

/// Builds a word from `&str` in tests and examples; panics on bad symbols.
pub fn w(text: &str) -> Word {
    parse_word(text).expect("invalid word literal")
}
