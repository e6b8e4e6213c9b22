//! The language `B(X_w(S))`: membership, enumeration, exact counting,
//! gap decomposition and the joining words behind irreducibility.
//!
//! A word `b = v₀ 0 v₁ 0 … 0 v_m` is allowed iff
//!
//! - every internal block `vᵢ` (`0 < i < m`) is a factor of `w` with `|vᵢ| ∈ S`;
//! - the head `v₀` and tail `v_m` are factors of `w` that fit inside some gap,
//!   i.e. some `n ∈ S` has `n ≥ |v|`;
//! - a zero-free `b` is a factor of `w` that fits inside some gap.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::shift::ShiftSpec;
use crate::word::{format_word, split_at_markers, Symbol, Word, MARKER};

/// Default cap on `(k+1)^n` for brute-force enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: f64 = 5.0e6;

/// Anything that can decide membership of finite words.
pub trait LanguageOracle {
    fn is_allowed(&self, word: &[Symbol]) -> Result<bool>;
}

impl LanguageOracle for ShiftSpec {
    fn is_allowed(&self, word: &[Symbol]) -> Result<bool> {
        is_allowed(self, word)
    }
}

/// A word split at its markers: `head 0 g₁ 0 … 0 g_r 0 tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapDecomposition {
    pub head: Word,
    pub internal_gaps: Vec<Word>,
    /// `None` for zero-free words.
    pub tail: Option<Word>,
    pub zero_count: usize,
}

impl GapDecomposition {
    pub fn reassemble(&self) -> Word {
        let mut out = self.head.clone();
        if let Some(tail) = &self.tail {
            for gap in &self.internal_gaps {
                out.push(MARKER);
                out.extend_from_slice(gap);
            }
            out.push(MARKER);
            out.extend_from_slice(tail);
        }
        out
    }
}

/// A generator `u 0` of the coded system, with `u ∈ B_n(w)` and `n ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeneratorWord(Word);

impl GeneratorWord {
    pub fn new(spec: &ShiftSpec, gap: &[Symbol]) -> Result<Self> {
        if !spec.gap_set().contains(gap.len())? || !spec.factor_source().contains_factor(gap)? {
            return Err(Error::Invalid(format!("`{}` is not a valid gap", format_word(gap))));
        }
        let mut content = gap.to_vec();
        content.push(MARKER);
        Ok(Self(content))
    }

    pub fn content(&self) -> &[Symbol] {
        &self.0
    }

    pub fn gap(&self) -> &[Symbol] {
        &self.0[..self.0.len() - 1]
    }
}

/// All generators whose gap length is at most `max_gap`.
pub fn generators(spec: &ShiftSpec, max_gap: usize) -> Result<Vec<GeneratorWord>> {
    let mut out = Vec::new();
    for n in spec.gap_set().elements_upto(max_gap)? {
        for u in spec.factor_source().factor_set(n)?.iter() {
            let mut content = u.clone();
            content.push(MARKER);
            out.push(GeneratorWord(content));
        }
    }
    Ok(out)
}

fn fits_in_gap(spec: &ShiftSpec, block: &[Symbol]) -> Result<bool> {
    Ok(spec.gap_set().has_element_at_least(block.len())? && spec.factor_source().contains_factor(block)?)
}

fn is_full_gap(spec: &ShiftSpec, block: &[Symbol]) -> Result<bool> {
    Ok(spec.gap_set().contains(block.len())? && spec.factor_source().contains_factor(block)?)
}

/// Whether `word ∈ B(X_w(S))`. The empty word is allowed.
pub fn is_allowed(spec: &ShiftSpec, word: &[Symbol]) -> Result<bool> {
    let k = spec.alphabet_size();
    if word.iter().any(|&s| s as usize > k) {
        return Ok(false);
    }
    let parts = split_at_markers(word);
    let (head, rest) = parts.split_first().unwrap();
    if rest.is_empty() {
        return fits_in_gap(spec, head);
    }
    let (tail, internal) = rest.split_last().unwrap();
    for gap in internal {
        if !is_full_gap(spec, gap)? {
            return Ok(false);
        }
    }
    Ok(fits_in_gap(spec, head)? && fits_in_gap(spec, tail)?)
}

/// Splits an allowed word at its markers.
pub fn decompose(spec: &ShiftSpec, word: &[Symbol]) -> Result<GapDecomposition> {
    if !is_allowed(spec, word)? {
        return Err(Error::NotInLanguage(format_word(word)));
    }
    let parts = split_at_markers(word);
    let zero_count = parts.len() - 1;
    let head = parts[0].to_vec();
    if zero_count == 0 {
        return Ok(GapDecomposition { head, internal_gaps: vec![], tail: None, zero_count });
    }
    Ok(GapDecomposition {
        head,
        internal_gaps: parts[1..parts.len() - 1].iter().map(|g| g.to_vec()).collect(),
        tail: Some(parts[parts.len() - 1].to_vec()),
        zero_count,
    })
}

fn check_budget(spec: &ShiftSpec, n: usize, budget: f64) -> Result<()> {
    let requested = ((spec.alphabet_size() + 1) as f64).powi(n as i32);
    if requested > budget {
        return Err(Error::BudgetExceeded { requested, budget });
    }
    Ok(())
}

/// `B_n(X_w(S))` by brute force, sorted lexicographically.
pub fn enumerate_words(spec: &ShiftSpec, n: usize) -> Result<Vec<Word>> {
    enumerate_words_with_budget(spec, n, DEFAULT_ENUMERATION_BUDGET)
}

/// [`enumerate_words`] with an explicit cap on `(k+1)^n`.
///
/// Walks `{0..k}^n` depth first, pruning prefixes that are not allowed
/// (the language is factorial).
pub fn enumerate_words_with_budget(spec: &ShiftSpec, n: usize, budget: f64) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::Invalid("word length must be positive".into()));
    }
    check_budget(spec, n, budget)?;
    let k = spec.alphabet_size() as Symbol;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    fn walk(spec: &ShiftSpec, k: Symbol, n: usize, prefix: &mut Word, out: &mut Vec<Word>) -> Result<()> {
        if prefix.len() == n {
            out.push(prefix.clone());
            return Ok(());
        }
        for s in 0..=k {
            prefix.push(s);
            if is_allowed(spec, prefix)? {
                walk(spec, k, n, prefix, out)?;
            }
            prefix.pop();
        }
        Ok(())
    }
    walk(spec, k, n, &mut prefix, &mut out)?;
    Ok(out)
}

/// Per-length weights feeding the counting recurrences.
struct Weights {
    /// `g(ℓ) = φ_w(ℓ)·[ℓ ∈ S]`: an internal gap of length `ℓ`.
    gap: Vec<BigUint>,
    /// `h(ℓ) = φ_w(ℓ)·[∃ n ∈ S, n ≥ ℓ]`: a head, tail or zero-free block.
    boundary: Vec<BigUint>,
}

impl Weights {
    fn new(spec: &ShiftSpec, max_len: usize) -> Result<Self> {
        let mut gap = Vec::with_capacity(max_len + 1);
        let mut boundary = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            let fits = spec.gap_set().has_element_at_least(len)?;
            let member = spec.gap_set().contains(len)?;
            let phi = if fits || member { spec.factor_source().complexity(len)? } else { BigUint::zero() };
            gap.push(if member { phi.clone() } else { BigUint::zero() });
            boundary.push(if fits { phi } else { BigUint::zero() });
        }
        Ok(Self { gap, boundary })
    }
}

/// `|B_n(X_w(S))|` for `n = 1..=n_max`, without enumeration.
///
/// Every allowed word with a marker reads `head · 0 · (gap 0)* · tail`.
/// With `C(m)` the number of chains `g₁0 g₂0 …` of total length `m`,
/// `|B_n| = h(n) + Σ_{i+1+m+j = n} h(i) C(m) h(j)`.
pub fn count_table(spec: &ShiftSpec, n_max: usize) -> Result<Vec<BigUint>> {
    let wts = Weights::new(spec, n_max)?;
    let mut chains = vec![BigUint::one()];
    for m in 1..=n_max {
        let c = (0..m).fold(BigUint::zero(), |acc, l| acc + &wts.gap[l] * &chains[m - l - 1]);
        chains.push(c);
    }
    // chain followed by a tail: D(t) = Σ_{m+j=t} C(m) h(j)
    let chain_tail: Vec<BigUint> = (0..n_max)
        .map(|t| (0..=t).fold(BigUint::zero(), |acc, m| acc + &chains[m] * &wts.boundary[t - m]))
        .collect();
    Ok((1..=n_max)
        .map(|n| {
            (0..n).fold(wts.boundary[n].clone(), |acc, i| acc + &wts.boundary[i] * &chain_tail[n - 1 - i])
        })
        .collect())
}

/// `|B_n(X_w(S))|`.
pub fn count_words(spec: &ShiftSpec, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Invalid("word length must be positive".into()));
    }
    Ok(count_table(spec, n)?.pop().unwrap())
}

/// `|A_n^j|` for `0 ≤ n ≤ n_max`, `0 ≤ j ≤ j_max`, indexed `[j][n]`:
/// words of length `n` that are concatenations of exactly `j` generators.
pub fn concatenation_table(spec: &ShiftSpec, n_max: usize, j_max: usize) -> Result<Vec<Vec<BigUint>>> {
    let wts = Weights::new(spec, n_max)?;
    // generator of length ℓ + 1 for each gap of length ℓ
    let single: Vec<BigUint> = (0..=n_max)
        .map(|len| if len == 0 { BigUint::zero() } else { wts.gap[len - 1].clone() })
        .collect();
    let mut table = vec![(0..=n_max).map(|n| if n == 0 { BigUint::one() } else { BigUint::zero() }).collect::<Vec<_>>()];
    for j in 1..=j_max {
        let prev = &table[j - 1];
        let row = (0..=n_max)
            .map(|n| (1..=n).fold(BigUint::zero(), |acc, m| acc + &prev[n - m] * &single[m]))
            .collect();
        table.push(row);
    }
    Ok(table)
}

/// `|A_n^j|`.
pub fn count_exact_concatenations(spec: &ShiftSpec, n: usize, j: usize) -> Result<BigUint> {
    Ok(concatenation_table(spec, n, j)?[j][n].clone())
}

/// Joining words for irreducibility: `(t, s)` with `u t 0 s v` allowed.
///
/// The zero-free suffix of `u` is completed to a full gap by extending it to
/// the right inside `w` (nothing to add when its length is already in `S`;
/// a fresh gap of length `min S` when `u` ends in `0`). The prefix of `v` is
/// completed the same way to the left.
pub fn bridge(spec: &ShiftSpec, u: &[Symbol], v: &[Symbol]) -> Result<(Word, Word)> {
    for x in [u, v] {
        if !is_allowed(spec, x)? {
            return Err(Error::NotInLanguage(format_word(x)));
        }
    }
    let t = complete_gap(spec, u, Side::Right)?;
    let s = complete_gap(spec, v, Side::Left)?;

    let mut joined = u.to_vec();
    joined.extend_from_slice(&t);
    joined.push(MARKER);
    joined.extend_from_slice(&s);
    joined.extend_from_slice(v);
    if !is_allowed(spec, &joined)? {
        return Err(Error::NotInLanguage(format_word(&joined)));
    }
    Ok((t, s))
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn complete_gap(spec: &ShiftSpec, word: &[Symbol], side: Side) -> Result<Word> {
    let src = spec.factor_source();
    let gaps = spec.gap_set();
    if word.is_empty() {
        return Ok(vec![]);
    }
    let edge = match side {
        Side::Right => word.last(),
        Side::Left => word.first(),
    };
    if edge == Some(&MARKER) {
        return src.least_factor(gaps.min());
    }
    let block: &[Symbol] = match side {
        Side::Right => word.rsplit(|&s| s == MARKER).next().unwrap(),
        Side::Left => word.split(|&s| s == MARKER).next().unwrap(),
    };
    if gaps.contains(block.len())? {
        return Ok(vec![]);
    }
    let target = gaps
        .next_at_least(block.len())?
        .ok_or_else(|| Error::NotInLanguage(format_word(word)))?;
    Ok(match side {
        Side::Right => src.extend_right(block, target)?[block.len()..].to_vec(),
        Side::Left => src.extend_left(block, target)?[..target - block.len()].to_vec(),
    })
}
