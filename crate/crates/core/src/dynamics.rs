//! Mixing, synchronization, irreducibility and the gap process of the
//! measure of maximal entropy.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entropy::{CertifiedValue, CharacteristicSeries};
use crate::error::{Error, Result};
use crate::gapset::GapSetKind;
use crate::language::{bridge, is_allowed, LanguageOracle};
use crate::shift::ShiftSpec;
use crate::word::{format_word, Symbol, Word, MARKER};

/// Outcome of the gcd criterion `gcd{n+1 : n ∈ S} = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MixingStatus {
    Mixing,
    NotMixing,
    /// Predicate sets: the gcd stayed above 1 for every element up to the bound.
    UnknownUpTo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixingVerdict {
    pub status: MixingStatus,
    /// `gcd{n+1 : n ∈ S}` (over the probed elements for predicate sets).
    pub gcd_witness: usize,
    /// Elements of `S` whose `n+1` values realize the gcd.
    pub certificate: Vec<usize>,
}

fn fold_gcd(elements: impl IntoIterator<Item = usize>) -> (usize, Vec<usize>) {
    let mut g = 0usize;
    let mut used = Vec::new();
    for n in elements {
        let next = g.gcd(&(n + 1));
        if next != g {
            used.push(n);
            g = next;
        }
    }
    (g, used)
}

/// Decides mixing.
///
/// Structured sets are exact: a progression `a + d ℤ≥0` contributes
/// `gcd(a+1, d)`, realized by its elements `a` and `a + d`. Predicate sets are
/// probed up to `probe_bound` and can only ever be certified mixing.
pub fn is_mixing(spec: &ShiftSpec, probe_bound: usize) -> Result<MixingVerdict> {
    let gaps = spec.gap_set();
    let (gcd, certificate) = match gaps.kind() {
        GapSetKind::Predicate => fold_gcd(gaps.elements_upto(probe_bound)?),
        _ => {
            let (sporadic, progressions) = gaps.sporadic_and_progressions().unwrap();
            let generating = sporadic
                .into_iter()
                .chain(progressions.iter().flat_map(|p| [p.start, p.start + p.step]));
            fold_gcd(generating)
        }
    };
    let status = if gcd == 1 {
        MixingStatus::Mixing
    } else if gaps.kind() == GapSetKind::Predicate {
        MixingStatus::UnknownUpTo(probe_bound)
    } else {
        MixingStatus::NotMixing
    };
    Ok(MixingVerdict { status, gcd_witness: gcd, certificate })
}

/// Gap lengths `n ∈ S` with `n + 1 ≤ total`, usable as chain blocks `0 u`.
fn block_lengths(spec: &ShiftSpec, total: usize) -> Result<Vec<usize>> {
    if total == 0 {
        return Ok(vec![]);
    }
    spec.gap_set().elements_upto(total - 1)
}

/// Writes `total` as a sum of parts `n + 1`, `n ∈ S`; returns the gap lengths.
fn coin_decomposition(spec: &ShiftSpec, total: usize) -> Result<Option<Vec<usize>>> {
    let gaps = block_lengths(spec, total)?;
    let mut last: Vec<Option<usize>> = vec![None; total + 1];
    let mut reachable = vec![false; total + 1];
    reachable[0] = true;
    for len in 1..=total {
        if let Some(&g) = gaps.iter().find(|&&g| g < len && reachable[len - g - 1]) {
            reachable[len] = true;
            last[len] = Some(g);
        }
    }
    if !reachable[total] {
        return Ok(None);
    }
    let mut parts = Vec::new();
    let mut len = total;
    while len > 0 {
        let g = last[len].unwrap();
        parts.push(g);
        len -= g + 1;
    }
    Ok(Some(parts))
}

/// Smallest `M ≤ limit` such that every `L` in `M..=limit` is a sum of parts
/// `n + 1`, `n ∈ S`. `None` if `limit` itself is not reachable.
pub fn coin_threshold(spec: &ShiftSpec, limit: usize) -> Result<Option<usize>> {
    let gaps = block_lengths(spec, limit)?;
    let mut reachable = vec![false; limit + 1];
    reachable[0] = true;
    for len in 1..=limit {
        reachable[len] = gaps.iter().any(|&g| g < len && reachable[len - g - 1]);
    }
    if !reachable[limit] {
        return Ok(None);
    }
    let first_gap = (0..=limit).rev().find(|&l| !reachable[l]);
    Ok(Some(first_gap.map_or(0, |l| l + 1)))
}

/// Length from which [`mixing_gap_witness`] succeeds by construction for the
/// pair `(u, v)`, checked up to `limit`.
pub fn constructive_mixing_threshold(spec: &ShiftSpec, u: &[Symbol], v: &[Symbol], limit: usize) -> Result<Option<usize>> {
    let (t, s) = bridge(spec, u, v)?;
    let overhead = t.len() + s.len() + 1;
    Ok(coin_threshold(spec, limit)?.map(|m| m + overhead))
}

/// Default node budget of the exhaustive fallback in [`mixing_gap_witness`].
pub const WITNESS_SEARCH_BUDGET: usize = 1 << 20;

/// A word `γ` of length `n` with `u γ v` allowed.
///
/// First tries the construction `γ = t · 0u₁ 0u₂ … 0u_m · 0 · s`, where
/// `(t, s)` is the bridge between `u` and `v` and the chain length
/// `n - |t| - |s| - 1` is split into parts `|uᵢ| + 1` with `|uᵢ| ∈ S`.
/// Below the constructive threshold this can fail even when a witness exists,
/// so a depth-first search over `B_n` (at most [`WITNESS_SEARCH_BUDGET`]
/// nodes) follows. `Ok(None)` means no witness was found.
pub fn mixing_gap_witness(spec: &ShiftSpec, u: &[Symbol], v: &[Symbol], n: usize) -> Result<Option<Word>> {
    if let Some(gamma) = constructive_witness(spec, u, v, n)? {
        return Ok(Some(gamma));
    }
    exhaustive_witness(spec, u, v, n, WITNESS_SEARCH_BUDGET)
}

fn joined(u: &[Symbol], gamma: &[Symbol], v: &[Symbol]) -> Word {
    let mut out = Vec::with_capacity(u.len() + gamma.len() + v.len());
    out.extend_from_slice(u);
    out.extend_from_slice(gamma);
    out.extend_from_slice(v);
    out
}

/// The constructive half of [`mixing_gap_witness`].
pub fn constructive_witness(spec: &ShiftSpec, u: &[Symbol], v: &[Symbol], n: usize) -> Result<Option<Word>> {
    let (t, s) = bridge(spec, u, v)?;
    let overhead = t.len() + s.len() + 1;
    if n < overhead {
        return Ok(None);
    }
    let Some(parts) = coin_decomposition(spec, n - overhead)? else {
        return Ok(None);
    };
    let mut gamma = t;
    for g in parts {
        gamma.push(MARKER);
        gamma.extend(spec.factor_source().least_factor(g)?);
    }
    gamma.push(MARKER);
    gamma.extend(s);
    debug_assert_eq!(gamma.len(), n);
    if is_allowed(spec, &joined(u, &gamma, v))? {
        Ok(Some(gamma))
    } else {
        Ok(None)
    }
}

/// Lexicographically least `γ ∈ {0..k}^n` with `u γ v` allowed, searching at
/// most `budget` nodes.
pub fn exhaustive_witness(spec: &ShiftSpec, u: &[Symbol], v: &[Symbol], n: usize, budget: usize) -> Result<Option<Word>> {
    for x in [u, v] {
        if !is_allowed(spec, x)? {
            return Err(Error::NotInLanguage(format_word(x)));
        }
    }
    let k = spec.alphabet_size() as Symbol;
    let mut word = u.to_vec();
    let mut nodes = 0usize;
    fn walk(
        spec: &ShiftSpec,
        k: Symbol,
        target: usize,
        v: &[Symbol],
        word: &mut Word,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<bool> {
        if word.len() == target {
            return is_allowed(spec, &joined(word, &[], v));
        }
        for s in 0..=k {
            *nodes += 1;
            if *nodes > budget {
                return Ok(false);
            }
            word.push(s);
            if is_allowed(spec, word)? && walk(spec, k, target, v, word, nodes, budget)? {
                return Ok(true);
            }
            word.pop();
        }
        Ok(false)
    }
    let target = u.len() + n;
    if walk(spec, k, target, v, &mut word, &mut nodes, budget)? {
        Ok(Some(word[u.len()..].to_vec()))
    } else {
        Ok(None)
    }
}

/// Random words from legal concatenation points `… u₁0 u₂0 u₃0 …`.
///
/// Gap lengths are drawn uniformly from `S ∩ [0, cap]`. For infinite `S` one
/// extra length `≥ cap` is mixed in so that long zero-free stretches (the
/// limit points of the closure) are represented too.
#[derive(Debug, Clone)]
pub struct LegalPointSampler<'a> {
    spec: &'a ShiftSpec,
    lengths: Vec<usize>,
}

impl<'a> LegalPointSampler<'a> {
    pub fn new(spec: &'a ShiftSpec, cap: usize) -> Result<Self> {
        let gaps = spec.gap_set();
        let mut lengths = gaps.elements_upto(cap.min(gaps.enumeration_bound().unwrap_or(usize::MAX)))?;
        if !gaps.is_finite() {
            if let Some(long) = gaps.next_at_least(cap + 1)? {
                lengths.push(long);
            }
        }
        if lengths.is_empty() {
            lengths.push(gaps.min());
        }
        Ok(Self { spec, lengths })
    }

    pub fn gap_lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Concatenation of random generators with total length at least `min_len`.
    pub fn segment<R: Rng + ?Sized>(&self, rng: &mut R, min_len: usize) -> Result<Word> {
        let mut out = Vec::with_capacity(min_len + 16);
        while out.len() < min_len {
            let n = self.lengths[rng.gen_range(0..self.lengths.len())];
            out.extend(self.spec.factor_source().sample_factor(n, rng)?);
            out.push(MARKER);
        }
        Ok(out)
    }

    /// A random allowed word of length in `1..=max_len`.
    pub fn word<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Result<Word> {
        let len = rng.gen_range(1..=max_len);
        let pad = self.lengths.iter().max().unwrap() + 1;
        let seg = self.segment(rng, len + 2 * pad)?;
        let start = rng.gen_range(0..=seg.len() - len);
        Ok(seg[start..start + len].to_vec())
    }

    /// A random allowed word ending in the marker (`u 0`), length `≤ max_len`.
    pub fn word_ending_in_marker<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Result<Word> {
        let (seg, z, len) = self.marker_window(rng, max_len)?;
        Ok(seg[z + 1 - len..=z].to_vec())
    }

    /// A random allowed word starting with the marker (`0 v`), length `≤ max_len`.
    pub fn word_starting_with_marker<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Result<Word> {
        let (seg, z, len) = self.marker_window(rng, max_len)?;
        Ok(seg[z..z + len].to_vec())
    }

    /// A segment, a marker position with `max_len` symbols of room on both
    /// sides, and a window length.
    fn marker_window<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> Result<(Word, usize, usize)> {
        let pad = self.lengths.iter().max().unwrap() + 1;
        let seg = self.segment(rng, 2 * max_len + 2 * pad)?;
        let zeros: Vec<usize> =
            (max_len..seg.len() - max_len).filter(|&i| seg[i] == MARKER).collect();
        let z = zeros[rng.gen_range(0..zeros.len())];
        Ok((seg, z, rng.gen_range(1..=max_len)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SynchronizationReport {
    pub trials: usize,
    pub passes: usize,
    /// Trials whose premise (`u0` and `0v` allowed) the oracle rejected.
    pub skipped: usize,
}

/// Checks that `0` is synchronizing: `u0, 0v ∈ B` implies `u0v ∈ B`.
pub fn verify_synchronization(spec: &ShiftSpec, trials: usize, max_len: usize, seed: u64) -> Result<SynchronizationReport> {
    verify_synchronization_with(spec, spec, trials, max_len, seed)
}

/// [`verify_synchronization`] with membership decided by `oracle` and
/// candidate words drawn from the legal points of `spec`.
pub fn verify_synchronization_with<O: LanguageOracle + ?Sized>(
    oracle: &O,
    spec: &ShiftSpec,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<SynchronizationReport> {
    if trials == 0 || max_len == 0 {
        return Err(Error::Invalid("trials and max_len must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = LegalPointSampler::new(spec, max_len)?;
    let mut report = SynchronizationReport { trials, passes: 0, skipped: 0 };
    for _ in 0..trials {
        let u0 = sampler.word_ending_in_marker(&mut rng, max_len)?;
        let zv = sampler.word_starting_with_marker(&mut rng, max_len)?;
        if !oracle.is_allowed(&u0)? || !oracle.is_allowed(&zv)? {
            report.skipped += 1;
            continue;
        }
        let combined = joined(&u0, &[], &zv[1..]);
        if !oracle.is_allowed(&combined)? {
            let u = &u0[..u0.len() - 1];
            return Err(Error::SynchronizationViolation { u: format_word(u), v: format_word(&zv[1..]) });
        }
        report.passes += 1;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub trials: usize,
    pub successes: usize,
}

/// Joins random allowed pairs `(u, v)` with [`bridge`] and re-verifies the
/// joined word.
pub fn verify_irreducibility(spec: &ShiftSpec, trials: usize, max_len: usize, seed: u64) -> Result<IrreducibilityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = LegalPointSampler::new(spec, max_len)?;
    let mut successes = 0;
    for _ in 0..trials {
        let u = sampler.word(&mut rng, max_len)?;
        let v = sampler.word(&mut rng, max_len)?;
        let (t, s) = bridge(spec, &u, &v)?;
        let mut word = joined(&u, &t, &[MARKER]);
        word.extend(s);
        word.extend_from_slice(&v);
        if is_allowed(spec, &word)? {
            successes += 1;
        }
    }
    Ok(IrreducibilityReport { trials, successes })
}

/// The generator law of the measure of maximal entropy: a gap of length `n`
/// has probability `p_n = φ_w(n) λ^{-(n+1)}`, its content uniform on `B_n(w)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapDistribution {
    /// `(n, p_n)` for `n ∈ S` in ascending order.
    pub entries: Vec<(usize, f64)>,
    /// `1 - Σ p_n` over the retained entries, floored at zero.
    pub truncation_mass: f64,
    /// Certified upper bound on the dropped mass `Σ_{n>N} p_n`.
    pub tail_bound: f64,
    pub lambda: f64,
    /// `μ[0]` from Kac's formula: one over the mean generator length.
    pub zero_frequency: f64,
}

impl GapDistribution {
    pub fn total_mass(&self) -> f64 {
        self.entries.iter().map(|&(_, p)| p).sum()
    }

    pub fn probability(&self, n: usize) -> f64 {
        self.entries.iter().find(|&&(m, _)| m == n).map_or(0.0, |&(_, p)| p)
    }
}

const MAX_DISTRIBUTION_DEPTH: usize = 1 << 14;

/// Builds the gap law at the midpoint of a certified enclosure of `λ*`,
/// keeping gap lengths until the certified tail mass drops below `mass_tol`.
///
/// `zero_frequency = Σ p_n / (Σ (n+1) p_n + tail)`, the tail being a bound on
/// the dropped part of the mean-length series.
pub fn gap_distribution(spec: &ShiftSpec, lambda: &CertifiedValue, mass_tol: f64) -> Result<GapDistribution> {
    if !(mass_tol > 0.0 && mass_tol < 0.1) {
        return Err(Error::Invalid(format!("mass_tol must lie in (0, 0.1), got {mass_tol}")));
    }
    let gaps = spec.gap_set();
    let lam = lambda.mid();
    let cap = gaps.enumeration_bound().unwrap_or(usize::MAX).min(MAX_DISTRIBUTION_DEPTH);
    let mut depth = match gaps.max() {
        Some(m) => m,
        None => 16.min(cap),
    };
    let series = loop {
        let series = CharacteristicSeries::new(spec, depth)?;
        if series.tail_upper(lam) < mass_tol {
            break series;
        }
        if depth >= cap {
            return Err(Error::DepthExhausted { lambda_lo: lambda.lo, lambda_hi: lambda.hi, depth });
        }
        depth = (depth * 2).min(cap);
    };
    let entries: Vec<(usize, f64)> = series.weights(lam).into_iter().filter(|&(_, p)| p > 0.0).collect();
    let mass: f64 = entries.iter().map(|&(_, p)| p).sum();
    let moment: f64 = entries.iter().map(|&(n, p)| (n + 1) as f64 * p).sum();
    let zero_frequency = mass / (moment + series.tail_moment_upper(lam));
    Ok(GapDistribution {
        entries,
        truncation_mass: (1.0 - mass).max(0.0),
        tail_bound: series.tail_upper(lam),
        lambda: lam,
        zero_frequency,
    })
}

/// A sampled word together with the generator gap lengths that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmeSample {
    pub word: Word,
    /// Gap lengths of the generators, in order; the last may be cut short
    /// in `word`.
    pub gaps: Vec<usize>,
}

impl MmeSample {
    pub fn stats(&self) -> SampleStats {
        let zeros = self.word.iter().filter(|&&s| s == MARKER).count();
        let mut gap_histogram = BTreeMap::new();
        let mut used = 0;
        for &g in &self.gaps {
            used += g + 1;
            if used > self.word.len() {
                break;
            }
            *gap_histogram.entry(g).or_insert(0) += 1;
        }
        SampleStats {
            zero_frequency_empirical: zeros as f64 / self.word.len() as f64,
            gap_histogram,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleStats {
    pub zero_frequency_empirical: f64,
    /// Counts of complete generators by gap length.
    pub gap_histogram: BTreeMap<usize, usize>,
}

/// Samples the gap process: draws `n` with probability `p_n` (renormalized),
/// a gap `u` uniform on `B_n(w)`, emits `u 0`, and repeats until `length`
/// symbols have been produced.
pub fn sample_mme(spec: &ShiftSpec, dist: &GapDistribution, length: usize, seed: u64) -> Result<MmeSample> {
    if length == 0 {
        return Err(Error::Invalid("sample length must be positive".into()));
    }
    let weights = WeightedIndex::new(dist.entries.iter().map(|&(_, p)| p))
        .map_err(|e| Error::Invalid(format!("degenerate gap distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = Vec::with_capacity(length + 1);
    let mut gaps = Vec::new();
    while word.len() < length {
        let n = dist.entries[weights.sample(&mut rng)].0;
        word.extend(spec.factor_source().sample_factor(n, &mut rng)?);
        word.push(MARKER);
        gaps.push(n);
    }
    word.truncate(length);
    Ok(MmeSample { word, gaps })
}

/// Tolerance on the finite-`S` bound `μ[0] ≥ 1/(1 + max S)`.
pub const ZERO_BOUND_SLACK: f64 = 1e-12;

/// For finite `S`: `μ[0] ≥ 1/(1 + max S)`, since the shifts
/// `[0], σ[0], …, σ^{max S}[0]` cover the space.
pub fn finite_s_zero_bound_check(spec: &ShiftSpec, dist: &GapDistribution) -> Result<bool> {
    let Some(max) = spec.gap_set().max() else {
        return Err(Error::WrongVariant { expected: "a finite gap set" });
    };
    Ok(dist.zero_frequency >= 1.0 / (1 + max) as f64 - ZERO_BOUND_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{solve_entropy, SolverConfig};
    use crate::factor::FactorSource;
    use crate::gapset::{GapSet, Progression};
    use crate::language::enumerate_words;
    use crate::word::w;

    fn golden() -> ShiftSpec {
        ShiftSpec::s_gap(GapSet::finite([0, 1]).unwrap())
    }

    fn distribution(spec: &ShiftSpec) -> GapDistribution {
        let e = solve_entropy(spec, &SolverConfig::with_tol(1e-12)).unwrap();
        gap_distribution(spec, &e.lambda, 1e-9).unwrap()
    }

    #[test]
    fn mixing_examples() {
        let v = is_mixing(&ShiftSpec::s_gap(GapSet::finite([1, 3]).unwrap()), 100).unwrap();
        assert_eq!((v.status, v.gcd_witness), (MixingStatus::NotMixing, 2));
        let v = is_mixing(&golden(), 100).unwrap();
        assert_eq!((v.status, v.gcd_witness), (MixingStatus::Mixing, 1));
        let odd = GapSet::eventually_periodic([], vec![Progression { start: 1, step: 2 }]).unwrap();
        let v = is_mixing(&ShiftSpec::s_gap(odd.clone()), 100).unwrap();
        assert_eq!((v.status, v.gcd_witness), (MixingStatus::NotMixing, 2));
        let incremental = odd.elements_upto(200).unwrap().into_iter().fold(0, |g: usize, n| g.gcd(&(n + 1)));
        assert_eq!(incremental, 2);
    }

    #[test]
    fn predicate_mixing_is_never_refuted() {
        let v = is_mixing(&ShiftSpec::s_gap(GapSet::primes(1000)), 10).unwrap();
        assert_eq!(v.status, MixingStatus::Mixing);
        assert_eq!(v.certificate, vec![2, 3]);
        let odd_primes = GapSet::predicate("odd-primes", 1000, true, |n| n > 2 && (2..n).all(|d| n % d != 0)).unwrap();
        let v = is_mixing(&ShiftSpec::s_gap(odd_primes), 500).unwrap();
        assert_eq!(v.status, MixingStatus::UnknownUpTo(500));
        assert_eq!(v.gcd_witness, 2);
    }

    #[test]
    fn witness_examples() {
        let gamma = mixing_gap_witness(&golden(), &w("0"), &w("0"), 1).unwrap().unwrap();
        assert_eq!(gamma.len(), 1);
        assert!(is_allowed(&golden(), &joined(&w("0"), &gamma, &w("0"))).unwrap());

        let not_mixing = ShiftSpec::s_gap(GapSet::finite([1, 3]).unwrap());
        for n in [2, 4, 6] {
            assert_eq!(mixing_gap_witness(&not_mixing, &w("0"), &w("0"), n).unwrap(), None);
        }
        assert!(mixing_gap_witness(&not_mixing, &w("0"), &w("0"), 3).unwrap().is_some());

        let gamma = mixing_gap_witness(&golden(), &w("01"), &w("10"), 4).unwrap().unwrap();
        assert!(is_allowed(&golden(), &joined(&w("01"), &gamma, &w("10"))).unwrap());
    }

    #[test]
    fn witness_absence_matches_enumeration() {
        let spec = ShiftSpec::s_gap(GapSet::finite([1, 3]).unwrap());
        for n in 1..=8 {
            let brute = enumerate_words(&spec, n + 2)
                .unwrap()
                .into_iter()
                .any(|x| x[0] == 0 && x[n + 1] == 0);
            let found = mixing_gap_witness(&spec, &w("0"), &w("0"), n).unwrap().is_some();
            assert_eq!(brute, found, "n = {n}");
        }
    }

    #[test]
    fn coin_thresholds() {
        // parts {1, 2}: everything reachable
        assert_eq!(coin_threshold(&golden(), 30).unwrap(), Some(0));
        // parts {3, 5}: Frobenius number 7
        let spec = ShiftSpec::s_gap(GapSet::finite([2, 4]).unwrap());
        assert_eq!(coin_threshold(&spec, 40).unwrap(), Some(8));
        let spec = ShiftSpec::s_gap(GapSet::finite([1, 3]).unwrap());
        assert_eq!(coin_threshold(&spec, 41).unwrap(), None);
    }

    #[test]
    fn synchronization_examples() {
        let r = verify_synchronization(&golden(), 1000, 8, 1).unwrap();
        assert_eq!(r.passes, 1000);
        let spec = ShiftSpec::new(GapSet::finite([2]).unwrap(), FactorSource::periodic(w("12"), 2).unwrap());
        let r = verify_synchronization(&spec, 1000, 8, 2).unwrap();
        assert_eq!(r.passes, 1000);
    }

    /// Negative control: an oracle that forbids the junction `12 0 12`.
    struct ForbidJunction<'a>(&'a ShiftSpec);

    impl LanguageOracle for ForbidJunction<'_> {
        fn is_allowed(&self, word: &[Symbol]) -> Result<bool> {
            let bad = w("12012");
            Ok(is_allowed(self.0, word)? && !word.windows(bad.len()).any(|x| x == bad.as_slice()))
        }
    }

    #[test]
    fn corrupted_oracle_is_caught() {
        let spec = ShiftSpec::new(GapSet::finite([2]).unwrap(), FactorSource::periodic(w("12"), 2).unwrap());
        let err = verify_synchronization_with(&ForbidJunction(&spec), &spec, 1000, 8, 3).unwrap_err();
        assert!(matches!(err, Error::SynchronizationViolation { .. }), "{err:?}");
    }

    #[test]
    fn irreducibility_sampling() {
        let spec = ShiftSpec::new(GapSet::finite([2, 5]).unwrap(), FactorSource::thue_morse());
        let r = verify_irreducibility(&spec, 200, 10, 4).unwrap();
        assert_eq!(r.successes, 200);
    }

    #[test]
    fn gap_distribution_examples() {
        let d = distribution(&golden());
        let lam = 1.618_033_988_749_895_f64;
        assert!((d.probability(0) - 1.0 / lam).abs() < 1e-10);
        assert!((d.probability(1) - 1.0 / (lam * lam)).abs() < 1e-10);
        assert!((d.zero_frequency - lam * lam / (lam + 2.0)).abs() < 1e-10);

        let d = distribution(&ShiftSpec::s_gap(GapSet::finite([1]).unwrap()));
        assert_eq!(d.entries, vec![(1, 1.0)]);
        assert_eq!(d.zero_frequency, 0.5);

        let all = ShiftSpec::new(GapSet::all(), FactorSource::periodic(w("12"), 2).unwrap());
        let e = solve_entropy(&all, &SolverConfig::default()).unwrap();
        let mut previous = f64::INFINITY;
        for tol in [1e-2, 1e-4, 1e-8] {
            let d = gap_distribution(&all, &e.lambda, tol).unwrap();
            let missing = (1.0 - d.total_mass()).abs();
            assert!(missing <= tol + 1e-9 && missing <= previous, "tol={tol} missing={missing}");
            previous = missing;
        }
        assert!(gap_distribution(&all, &e.lambda, 0.5).is_err());
    }

    #[test]
    fn sampler_examples() {
        let spec = ShiftSpec::s_gap(GapSet::finite([1]).unwrap());
        let s = sample_mme(&spec, &distribution(&spec), 6, 9).unwrap();
        assert_eq!(format_word(&s.word), "101010");

        let spec = golden();
        let s = sample_mme(&spec, &distribution(&spec), 100_000, 1).unwrap();
        let stats = s.stats();
        let expected = 0.723_606_797_749_979;
        assert!((stats.zero_frequency_empirical - expected).abs() < 3.0 * (0.25f64 / 1e5).sqrt());
        assert!(is_allowed(&spec, &s.word).unwrap());
    }

    #[test]
    fn zero_bound_examples() {
        for (s, tight) in [(vec![0, 1], false), (vec![1], true), (vec![3], true)] {
            let spec = ShiftSpec::s_gap(GapSet::finite(s.clone()).unwrap());
            let d = distribution(&spec);
            assert!(finite_s_zero_bound_check(&spec, &d).unwrap(), "{s:?}");
            let bound = 1.0 / (1 + s.iter().max().unwrap()) as f64;
            assert_eq!((d.zero_frequency - bound).abs() < 1e-12, tight, "{s:?}");
        }
        let spec = ShiftSpec::s_gap(GapSet::all());
        let d = distribution(&spec);
        assert!(matches!(finite_s_zero_bound_check(&spec, &d), Err(Error::WrongVariant { .. })));
    }
}
