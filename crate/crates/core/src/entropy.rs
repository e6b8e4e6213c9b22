//! Certified topological entropy.
//!
//! `h(X_w(S)) = ln λ*` where `λ*` is the unique positive root of
//! `f(λ) = Σ_{n∈S} φ_w(n) λ^{-(n+1)} = 1`. `f` is strictly decreasing, so the
//! root is enclosed by bisection on certified signs of `f - 1`.
//!
//! Each evaluation of `f` is an enclosure: the truncated sum over
//! `n ≤ N` is a lower bound and a tail bound on `n > N` gives the upper one.
//! Floating-point error is covered by a relative slack rather than true
//! interval arithmetic: every bound is widened by `2^-48` plus a term
//! proportional to the magnitude of the exponents involved. A coarser fixed
//! slack such as `2^-40` would leave a band of width about `1e-12` around
//! `λ*` where no sign of `f - 1` can be certified.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gapset::GapSet;
use crate::language::count_table;
use crate::shift::ShiftSpec;

/// How the tail `Σ_{n>N}` of the characteristic series was bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailBoundKind {
    /// `S` is finite and the truncation covers all of it.
    ExactPolynomial,
    /// `φ_w(n) = p` beyond the truncation (periodic `w`).
    GeometricTail,
    /// `φ_w(n) ≤ C γ^n` from submultiplicativity of `φ_w`.
    SubmultiplicativeTail,
}

/// An interval `[lo, hi]` enclosing a real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedValue {
    pub lo: f64,
    pub hi: f64,
    pub truncation_depth: usize,
    pub tail_bound_kind: TailBoundKind,
}

impl CertifiedValue {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &CertifiedValue) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

const BASE_SLACK: f64 = 1.0 / (1u64 << 48) as f64;

fn slack(magnitude: f64, terms: usize) -> f64 {
    BASE_SLACK + 4.0 * f64::EPSILON * (magnitude + terms as f64)
}

#[derive(Debug, Clone, Copy)]
enum TailModel {
    None,
    /// `φ_w(n) ≤ C γ^n` for every `n > N`, stored as logs.
    Geometric { ln_c: f64, ln_gamma: f64 },
}

/// The characteristic series truncated at depth `N`, with its tail model.
#[derive(Debug, Clone)]
pub struct CharacteristicSeries {
    /// `(n, ln φ_w(n))` for `n ∈ S`, `n ≤ N`.
    terms: Vec<(usize, f64)>,
    depth: usize,
    tail: TailModel,
    kind: TailBoundKind,
}

impl CharacteristicSeries {
    pub fn new(spec: &ShiftSpec, depth: usize) -> Result<Self> {
        let gaps = spec.gap_set();
        let src = spec.factor_source();
        let terms = gaps
            .elements_upto(depth)?
            .into_iter()
            .map(|n| Ok((n, src.ln_complexity(n)?)))
            .collect::<Result<Vec<_>>>()?;

        let (tail, kind) = if gaps.max().is_some_and(|m| m <= depth) {
            (TailModel::None, TailBoundKind::ExactPolynomial)
        } else if let Some((p, _)) = src.period().filter(|(p, _)| p - 1 <= depth) {
            (TailModel::Geometric { ln_c: (p as f64).ln(), ln_gamma: 0.0 }, TailBoundKind::GeometricTail)
        } else {
            (submultiplicative_tail(spec, depth)?, TailBoundKind::SubmultiplicativeTail)
        };
        Ok(Self { terms, depth, tail, kind })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn kind(&self) -> TailBoundKind {
        self.kind
    }

    fn ratio(&self, lambda: f64) -> Option<(f64, f64)> {
        match self.tail {
            TailModel::None => None,
            TailModel::Geometric { ln_c, ln_gamma } => Some((ln_c, ln_gamma - lambda.ln())),
        }
    }

    /// Upper bound on `Σ_{n>N} φ_w(n) λ^{-(n+1)}`; `+∞` when the tail model
    /// does not converge at `λ`.
    pub fn tail_upper(&self, lambda: f64) -> f64 {
        let Some((ln_c, ln_x)) = self.ratio(lambda) else { return 0.0 };
        if ln_x >= 0.0 {
            return f64::INFINITY;
        }
        let x = ln_x.exp();
        (ln_c - lambda.ln() + (self.depth + 1) as f64 * ln_x).exp() / (1.0 - x)
    }

    /// Upper bound on `Σ_{n>N} (n+1) φ_w(n) λ^{-(n+1)}`.
    pub fn tail_moment_upper(&self, lambda: f64) -> f64 {
        let Some((ln_c, ln_x)) = self.ratio(lambda) else { return 0.0 };
        if ln_x >= 0.0 {
            return f64::INFINITY;
        }
        let x = ln_x.exp();
        let n = self.depth as f64;
        let lead = (ln_c - lambda.ln() + (n + 1.0) * ln_x).exp();
        lead * ((n + 2.0) - (n + 1.0) * x) / ((1.0 - x) * (1.0 - x))
    }

    /// Enclosure of `f(λ)`.
    pub fn eval(&self, lambda: f64) -> CertifiedValue {
        let ln_lambda = lambda.ln();
        let mut sum = 0.0;
        let mut magnitude: f64 = 0.0;
        for &(n, ln_phi) in &self.terms {
            let e = ln_phi - (n + 1) as f64 * ln_lambda;
            magnitude = magnitude.max(ln_phi.abs() + ((n + 1) as f64 * ln_lambda).abs());
            sum += e.exp();
        }
        let eps = slack(magnitude, self.terms.len());
        CertifiedValue {
            lo: sum * (1.0 - eps),
            hi: (sum + self.tail_upper(lambda)) * (1.0 + eps),
            truncation_depth: self.depth,
            tail_bound_kind: self.kind,
        }
    }

    /// `(n, φ_w(n) λ^{-(n+1)})` for the retained terms.
    pub fn weights(&self, lambda: f64) -> Vec<(usize, f64)> {
        let ln_lambda = lambda.ln();
        self.terms
            .iter()
            .map(|&(n, ln_phi)| (n, (ln_phi - (n + 1) as f64 * ln_lambda).exp()))
            .collect()
    }
}

/// `φ(n) ≤ C γ^n` for `n > N` with `γ = φ(N)^{1/N}` and
/// `C = max_{r<N} φ(r) γ^{-r}`: write `n = qN + r` and use
/// `φ(qN + r) ≤ φ(N)^q φ(r)`.
fn submultiplicative_tail(spec: &ShiftSpec, depth: usize) -> Result<TailModel> {
    let src = spec.factor_source();
    let ln_k = (spec.alphabet_size() as f64).ln();
    if depth == 0 {
        return Ok(TailModel::Geometric { ln_c: 0.0, ln_gamma: ln_k });
    }
    let ln_gamma = (src.ln_complexity(depth)? / depth as f64).min(ln_k);
    let mut ln_c: f64 = 0.0;
    for r in 0..depth {
        ln_c = ln_c.max(src.ln_complexity(r)? - r as f64 * ln_gamma);
    }
    Ok(TailModel::Geometric { ln_c, ln_gamma })
}

/// Enclosure of `f(λ) = Σ_{n∈S} φ_w(n) λ^{-(n+1)}` at truncation depth `N`.
pub fn characteristic_sum(spec: &ShiftSpec, lambda: f64, depth: usize) -> Result<CertifiedValue> {
    if !(lambda > 0.0) {
        return Err(Error::Invalid(format!("lambda must be positive, got {lambda}")));
    }
    Ok(CharacteristicSeries::new(spec, depth)?.eval(lambda))
}

/// [`characteristic_sum`] with the depth doubled from `initial_depth` until
/// the upper bound is finite and the width is below `width_tol`.
pub fn characteristic_sum_adaptive(
    spec: &ShiftSpec,
    lambda: f64,
    width_tol: f64,
    initial_depth: usize,
    max_depth: usize,
) -> Result<CertifiedValue> {
    let max_depth = effective_max_depth(spec.gap_set(), max_depth);
    let mut depth = initial_depth.clamp(1, max_depth.max(1));
    loop {
        let value = characteristic_sum(spec, lambda, depth)?;
        if value.width() <= width_tol {
            return Ok(value);
        }
        if depth >= max_depth {
            if value.hi.is_infinite() {
                return Err(Error::DivergentAt(lambda));
            }
            return Ok(value);
        }
        depth = (depth * 2).min(max_depth);
    }
}

/// Enclosure of `f(λ)` using the two-part split for periodic `w` of
/// minimal period `p`:
/// `Σ_{n∈S, n<p-1} φ_w(n) λ^{-(n+1)} + p Σ_{n∈S, n≥p-1} λ^{-(n+1)}`.
///
/// For structured `S` the second sum closes to a finite geometric
/// expression; predicate sets are truncated at `depth`.
pub fn periodic_characteristic(spec: &ShiftSpec, lambda: f64, depth: usize) -> Result<CertifiedValue> {
    let Some((p, _)) = spec.factor_source().period() else {
        return Err(Error::WrongVariant { expected: "a periodic factor source" });
    };
    if !(lambda > 0.0) {
        return Err(Error::Invalid(format!("lambda must be positive, got {lambda}")));
    }
    let gaps = spec.gap_set();
    let src = spec.factor_source();
    let ln_lambda = lambda.ln();
    let term = |n: usize| (-((n + 1) as f64) * ln_lambda).exp();
    let split = p - 1;

    let mut head = 0.0;
    let mut magnitude: f64 = 0.0;
    let mut count = 0;
    if split > 0 {
        for n in gaps.elements_upto(split - 1)? {
            let ln_phi = src.ln_complexity(n)?;
            magnitude = magnitude.max(ln_phi.abs() + ((n + 1) as f64 * ln_lambda).abs());
            head += (ln_phi - (n + 1) as f64 * ln_lambda).exp();
            count += 1;
        }
    }

    let (body, tail, used_depth) = match gaps.tail_pattern() {
        Some(pattern) => {
            let start = pattern.threshold.max(split);
            let mut body = 0.0;
            for n in (split..start).filter(|&n| gaps.contains(n).unwrap()) {
                body += term(n);
                magnitude = magnitude.max(((n + 1) as f64 * ln_lambda).abs());
                count += 1;
            }
            let residues: Vec<usize> = (start..start + pattern.period)
                .filter(|&n| gaps.contains(n).unwrap())
                .collect();
            let periodic = if residues.is_empty() {
                0.0
            } else if lambda <= 1.0 {
                f64::INFINITY
            } else {
                let block: f64 = residues.iter().map(|&r| term(r)).sum();
                magnitude = magnitude.max(((start + 2 * pattern.period) as f64 * ln_lambda).abs());
                count += residues.len();
                block / (1.0 - term(pattern.period - 1))
            };
            (body + periodic, 0.0, start + pattern.period)
        }
        None => {
            let depth = depth.max(split);
            let mut body = 0.0;
            for n in gaps.elements_upto(depth)?.into_iter().filter(|&n| n >= split) {
                body += term(n);
                magnitude = magnitude.max(((n + 1) as f64 * ln_lambda).abs());
                count += 1;
            }
            let tail = if lambda <= 1.0 { f64::INFINITY } else { term(depth + 1) / (1.0 - 1.0 / lambda) };
            (body, tail, depth)
        }
    };
    let eps = slack(magnitude, count);
    let pf = p as f64;
    let exact = body.is_finite() && tail == 0.0;
    let lo = if body.is_finite() { (head + pf * body) * (1.0 - eps) } else { f64::INFINITY };
    Ok(CertifiedValue {
        lo,
        hi: (head + pf * (body + tail)) * (1.0 + eps),
        truncation_depth: used_depth,
        tail_bound_kind: if exact && gaps.is_finite() {
            TailBoundKind::ExactPolynomial
        } else {
            TailBoundKind::GeometricTail
        },
    })
}

/// Bisection settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Target width of the enclosure of `λ*`; at least `1e-12`.
    pub tol: f64,
    pub initial_depth: usize,
    pub max_depth: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { tol: 1e-12, initial_depth: 64, max_depth: 1 << 14 }
    }
}

impl SolverConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// Enclosure of `λ*` together with `h = ln λ*` in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyEnclosure {
    pub lambda: CertifiedValue,
    pub h_lo: f64,
    pub h_hi: f64,
}

impl EntropyEnclosure {
    fn from_lambda(lambda: CertifiedValue) -> Self {
        Self { h_lo: lambda.lo.ln(), h_hi: lambda.hi.ln(), lambda }
    }

    pub fn h_mid(&self) -> f64 {
        0.5 * (self.h_lo + self.h_hi)
    }

    /// `(h_lo, h_hi)` in bits.
    pub fn h_bits(&self) -> (f64, f64) {
        (self.lambda.lo.log2(), self.lambda.hi.log2())
    }
}

fn effective_max_depth(gaps: &GapSet, max_depth: usize) -> usize {
    match gaps.enumeration_bound() {
        Some(bound) => max_depth.min(bound),
        None => max_depth,
    }
}

/// Encloses the root `λ*` of `f(λ) = 1` to width `tol`.
///
/// The bracket starts at `[1, k+1]`: `f(1) ≥ 1` because `S` is non-empty and
/// `φ_w ≥ 1`, and `f(k+1) ≤ 1` because `φ_w(n) ≤ k^n`. The truncation depth
/// doubles whenever an evaluation straddles `1` because of its tail bound.
/// When no further depth is available the best certified bracket is returned
/// inside [`Error::DepthExhausted`].
pub fn solve_entropy(spec: &ShiftSpec, cfg: &SolverConfig) -> Result<EntropyEnclosure> {
    if !(cfg.tol >= 1e-12) {
        return Err(Error::Invalid(format!("tolerance must be at least 1e-12, got {}", cfg.tol)));
    }
    let gaps = spec.gap_set();
    if let Some(m) = gaps.is_singleton() {
        return singleton_root(spec, m);
    }

    let max_depth = effective_max_depth(gaps, cfg.max_depth.max(1));
    let mut depth = match gaps.max() {
        Some(m) if m <= max_depth => m,
        _ => cfg.initial_depth.clamp(1, max_depth),
    };
    let mut series = CharacteristicSeries::new(spec, depth)?;
    let (mut lo, mut hi) = (1.0_f64, (spec.alphabet_size() + 1) as f64);

    while hi - lo > cfg.tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = series.eval(mid);
        if value.lo >= 1.0 {
            lo = mid;
            continue;
        }
        if value.hi <= 1.0 {
            hi = mid;
            continue;
        }
        let tail_matters = series.tail_upper(mid) > 0.25 * (value.hi - value.lo);
        if tail_matters && depth < max_depth {
            depth = (depth * 2).min(max_depth);
            series = CharacteristicSeries::new(spec, depth)?;
            continue;
        }
        // The straddle is down to rounding slack (or depth is exhausted):
        // look for certified points on either side of mid.
        match probe_around(&series, mid, lo, hi, cfg.tol) {
            Some((a, b)) => {
                lo = a;
                hi = b;
            }
            None => {
                return Err(Error::DepthExhausted { lambda_lo: lo, lambda_hi: hi, depth });
            }
        }
        break;
    }
    if hi - lo > cfg.tol {
        return Err(Error::DepthExhausted { lambda_lo: lo, lambda_hi: hi, depth });
    }
    Ok(EntropyEnclosure::from_lambda(CertifiedValue {
        lo,
        hi,
        truncation_depth: depth,
        tail_bound_kind: series.kind(),
    }))
}

fn probe_around(series: &CharacteristicSeries, mid: f64, lo: f64, hi: f64, tol: f64) -> Option<(f64, f64)> {
    let mut delta = tol / 8.0;
    while delta < hi - lo {
        let a = (mid - delta).max(lo);
        let b = (mid + delta).min(hi);
        let left_ok = a == lo || series.eval(a).lo >= 1.0;
        let right_ok = b == hi || series.eval(b).hi <= 1.0;
        if left_ok && right_ok {
            return Some((a, b));
        }
        delta *= 2.0;
    }
    None
}

/// `S = {m}`: `f(λ) = φ_w(m) λ^{-(m+1)}`, so `λ* = φ_w(m)^{1/(m+1)}`.
fn singleton_root(spec: &ShiftSpec, m: usize) -> Result<EntropyEnclosure> {
    let ln_phi = spec.factor_source().ln_complexity(m)?;
    let lambda = CertifiedValue {
        lo: 1.0,
        hi: 1.0,
        truncation_depth: m,
        tail_bound_kind: TailBoundKind::ExactPolynomial,
    };
    if ln_phi == 0.0 {
        return Ok(EntropyEnclosure::from_lambda(lambda));
    }
    let root = (ln_phi / (m + 1) as f64).exp();
    let eps = 4.0 * f64::EPSILON * root;
    Ok(EntropyEnclosure::from_lambda(CertifiedValue { lo: root - eps, hi: root + eps, ..lambda }))
}

/// Entropy of the S-gap shift (`w = 1^∞`, `φ ≡ 1`).
pub fn sgap_entropy(gap_set: &GapSet, cfg: &SolverConfig) -> Result<EntropyEnclosure> {
    solve_entropy(&ShiftSpec::s_gap(gap_set.clone()), cfg)
}

/// `(1/n) ln |B_n(X_w(S))|`.
pub fn empirical_entropy(spec: &ShiftSpec, n: usize) -> Result<f64> {
    Ok(empirical_entropy_table(spec, n)?.pop().unwrap())
}

/// [`empirical_entropy`] for `n = 1..=n_max`.
pub fn empirical_entropy_table(spec: &ShiftSpec, n_max: usize) -> Result<Vec<f64>> {
    Ok(count_table(spec, n_max)?
        .iter()
        .enumerate()
        .map(|(i, c)| crate::factor::ln_biguint(c) / (i + 1) as f64)
        .collect())
}
