//! Finite descriptions of gap-length sets `S ⊆ ℤ≥0`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Arithmetic progression `{start + i * step : i ≥ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Progression {
    pub start: usize,
    pub step: usize,
}

impl Progression {
    pub fn contains(&self, n: usize) -> bool {
        n >= self.start && (n - self.start).is_multiple_of(self.step)
    }
}

/// Which of the three representations backs a [`GapSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapSetKind {
    Finite,
    EventuallyPeriodic,
    Predicate,
}

type MembershipFn = Arc<dyn Fn(usize) -> bool + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Finite(BTreeSet<usize>),
    EventuallyPeriodic {
        sporadic: BTreeSet<usize>,
        progressions: Vec<Progression>,
    },
    Predicate {
        name: String,
        membership: MembershipFn,
        bound: usize,
        infinite: bool,
    },
}

/// A non-empty set of admissible gap lengths.
///
/// Finite and eventually periodic sets answer every query exactly. Predicate
/// sets answer exactly up to their enumeration bound and refuse beyond it with
/// [`Error::QueryBeyondBound`].
#[derive(Clone)]
pub struct GapSet {
    repr: Repr,
}

/// Periodic structure of an eventually periodic set: for every
/// `n ≥ threshold`, `n ∈ S` iff `threshold + ((n - threshold) % period)` is
/// in `residues`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailPattern {
    pub threshold: usize,
    pub period: usize,
    /// Members of `S` in `[threshold, threshold + period)`, ascending.
    pub residues: Vec<usize>,
}

impl GapSet {
    pub fn finite<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::Invalid("gap set must be non-empty".into()));
        }
        Ok(Self { repr: Repr::Finite(elements) })
    }

    pub fn eventually_periodic<I>(sporadic: I, progressions: Vec<Progression>) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let sporadic: BTreeSet<usize> = sporadic.into_iter().collect();
        if sporadic.is_empty() && progressions.is_empty() {
            return Err(Error::Invalid("gap set must be non-empty".into()));
        }
        if let Some(p) = progressions.iter().find(|p| p.step == 0) {
            return Err(Error::Invalid(format!("progression starting at {} has step 0", p.start)));
        }
        let mut progressions = progressions;
        progressions.sort();
        progressions.dedup();
        Ok(Self { repr: Repr::EventuallyPeriodic { sporadic, progressions } })
    }

    /// All of `ℤ≥0`.
    pub fn all() -> Self {
        Self::eventually_periodic([], vec![Progression { start: 0, step: 1 }]).unwrap()
    }

    /// A set given by a membership test, trusted up to `bound`.
    ///
    /// `infinite` declares whether the set is unbounded; a set declared finite
    /// must have its largest element at or below `bound`.
    pub fn predicate<F>(name: &str, bound: usize, infinite: bool, membership: F) -> Result<Self>
    where
        F: Fn(usize) -> bool + Send + Sync + 'static,
    {
        if bound == 0 {
            return Err(Error::Invalid("enumeration bound must be positive".into()));
        }
        if !(0..=bound).any(&membership) {
            return Err(Error::Invalid(format!("predicate `{name}` has no element up to {bound}")));
        }
        Ok(Self {
            repr: Repr::Predicate {
                name: name.to_string(),
                membership: Arc::new(membership),
                bound,
                infinite,
            },
        })
    }

    pub fn primes(bound: usize) -> Self {
        Self::predicate("primes", bound, true, is_prime).unwrap()
    }

    pub fn powers_of_two(bound: usize) -> Self {
        Self::predicate("powers-of-2", bound, true, |n| n.is_power_of_two()).unwrap()
    }

    pub fn squares(bound: usize) -> Self {
        Self::predicate("squares", bound, true, |n| {
            let r = (n as f64).sqrt() as usize;
            (r.saturating_sub(1)..=r + 1).any(|q| q * q == n)
        })
        .unwrap()
    }

    /// Looks up one of the built-in named predicates.
    pub fn named(name: &str, bound: usize) -> Result<Self> {
        match name {
            "primes" => Ok(Self::primes(bound)),
            "powers-of-2" => Ok(Self::powers_of_two(bound)),
            "squares" => Ok(Self::squares(bound)),
            other => Err(Error::Invalid(format!("unknown predicate `{other}`"))),
        }
    }

    pub fn kind(&self) -> GapSetKind {
        match self.repr {
            Repr::Finite(_) => GapSetKind::Finite,
            Repr::EventuallyPeriodic { .. } => GapSetKind::EventuallyPeriodic,
            Repr::Predicate { .. } => GapSetKind::Predicate,
        }
    }

    /// Enumeration bound of a predicate set; `None` for structured sets.
    pub fn enumeration_bound(&self) -> Option<usize> {
        match &self.repr {
            Repr::Predicate { bound, .. } => Some(*bound),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.repr {
            Repr::Finite(e) => format!("{e:?}"),
            Repr::EventuallyPeriodic { sporadic, progressions } => {
                let mut parts: Vec<String> = sporadic.iter().map(|n| n.to_string()).collect();
                parts.extend(progressions.iter().map(|p| format!("{}+{}i", p.start, p.step)));
                format!("{{{}}}", parts.join(", "))
            }
            Repr::Predicate { name, .. } => name.clone(),
        }
    }

    fn check_bound(&self, n: usize) -> Result<()> {
        match &self.repr {
            Repr::Predicate { name, bound, .. } if n > *bound => {
                Err(Error::QueryBeyondBound { name: name.clone(), n, bound: *bound })
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, n: usize) -> Result<bool> {
        self.check_bound(n)?;
        Ok(match &self.repr {
            Repr::Finite(e) => e.contains(&n),
            Repr::EventuallyPeriodic { sporadic, progressions } => {
                sporadic.contains(&n) || progressions.iter().any(|p| p.contains(n))
            }
            Repr::Predicate { membership, .. } => membership(n),
        })
    }

    /// `{n ∈ S : n ≤ limit}` in ascending order.
    pub fn elements_upto(&self, limit: usize) -> Result<Vec<usize>> {
        self.check_bound(limit)?;
        Ok(match &self.repr {
            Repr::Finite(e) => e.range(..=limit).copied().collect(),
            Repr::Predicate { membership, .. } => (0..=limit).filter(|&n| membership(n)).collect(),
            Repr::EventuallyPeriodic { sporadic, progressions } => {
                let mut out: BTreeSet<usize> = sporadic.range(..=limit).copied().collect();
                for p in progressions {
                    out.extend((p.start..=limit).step_by(p.step));
                }
                out.into_iter().collect()
            }
        })
    }

    /// True when the represented set is finite.
    pub fn is_finite(&self) -> bool {
        match &self.repr {
            Repr::Finite(_) => true,
            Repr::EventuallyPeriodic { progressions, .. } => progressions.is_empty(),
            Repr::Predicate { infinite, .. } => !infinite,
        }
    }

    /// Largest element of a finite set, `None` for infinite sets.
    pub fn max(&self) -> Option<usize> {
        match &self.repr {
            Repr::Finite(e) => e.iter().next_back().copied(),
            Repr::EventuallyPeriodic { sporadic, progressions } if progressions.is_empty() => {
                sporadic.iter().next_back().copied()
            }
            Repr::Predicate { membership, bound, infinite: false, .. } => {
                (0..=*bound).rev().find(|&n| membership(n))
            }
            _ => None,
        }
    }

    pub fn min(&self) -> usize {
        match &self.repr {
            Repr::Finite(e) => *e.iter().next().unwrap(),
            Repr::EventuallyPeriodic { sporadic, progressions } => sporadic
                .iter()
                .next()
                .copied()
                .into_iter()
                .chain(progressions.iter().map(|p| p.start))
                .min()
                .unwrap(),
            Repr::Predicate { membership, bound, .. } => (0..=*bound).find(|&n| membership(n)).unwrap(),
        }
    }

    /// Smallest element `≥ n`, if one exists (and is within the bound).
    pub fn next_at_least(&self, n: usize) -> Result<Option<usize>> {
        match &self.repr {
            Repr::Finite(e) => Ok(e.range(n..).next().copied()),
            Repr::EventuallyPeriodic { sporadic, progressions } => {
                let from_sporadic = sporadic.range(n..).next().copied();
                let from_progressions = progressions.iter().map(|p| {
                    if n <= p.start {
                        p.start
                    } else {
                        p.start + (n - p.start).div_ceil(p.step) * p.step
                    }
                });
                Ok(from_sporadic.into_iter().chain(from_progressions).min())
            }
            Repr::Predicate { name, membership, bound, infinite } => {
                if n > *bound {
                    if *infinite {
                        return Err(Error::QueryBeyondBound { name: name.clone(), n, bound: *bound });
                    }
                    return Ok(None);
                }
                match (n..=*bound).find(|&m| membership(m)) {
                    Some(m) => Ok(Some(m)),
                    None if *infinite => {
                        Err(Error::QueryBeyondBound { name: name.clone(), n: *bound + 1, bound: *bound })
                    }
                    None => Ok(None),
                }
            }
        }
    }

    /// Whether some element of `S` is `≥ len`: the boundary condition on
    /// zero-free heads, tails and blocks.
    pub fn has_element_at_least(&self, len: usize) -> Result<bool> {
        if !self.is_finite() {
            return Ok(true);
        }
        Ok(self.max().is_some_and(|m| m >= len))
    }

    /// Periodic tail structure of a structured set. Finite sets have an empty
    /// residue list.
    pub fn tail_pattern(&self) -> Option<TailPattern> {
        match &self.repr {
            Repr::Finite(e) => Some(TailPattern {
                threshold: e.iter().next_back().map_or(0, |m| m + 1),
                period: 1,
                residues: vec![],
            }),
            Repr::EventuallyPeriodic { sporadic, progressions } => {
                let threshold = sporadic
                    .iter()
                    .next_back()
                    .map(|m| m + 1)
                    .into_iter()
                    .chain(progressions.iter().map(|p| p.start))
                    .max()
                    .unwrap_or(0);
                let period = progressions
                    .iter()
                    .fold(1usize, |acc, p| num_integer::lcm(acc, p.step));
                let residues = (threshold..threshold + period)
                    .filter(|&n| progressions.iter().any(|p| p.contains(n)))
                    .collect::<Vec<_>>();
                Some(TailPattern {
                    threshold,
                    period: if progressions.is_empty() { 1 } else { period },
                    residues,
                })
            }
            Repr::Predicate { .. } => None,
        }
    }

    pub(crate) fn sporadic_and_progressions(&self) -> Option<(Vec<usize>, Vec<Progression>)> {
        match &self.repr {
            Repr::Finite(e) => Some((e.iter().copied().collect(), vec![])),
            Repr::EventuallyPeriodic { sporadic, progressions } => {
                Some((sporadic.iter().copied().collect(), progressions.clone()))
            }
            Repr::Predicate { .. } => None,
        }
    }

    pub fn is_singleton(&self) -> Option<usize> {
        match &self.repr {
            Repr::Finite(e) if e.len() == 1 => e.iter().next().copied(),
            Repr::EventuallyPeriodic { sporadic, progressions } if progressions.is_empty() && sporadic.len() == 1 => {
                sporadic.iter().next().copied()
            }
            _ => None,
        }
    }
}

impl fmt::Debug for GapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Predicate { name, bound, infinite, .. } => f
                .debug_struct("Predicate")
                .field("name", name)
                .field("bound", bound)
                .field("infinite", infinite)
                .finish(),
            _ => write!(f, "{:?}{}", self.kind(), self.name()),
        }
    }
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
