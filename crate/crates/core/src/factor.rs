//! Factor languages of the bi-infinite word `w`.
//!
//! `w` is never stored as a point. Everything downstream only needs
//! `B_n(w)` and the complexity function `φ_w(n) = |B_n(w)|`, so each source
//! knows how to produce those.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::word::{format_word, is_over_letters, Symbol, Word, MAX_ALPHABET};

/// Which representation backs a [`FactorSource`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSourceKind {
    Periodic,
    Substitution,
    FullShift,
}

/// Largest `k^n` materialized for a full-shift factor set.
const FULL_SHIFT_SET_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone)]
enum Repr {
    /// `u^∞` with `u` of minimal period.
    Periodic { word: Word },
    Substitution(Box<Substitution>),
    FullShift,
}

#[derive(Debug, Clone)]
struct Substitution {
    /// `rules[a - 1]` is the image of letter `a`.
    rules: Vec<Word>,
    seed: Symbol,
    primitive: bool,
    /// Two-letter factors of the language; empty unless primitive.
    pairs: Vec<[Symbol; 2]>,
}

type FactorCache = Arc<RwLock<HashMap<usize, Arc<Vec<Word>>>>>;

/// Finite description of the factor language of `w ∈ {1..k}^ℤ`.
#[derive(Debug, Clone)]
pub struct FactorSource {
    alphabet_size: usize,
    repr: Repr,
    cache: FactorCache,
}

impl FactorSource {
    fn with_repr(alphabet_size: usize, repr: Repr) -> Self {
        Self { alphabet_size, repr, cache: Arc::default() }
    }

    fn check_alphabet(k: usize) -> Result<()> {
        if k == 0 || k > MAX_ALPHABET {
            return Err(Error::Invalid(format!("alphabet size must be in 1..={MAX_ALPHABET}, got {k}")));
        }
        Ok(())
    }

    /// `u^∞`, reduced to its minimal period.
    pub fn periodic(word: Word, alphabet_size: usize) -> Result<Self> {
        Self::check_alphabet(alphabet_size)?;
        if word.is_empty() {
            return Err(Error::Invalid("periodic word must be non-empty".into()));
        }
        if !is_over_letters(&word, alphabet_size) {
            return Err(Error::Invalid(format!(
                "periodic word `{}` is not over {{1..{alphabet_size}}}",
                format_word(&word)
            )));
        }
        let p = minimal_period(&word);
        let mut word = word;
        word.truncate(p);
        Ok(Self::with_repr(alphabet_size, Repr::Periodic { word }))
    }

    pub fn full_shift(alphabet_size: usize) -> Result<Self> {
        Self::check_alphabet(alphabet_size)?;
        Ok(Self::with_repr(alphabet_size, Repr::FullShift))
    }

    /// Substitution `a ↦ rules[a - 1]` iterated from `seed`.
    ///
    /// With `primitive` set, primitivity is verified here and construction
    /// fails with [`Error::NotPrimitive`] if it does not hold. Without it the
    /// source is built but every factor query is refused.
    pub fn substitution(rules: Vec<Word>, seed: Symbol, alphabet_size: usize, primitive: bool) -> Result<Self> {
        Self::check_alphabet(alphabet_size)?;
        if rules.len() != alphabet_size {
            return Err(Error::Invalid(format!(
                "substitution needs one rule per letter: {} rules for k = {alphabet_size}",
                rules.len()
            )));
        }
        if let Some(r) = rules.iter().find(|r| r.is_empty() || !is_over_letters(r, alphabet_size)) {
            return Err(Error::Invalid(format!("bad substitution image `{}`", format_word(r))));
        }
        if seed == 0 || seed as usize > alphabet_size {
            return Err(Error::Invalid(format!("seed letter {seed} outside 1..={alphabet_size}")));
        }
        let mut sub = Substitution { rules, seed, primitive: false, pairs: vec![] };
        if primitive {
            if !sub.verify_primitive() {
                return Err(Error::NotPrimitive);
            }
            if sub.rules.iter().all(|r| r.len() == 1) {
                return Err(Error::Invalid("substitution never grows; its language is finite".into()));
            }
            sub.primitive = true;
            sub.pairs = sub.two_letter_factors();
        }
        Ok(Self::with_repr(alphabet_size, Repr::Substitution(Box::new(sub))))
    }

    pub fn thue_morse() -> Self {
        Self::substitution(vec![vec![1, 2], vec![2, 1]], 1, 2, true).unwrap()
    }

    pub fn fibonacci() -> Self {
        Self::substitution(vec![vec![1, 2], vec![1]], 1, 2, true).unwrap()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn kind(&self) -> FactorSourceKind {
        match self.repr {
            Repr::Periodic { .. } => FactorSourceKind::Periodic,
            Repr::Substitution(_) => FactorSourceKind::Substitution,
            Repr::FullShift => FactorSourceKind::FullShift,
        }
    }

    /// Minimal period and canonical block of a periodic source.
    pub fn period(&self) -> Option<(usize, &[Symbol])> {
        match &self.repr {
            Repr::Periodic { word } => Some((word.len(), word)),
            _ => None,
        }
    }

    /// Rules and seed letter of a substitution source.
    pub fn substitution_rules(&self) -> Option<(&[Word], Symbol)> {
        match &self.repr {
            Repr::Substitution(s) => Some((&s.rules, s.seed)),
            _ => None,
        }
    }

    fn substitution_ref(&self) -> Result<&Substitution> {
        match &self.repr {
            Repr::Substitution(s) if s.primitive => Ok(s),
            Repr::Substitution(_) => Err(Error::NotPrimitive),
            _ => unreachable!(),
        }
    }

    /// `B_n(w)`, sorted lexicographically.
    pub fn factor_set(&self, n: usize) -> Result<Arc<Vec<Word>>> {
        if n == 0 {
            return Ok(Arc::new(vec![vec![]]));
        }
        if let Some(hit) = self.cache.read().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let set: Vec<Word> = match &self.repr {
            Repr::Periodic { word } => {
                let p = word.len();
                let windows: BTreeSet<Word> =
                    (0..p).map(|i| (0..n).map(|j| word[(i + j) % p]).collect()).collect();
                windows.into_iter().collect()
            }
            Repr::FullShift => {
                let total = (self.alphabet_size as u64).checked_pow(n as u32);
                if total.is_none_or(|t| t > FULL_SHIFT_SET_LIMIT) {
                    return Err(Error::BudgetExceeded {
                        requested: (self.alphabet_size as f64).powi(n as i32),
                        budget: FULL_SHIFT_SET_LIMIT as f64,
                    });
                }
                all_words(self.alphabet_size, n)
            }
            Repr::Substitution(_) => self.substitution_ref()?.factors(n),
        };
        let set = Arc::new(set);
        self.cache.write().unwrap().insert(n, set.clone());
        Ok(set)
    }

    /// `φ_w(n)`.
    pub fn complexity(&self, n: usize) -> Result<BigUint> {
        match &self.repr {
            Repr::FullShift => Ok(BigUint::from(self.alphabet_size).pow(n as u32)),
            Repr::Periodic { word } if n >= 1 && n + 1 >= word.len() => Ok(BigUint::from(word.len())),
            _ => Ok(BigUint::from(self.factor_set(n)?.len())),
        }
    }

    /// `ln φ_w(n)` without materializing huge integers.
    pub fn ln_complexity(&self, n: usize) -> Result<f64> {
        match &self.repr {
            Repr::FullShift => Ok(n as f64 * (self.alphabet_size as f64).ln()),
            _ => Ok(ln_biguint(&self.complexity(n)?)),
        }
    }

    /// Whether `f ∈ B(w)`.
    pub fn contains_factor(&self, f: &[Symbol]) -> Result<bool> {
        if !is_over_letters(f, self.alphabet_size) {
            return Ok(false);
        }
        match &self.repr {
            Repr::FullShift => Ok(true),
            Repr::Periodic { word } => Ok(periodic_offsets(word, f).next().is_some()),
            Repr::Substitution(_) => {
                self.substitution_ref()?;
                Ok(self.factor_set(f.len())?.binary_search_by(|x| x.as_slice().cmp(f)).is_ok())
            }
        }
    }

    /// Lexicographically least `g ∈ B_{target_len}(w)` having `f` as prefix.
    pub fn extend_right(&self, f: &[Symbol], target_len: usize) -> Result<Word> {
        self.require_factor(f)?;
        if target_len < f.len() {
            return Err(Error::Invalid(format!("target length {target_len} shorter than the factor")));
        }
        match &self.repr {
            Repr::FullShift => {
                let mut g = f.to_vec();
                g.resize(target_len, 1);
                Ok(g)
            }
            Repr::Periodic { word } => {
                let p = word.len();
                Ok(periodic_offsets(word, f)
                    .map(|i| (0..target_len).map(|j| word[(i + j) % p]).collect::<Word>())
                    .min()
                    .unwrap())
            }
            Repr::Substitution(_) => Ok(self
                .factor_set(target_len)?
                .iter()
                .find(|g| g.starts_with(f))
                .cloned()
                .expect("factor languages of primitive substitutions are extendable")),
        }
    }

    /// Lexicographically least `g ∈ B_{target_len}(w)` having `f` as suffix.
    pub fn extend_left(&self, f: &[Symbol], target_len: usize) -> Result<Word> {
        self.require_factor(f)?;
        if target_len < f.len() {
            return Err(Error::Invalid(format!("target length {target_len} shorter than the factor")));
        }
        let pad = target_len - f.len();
        match &self.repr {
            Repr::FullShift => {
                let mut g = vec![1; pad];
                g.extend_from_slice(f);
                Ok(g)
            }
            Repr::Periodic { word } => {
                let p = word.len();
                Ok(periodic_offsets(word, f)
                    .map(|i| {
                        let start = (i + p * (pad / p + 1) - pad) % p;
                        (0..target_len).map(|j| word[(start + j) % p]).collect::<Word>()
                    })
                    .min()
                    .unwrap())
            }
            Repr::Substitution(_) => Ok(self
                .factor_set(target_len)?
                .iter()
                .find(|g| g.ends_with(f))
                .cloned()
                .expect("factor languages of primitive substitutions are extendable")),
        }
    }

    /// Lexicographically least factor of length `n`.
    pub fn least_factor(&self, n: usize) -> Result<Word> {
        self.extend_right(&[], n)
    }

    /// Draws a factor of length `n` uniformly from `B_n(w)`.
    pub fn sample_factor<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Word> {
        match &self.repr {
            Repr::FullShift => Ok((0..n).map(|_| rng.gen_range(1..=self.alphabet_size as Symbol)).collect()),
            // windows at distinct offsets are distinct once n ≥ p - 1
            Repr::Periodic { word } if n + 1 >= word.len() => {
                let p = word.len();
                let i = rng.gen_range(0..p);
                Ok((0..n).map(|j| word[(i + j) % p]).collect())
            }
            _ => {
                let set = self.factor_set(n)?;
                Ok(set[rng.gen_range(0..set.len())].clone())
            }
        }
    }

    fn require_factor(&self, f: &[Symbol]) -> Result<()> {
        if self.contains_factor(f)? {
            Ok(())
        } else {
            Err(Error::NotAFactor(format_word(f)))
        }
    }
}

impl Substitution {
    fn image(&self, word: &[Symbol]) -> Word {
        word.iter().flat_map(|&a| self.rules[a as usize - 1].iter().copied()).collect()
    }

    /// Letters occurring in the image of each letter, as bitmasks.
    fn one_step_reach(&self) -> Vec<u64> {
        self.rules
            .iter()
            .map(|r| r.iter().fold(0u64, |m, &b| m | 1 << (b - 1)))
            .collect()
    }

    /// Some power of the incidence matrix is strictly positive. Iterates
    /// reachability sets up to the Wielandt bound `(k-1)^2 + 1`.
    fn verify_primitive(&self) -> bool {
        let k = self.rules.len();
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let step = self.one_step_reach();
        let mut reach = step.clone();
        let limit = (k - 1) * (k - 1) + 1;
        for _ in 0..limit {
            if reach.iter().all(|&m| m == full) {
                return true;
            }
            reach = reach
                .iter()
                .map(|&m| (0..k).filter(|b| m >> b & 1 == 1).fold(0u64, |acc, b| acc | step[b]))
                .collect();
        }
        reach.iter().all(|&m| m == full)
    }

    /// Closure of the two-letter factors: those inside some image `σ(a)`,
    /// plus the junctions of `σ(a)σ(b)` for every factor `ab` already found.
    fn two_letter_factors(&self) -> Vec<[Symbol; 2]> {
        let mut pairs: BTreeSet<[Symbol; 2]> = BTreeSet::new();
        for r in &self.rules {
            pairs.extend(r.windows(2).map(|x| [x[0], x[1]]));
        }
        loop {
            let junctions: Vec<[Symbol; 2]> = pairs
                .iter()
                .map(|&[a, b]| {
                    let left = &self.rules[a as usize - 1];
                    [*left.last().unwrap(), self.rules[b as usize - 1][0]]
                })
                .collect();
            let before = pairs.len();
            pairs.extend(junctions);
            if pairs.len() == before {
                break;
            }
        }
        // letters can only pair up through images longer than one letter;
        // primitive & growing guarantees at least one such image exists
        debug_assert!(!pairs.is_empty());
        pairs.into_iter().collect()
    }

    /// Every length-`n` factor lies inside `σ^m(ab)` for some two-letter
    /// factor `ab` once every `σ^m(c)` has length `≥ n - 1`.
    fn factors(&self, n: usize) -> Vec<Word> {
        let mut images: Vec<Word> = (1..=self.rules.len() as Symbol).map(|a| vec![a]).collect();
        while images.iter().map(Vec::len).min().unwrap() + 1 < n {
            images = images.iter().map(|img| self.image(img)).collect();
        }
        let mut out: BTreeSet<Word> = BTreeSet::new();
        for &[a, b] in &self.pairs {
            let mut block = images[a as usize - 1].clone();
            block.extend_from_slice(&images[b as usize - 1]);
            out.extend(block.windows(n).map(<[Symbol]>::to_vec));
        }
        out.into_iter().collect()
    }
}

/// Smallest `d` dividing `|u|` with `u = (u[..d])^(|u|/d)`.
pub fn minimal_period(word: &[Symbol]) -> usize {
    let len = word.len();
    (1..=len)
        .find(|&d| len.is_multiple_of(d) && (d..len).all(|i| word[i] == word[i - d]))
        .unwrap_or(len)
}

/// Offsets `i` of the cyclic word at which `f` occurs.
fn periodic_offsets<'a>(word: &'a [Symbol], f: &'a [Symbol]) -> impl Iterator<Item = usize> + 'a {
    let p = word.len();
    (0..p).filter(move |&i| f.iter().enumerate().all(|(j, &c)| word[(i + j) % p] == c))
}

fn all_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=k as Symbol).map(move |a| {
                    let mut next = prefix.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// Natural log of an arbitrarily large positive integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(x).unwrap().ln();
    }
    let shift = bits - 64;
    let top = num_traits::ToPrimitive::to_f64(&(x >> shift)).unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
