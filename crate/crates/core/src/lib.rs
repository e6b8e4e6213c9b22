//! S-gap and (S,w)-gap shift spaces.
//!
//! A point of `X_w(S)` looks like `… 0 u₋₁ 0 u₀ 0 u₁ 0 …` where every gap
//! `uᵢ` is a factor of a fixed bi-infinite word `w ∈ {1..k}^ℤ` with
//! `|uᵢ| ∈ S`. With `w = 1^∞` this is the classical S-gap shift.
//!
//! The crate is organized around the finite data that describe such a shift:
//!
//! - [`GapSet`] and [`FactorSource`] describe `S` and the factor language of `w`;
//!   [`ShiftSpec`] pairs them.
//! - [`language`] decides membership of finite words, counts `|B_n|` exactly and
//!   builds the joining words that witness irreducibility.
//! - [`entropy`] encloses the root of `1 = Σ_{n∈S} φ_w(n) λ^{-(n+1)}`, whose log is
//!   the topological entropy.
//! - [`dynamics`] decides mixing, checks synchronization and samples the gap
//!   process of the measure of maximal entropy.
//! - [`spec_file`] and [`cli`] are the JSON/CSV batch front-end behind the
//!   `gapshift` binary.

pub mod cli;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod factor;
pub mod gapset;
pub mod language;
pub mod shift;
pub mod spec_file;
pub mod word;

pub use error::{Error, Result};
pub use factor::{FactorSource, FactorSourceKind};
pub use gapset::{GapSet, GapSetKind, Progression};
pub use shift::ShiftSpec;
pub use word::{format_word, parse_word, Symbol, Word, MARKER};
