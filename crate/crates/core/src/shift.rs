use crate::factor::FactorSource;
use crate::gapset::GapSet;

/// The pair `(S, w)` defining the shift `X_w(S)` over `{0, 1, ..., k}`.
#[derive(Debug, Clone)]
pub struct ShiftSpec {
    gap_set: GapSet,
    factor_source: FactorSource,
}

impl ShiftSpec {
    pub fn new(gap_set: GapSet, factor_source: FactorSource) -> Self {
        Self { gap_set, factor_source }
    }

    /// The S-gap shift: `w = 1^∞` over `{0, 1}`.
    pub fn s_gap(gap_set: GapSet) -> Self {
        Self::new(gap_set, FactorSource::periodic(vec![1], 1).unwrap())
    }

    pub fn gap_set(&self) -> &GapSet {
        &self.gap_set
    }

    pub fn factor_source(&self) -> &FactorSource {
        &self.factor_source
    }

    /// `k`; the full alphabet is `{0, ..., k}`.
    pub fn alphabet_size(&self) -> usize {
        self.factor_source.alphabet_size()
    }
}
