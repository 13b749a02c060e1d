//! Selector between the literal transcription of a formula and its
//! numerically verified correction.

/// Which reading of a displayed formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Reading {
    /// The formula exactly as transcribed, including any misprint.
    AsPrinted,
    /// The corrected formula that holds to working precision.
    #[default]
    Corrected,
}

impl Reading {
    pub fn is_printed(self) -> bool {
        matches!(self, Self::AsPrinted)
    }
}
