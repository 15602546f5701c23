use thiserror::Error;

use crate::defaults::KbError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("masses sum to {0}, expected 1")]
    MassSumNotOne(String),
    #[error("negative mass {0}")]
    NegativeMass(String),
    #[error("mass {0} exceeds 1")]
    MassAboveOne(String),
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("sets or structures belong to different frames")]
    FrameMismatch,
    #[error("the empty set carries mass in a structure not flagged subnormal")]
    EmptyFocalInNormal,
    #[error("frame has {atoms} atoms, at most {max} supported for this operation")]
    FrameTooLarge { atoms: usize, max: usize },
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("operation requires a normal belief structure")]
    SubnormalInput,
    #[error("total conflict (K = 1)")]
    TotalConflict,
    #[error("total conflict (K = 1) at statement on line {line}{}", with_line.map(|l| format!(" against line {l}")).unwrap_or_default())]
    StatementConflict { line: usize, with_line: Option<usize> },
    #[error("target set is empty")]
    EmptyTarget,
    #[error("no structures to combine")]
    EmptyInput,
    #[error("structure is not of the typical form {{B: a, X: 1-a}}")]
    NotTypicalForm,
    #[error("hedged strength {to} exceeds the original strength {from}")]
    StrengthIncrease { from: String, to: String },
    #[error("unknown combination rule `{0}`")]
    UnknownRule(String),
    #[error("grid value {0} lies outside [0, 1]")]
    GridOutOfRange(String),
    #[error("invalid belief-structure document: {0}")]
    Document(String),
    #[error(transparent)]
    Kb(#[from] KbError),
}

impl Error {
    /// Short stable name of the error class, used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MassSumNotOne(_) => "mass-sum-not-one",
            Error::NegativeMass(_) => "negative-mass",
            Error::MassAboveOne(_) => "mass-above-one",
            Error::InvalidNumber(_) => "invalid-number",
            Error::FrameMismatch => "frame-mismatch",
            Error::EmptyFocalInNormal => "empty-focal-in-normal",
            Error::FrameTooLarge { .. } => "frame-too-large",
            Error::InvalidFrame(_) => "invalid-frame",
            Error::UnknownAtom(_) => "unknown-atom",
            Error::SubnormalInput => "subnormal-input",
            Error::TotalConflict | Error::StatementConflict { .. } => "total-conflict",
            Error::EmptyTarget => "empty-target",
            Error::EmptyInput => "empty-input",
            Error::NotTypicalForm => "not-typical-form",
            Error::StrengthIncrease { .. } => "strength-increase",
            Error::UnknownRule(_) => "unknown-rule",
            Error::GridOutOfRange(_) => "grid-out-of-range",
            Error::Document(_) => "document",
            Error::Kb(e) => e.kind.name(),
        }
    }

    /// Errors about the reasoning itself rather than malformed input.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::FrameMismatch
                | Error::FrameTooLarge { .. }
                | Error::SubnormalInput
                | Error::TotalConflict
                | Error::StatementConflict { .. }
                | Error::EmptyTarget
                | Error::NotTypicalForm
                | Error::StrengthIncrease { .. }
        )
    }
}
