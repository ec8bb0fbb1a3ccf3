use thiserror::Error;

use crate::cubillage::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground-set sizes differ ({left} vs {right})")]
    GroundSetMismatch { left: usize, right: usize },

    #[error("ground-set size {0} is outside 1..={max}", max = crate::MAX_GROUND)]
    GroundSetTooLarge(usize),

    #[error("element {element} is not in the ground set [{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("dimension d={d} is out of range for n={n}")]
    DimensionOutOfRange { n: usize, d: usize },

    #[error("{what} exceeds the audit cap ({detail}); raise it with ZONOFORGE_AUDIT_CAP")]
    AuditTooLarge { what: String, detail: String },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("spectrum has {found} sets, expected {expected}")]
    SpectrumSizeMismatch { found: usize, expected: usize },

    #[error("collection has {found} sets, a cubillage spectrum needs {expected}")]
    NotMaxSize { found: usize, expected: usize },

    #[error("collection is not {r}-separated: {a} and {b}")]
    NotSeparated { r: usize, a: String, b: String },

    #[error("no cube of type {0} fits the spectrum")]
    NoCubeForType(String),

    #[error("several cubes of type {0} fit the spectrum")]
    AmbiguousCube(String),

    #[error("cannot contract: n = d = {0}")]
    GroundTooSmall(usize),

    #[error("membrane does not belong to the cubillage: {0}")]
    MembraneMismatch(String),

    #[error("order ideal produced an invalid membrane: {0}")]
    MembraneValidationFailed(String),

    #[error("precedence relation has a cycle through type {0}")]
    CyclicPrecedence(String),

    #[error("packet of {0} is not totally ordered")]
    NotTotallyOrdered(String),

    #[error("inversion sets are not nested")]
    NotNested,

    #[error("invalid cubillage: {0}")]
    InvalidCubillage(Diagnostic),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True when the error signals a broken library invariant rather than bad
    /// input. Callers should treat these as bug reports.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::AmbiguousCube(_)
                | Error::MembraneValidationFailed(_)
                | Error::CyclicPrecedence(_)
                | Error::NotTotallyOrdered(_)
                | Error::Invariant(_)
        )
    }
}
