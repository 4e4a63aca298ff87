use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ground-set size {0} is outside the supported range 1..=63")]
    GroundSetOutOfRange(u32),

    #[error("layer index {k} out of range for ground set of size {n}")]
    LayerOutOfRange { n: u32, k: u32 },

    #[error("mask {mask:#x} has bits outside the ground set [{n}]")]
    MaskOutsideGroundSet { n: u32, mask: u64 },

    #[error("ground-set mismatch: expected [{expected}], found [{found}]")]
    GroundSetMismatch { expected: u32, found: u32 },

    #[error("family must be non-empty")]
    EmptyFamily,

    #[error("family is not contained in layer {k}: member {member:#x} has cardinality {card}")]
    NotInLayer { k: u32, member: u64, card: u32 },

    #[error("family is not an antichain: {x:#x} is strictly contained in {y:#x}")]
    NotAntichain { x: u64, y: u64 },

    #[error("family is not a distance-{required} code: {x:#x} and {y:#x} are at distance {found}")]
    DistanceTooSmall {
        required: u32,
        found: u32,
        x: u64,
        y: u64,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("enumeration for n = {n} exceeds the supported ceiling n <= {max}")]
    EnumerationTooLarge { n: u32, max: u32 },

    #[error("family of {size} members exceeds the materialization cap of {cap}")]
    FamilyTooLarge { size: u128, cap: u64 },

    #[error("weight {index} is zero")]
    ZeroWeight { index: usize },

    #[error("weight {index} is not positive")]
    NonPositiveWeight { index: usize },

    #[error("2r = {two_r} exceeds the cap of 6 for the collision check")]
    HalaszOrderTooLarge { two_r: u32 },

    #[error("collision condition fails at r = {r}: sum over {x:#x} equals sum over {y:#x}")]
    HalaszConditionFails { r: u32, x: u64, y: u64 },

    #[error("search budget of {budget} nodes exhausted before certification")]
    BudgetExhausted { budget: u64 },

    #[error(transparent)]
    Hypothesis(#[from] HypothesisViolation),

    #[error("{0}")]
    InvalidParameter(String),
}

/// A named violation of one of the shadow-expansion lemma's hypotheses.
/// Exactly one name corresponds to each hypothesis so that tests can tell
/// which check tripped.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypothesisViolation {
    #[error("hypothesis r >= 1 fails: r = {r}")]
    RTooSmall { r: u32 },

    #[error("hypothesis n >= 8r fails: n = {n}, r = {r}")]
    NTooSmall { n: u32, r: u32 },

    #[error("hypothesis k >= n/2 + 3r fails: n = {n}, k = {k}, r = {r}")]
    KBelowWindow { n: u32, k: u32, r: u32 },

    #[error("hypothesis k <= 3n/4 fails: n = {n}, k = {k}")]
    KAboveWindow { n: u32, k: u32 },

    #[error("S is not contained in layer {k}: member {member:#x}")]
    SNotInLayer { k: u32, member: u64 },

    #[error("A is not contained in layer {k}: member {member:#x}")]
    ANotInLayer { k: u32, member: u64 },

    #[error("A meets the r-fold shadow of S at {member:#x}")]
    AMeetsShadow { member: u64 },

    #[error("A is not a distance-{required} code: {x:#x} and {y:#x} are at distance {found}")]
    ACodeDistance {
        required: u32,
        found: u32,
        x: u64,
        y: u64,
    },

    #[error("S and A must share the instance ground set [{n}]")]
    GroundSetMismatch { n: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
