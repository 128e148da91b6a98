//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands live over different rings or variable counts")]
    RingMismatch,
    #[error("polynomial is not divisible by the given linear form")]
    NotDivisible,
    #[error("no canonical ring map between the given rings")]
    NoCanonicalMap,
    #[error("unknown preset group `{0}`")]
    UnknownPreset(String),
    #[error("invalid Cartan data: {0}")]
    InvalidCartanData(String),
    #[error("reflection group is not finite (closure exceeded safety bound)")]
    GroupNotFinite,
    #[error("elements are not comparable in Bruhat order")]
    NotBruhatComparable,
    #[error("torsion index {0} is not invertible in the coefficient ring")]
    TorsionNotInvertible(u64),
    #[error("Schubert basis expansion failed: {0}")]
    ExpansionFailed(String),
    #[error("operation requires a type A (unitary) root datum")]
    NotTypeA,
    #[error("unsupported coefficient ring for this operation: {0}")]
    UnsupportedRing(String),
    #[error("ideal membership undecidable: {0}")]
    MembershipUndecidable(String),
    #[error("subgroup does not belong to the given root datum")]
    RankDeficientSubgroup,
    #[error("no preset invariant generators known: {0}")]
    UnknownInvariantGenerators(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
