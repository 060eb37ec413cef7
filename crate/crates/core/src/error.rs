use thiserror::Error;

use crate::ring::Bead;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters n={n}, d={d}: need n >= 2 and d >= 0")]
    InvalidParams { n: i64, d: i64 },
    #[error("invalid bead B_{l}({i}): type must lie in 1..={n}")]
    InvalidBead { l: i64, i: i64, n: u32 },
    #[error("invalid circlet index {i}: must lie in 0..{half}")]
    InvalidCirclet { i: i64, half: u32 },
    #[error("type {l} is not the circlet type for n={n}")]
    NotCircletType { l: u32, n: u32 },
    #[error("arrangement needs {expected} beads, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("beads {0:?} and {1:?} overlap")]
    Overlap(Bead, Bead),
    #[error("more than one circlet")]
    TwoCirclets,
    #[error("bead type {l} exceeds the reduced bound {max}")]
    NotReduced { l: u32, max: u32 },
    #[error("bead at index {index} has height {height}, expected height 1")]
    NotHeightOne { index: usize, height: usize },
    #[error("index {index} out of range for {len} entries")]
    Index { index: usize, len: usize },
    #[error("arrangement is not right-justified")]
    NotRightJustified,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("vertex {0} is not a child of the root")]
    NotRootChild(usize),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("no collision of the requested kind between {0:?} and {1:?}")]
    NoCollision(Bead, Bead),
    #[error("state-space cap of {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("arithmetic overflow in exact count")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
