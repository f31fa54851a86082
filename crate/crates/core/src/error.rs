use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("n1 = {n1} does not divide n2 = {n2}")]
    PolarizationType { n1: i64, n2: i64 },

    #[error("model/vector mismatch: chi = {chi} != n + rs = {expected}")]
    ChiMismatch { chi: i64, expected: i64 },

    #[error("torsion level too coarse: N = {level} is not a multiple of {required}")]
    LevelTooCoarse { level: u64, required: u64 },

    #[error("enumeration refused: {0}")]
    TooLarge(String),

    #[error("gram mismatch between Mukai vectors")]
    GramMismatch,

    #[error("tensor twist needs an even self-intersection, got c^2 = {0}")]
    OddTwist(i64),

    #[error("isotropic mirror: reflection through a vector with y^2 = 0")]
    IsotropicMirror,

    #[error("below the v^2 >= 6 threshold: v^2 = {0}")]
    BelowThreshold(i64),

    #[error("prime {p} is irrelevant to n = {n}")]
    IrrelevantPrime { p: u64, n: i64 },

    #[error("matrix is not invertible modulo {0}")]
    NotInvertible(u64),

    #[error("q_L undefined at this level: {0}")]
    DegeneratePolarForm(String),

    #[error("odd branch count for a double cover: {0}")]
    OddBranchCount(i64),

    #[error("invalid genus data: {0}")]
    Genus(String),

    #[error("action does not preserve the group: {element} sends {point:?} outside")]
    NotPreserved { element: String, point: Vec<u64> },

    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),

    #[error("character values on different groups")]
    GroupMismatch,

    #[error("middle-cohomology formula proven only for fourfolds: |G| = {0}, expected 81")]
    NotFourfold(usize),

    #[error("twist value is not rational: cyclotomic value {0} does not lift to +-1")]
    IrrationalTwist(i64),

    #[error("invalid anchor: {0}")]
    InvalidAnchor(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
