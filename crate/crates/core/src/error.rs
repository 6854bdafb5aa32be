use thiserror::Error;

use crate::scalar::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coefficient s_{index} is not homogeneous of degree {index}")]
    NotHomogeneous { index: usize },
    #[error("RankDeficient")]
    RankDeficient,
    #[error("Inconsistent")]
    Inconsistent,
    /// 1-based indices of the first non-commuting component pair.
    #[error("NotHiggs({0},{1})")]
    NotHiggs(usize, usize),
    #[error("CharTooSmall(p={p}, r={r})")]
    CharTooSmall { p: u64, r: usize },
    #[error("ZeroPoint")]
    ZeroPoint,
    #[error("BoundExceeded({candidates} candidates > {bound})")]
    BoundExceeded { candidates: u128, bound: u128 },
    #[error("operation requires a prime field")]
    RequiresPrimeField,
    #[error("NotInvertible")]
    NotInvertible,
    #[error("OrderBoundExceeded({0})")]
    OrderBoundExceeded(usize),
    #[error("NotSplitOverField")]
    NotSplitOverField,
    #[error("NotInvariant")]
    NotInvariant,
    #[error("NotTransitive({0} orbits)")]
    NotTransitive(usize),
    #[error("RepeatedRoots")]
    RepeatedRoots,
    #[error("NoCombination")]
    NoCombination,
    #[error("UnknownSuite({0})")]
    UnknownSuite(String),
    #[error("Inconclusive")]
    Inconclusive,
    #[error("invalid torus action: {0}")]
    InvalidAction(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub(crate) fn check_field(a: Field, b: Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a, b))
    }
}
