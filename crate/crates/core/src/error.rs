use crate::exact::UnitPoly;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial {0} is not admissible (reducible over Q or totally real)")]
    NotAdmissible(UnitPoly),
    #[error("rank-deficient lattice generators")]
    RankDeficient,
    #[error("factoring budget exceeded for {n}: partial factorization {partial:?}, unfactored cofactor {rest}")]
    FactorBudget {
        n: i128,
        partial: Vec<(u64, u32)>,
        rest: u64,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("weight ({0},{1}) is not dominant")]
    NonDominant(i64, i64),
    #[error("character is not Weyl-symmetric")]
    NotWeylSymmetric,
    #[error("matrix determinant is {0}, expected 1")]
    DetNotOne(i128),
    #[error("evaluation at a pole: {0}")]
    Pole(String),
    #[error("search bound overflow: {0}")]
    BoundOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
