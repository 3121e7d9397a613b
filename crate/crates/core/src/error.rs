use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operands belong to different polynomial rings")]
    RingMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no real embedding: {0}")]
    NoEmbedding(String),
    #[error("element is not real")]
    NonReal,
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("inexact division, remainder {0}")]
    InexactDivision(String),
    #[error("coefficient not rational: {0}")]
    NotRational(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("tower has no generator i with i^2 + 1 = 0")]
    NoImaginaryUnit,
    #[error("point is not on the variety")]
    NotOnVariety,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
