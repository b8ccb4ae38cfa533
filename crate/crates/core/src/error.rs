use thiserror::Error;

use crate::plane::GeneralPositionWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("number of blown-up points r = {r} outside the supported range {min}..={max}")]
    PointCountOutOfRange { r: usize, min: usize, max: usize },

    #[error("divisor classes live on different surfaces (r = {left} and r = {right})")]
    RankMismatch { left: usize, right: usize },

    #[error("no ({n})-rulings are enumerated for r = {r}")]
    UnsupportedRuling { r: usize, n: u8 },

    #[error("class {0} is not nef")]
    NotNef(String),

    #[error("expected a {expected}-dimensional solution space for {what}, found {found}")]
    KernelDimension {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("product forms of ruling {class} span dimension {found}, expected {expected}")]
    RulingRank {
        class: String,
        expected: usize,
        found: usize,
    },

    #[error("points are not in general position: {0}")]
    GeneralPosition(GeneralPositionWitness),

    #[error("vector has length {found}, expected {expected}")]
    IndexMismatch { expected: usize, found: usize },

    #[error("no value for generator {0}")]
    MissingValue(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no relation determines {0}")]
    Undetermined(String),

    #[error("out of desk scale: {0}")]
    OutOfDeskScale(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
