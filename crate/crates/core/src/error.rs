use thiserror::Error;

use crate::geometry::RectId;

/// Errors produced by the library. Each variant names the contract that was broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("coordinate tie between rectangles {0} and {1}")]
    Tie(RectId, RectId),
    #[error("family is not in general position")]
    GeneralPosition,
    #[error("family lacks required trait: {0}")]
    Trait(String),
    #[error("no semi-online algorithm exists for {config} presented {direction}")]
    NoAlgorithm { config: String, direction: String },
    #[error("no {0}-element monotone configuration found")]
    NotFound(usize),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("presentation order error: {0}")]
    Order(String),
    #[error("parameter error: {0}")]
    Param(String),
    #[error("not a hitting set: {0} cell(s) unhit")]
    NotAHittingSet(usize),
    #[error("dynamic colouring invariant broken: {0}")]
    InvariantBroken(String),
    #[error("disappear event on an empty point set")]
    EmptyDisappear,
    #[error("hitting-set constructor failed: {0}")]
    ConstructorFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
