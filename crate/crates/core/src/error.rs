use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("large-gap regime requires m >= 10 and n >= 4m (got m = {m}, n = {n})")]
    Regime { m: usize, n: usize },
    #[error("argument outside its domain: {0}")]
    Domain(String),
    #[error("degenerate triangular system: g(0) = 0")]
    Degenerate,
    #[error("instance too large for exhaustive enumeration: n = {n} exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("refusing to decide: additive bound {bound} at order {order} exceeds ln 1.1")]
    Refused { order: usize, bound: f64 },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
