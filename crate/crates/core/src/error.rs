use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("{0}")]
    Invalid(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("not a Hopf ideal: {0}")]
    HopfIdeal(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
