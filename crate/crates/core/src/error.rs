use thiserror::Error;

use crate::graph::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid fuzzy graph: {}", format_violations(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("scale factor {0} outside (0, 1]")]
    ScaleOutOfRange(f64),

    #[error("alpha = {0} rejected, general Sombor index needs alpha >= 1")]
    AlphaOutOfRange(f64),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("{what}: n = {n} outside supported range {min}..={max}")]
    OrderOutOfRange {
        what: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("infeasible membership slice: {0}")]
    Infeasible(String),

    #[error("invalid task: {0}")]
    InvalidTask(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
