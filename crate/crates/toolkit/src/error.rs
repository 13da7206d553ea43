use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("{field}: {msg}")]
    Invalid { field: String, msg: String },
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("grid: {0}")]
    Grid(#[from] FormatError),

    #[error("cell {cell} seed {seed}: dp1 makespan {dp1} != dp2 makespan {dp2}")]
    Disagreement {
        cell: String,
        seed: u64,
        dp1: u64,
        dp2: u64,
    },

    #[error("cell {cell} seed {seed}: {source}")]
    Solver {
        cell: String,
        seed: u64,
        source: twoflow::Error,
    },
}
