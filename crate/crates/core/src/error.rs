use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("dataset is empty: {0}")]
    EmptyDataset(String),

    #[error("unknown pair ({0}, {1})")]
    UnknownPair(usize, usize),

    #[error("unknown item label {0:?}")]
    UnknownItem(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("split with fraction {fraction} of {pairs} pairs leaves an empty half")]
    EmptySplit { fraction: f64, pairs: usize },

    #[error("Markov chain is reducible: {count} strongly connected components (sizes {sizes:?}, first members {heads:?})")]
    Reducible {
        count: usize,
        sizes: Vec<usize>,
        heads: Vec<String>,
    },

    #[error("power iteration did not converge in {iterations} iterations (L1 change {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("comparison graph stayed disconnected after {attempts} resampling attempts")]
    Disconnected { attempts: usize },

    #[error("predicted probability {0} is outside the open interval (0, 1)")]
    DegenerateProbability(f64),

    #[error("infinite divergence: target {p} > 0 but predicted 0 at pair {index}")]
    InfiniteDivergence { index: usize, p: f64 },

    #[error("no target for pair ({0}, {1})")]
    MissingTarget(usize, usize),

    #[error("every test pair is a vote tie; accuracy undefined")]
    AllTied,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
