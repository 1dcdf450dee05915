use thiserror::Error;

/// Errors produced by samplers, analytic helpers, and verification oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("probability {0} must be positive")]
    ProbabilityZero(f64),

    #[error("weight {value} at position {index} is negative")]
    NegativeWeight { index: usize, value: f64 },

    #[error("weights sum to {0}, expected 1 within 1e-9")]
    WeightSum(f64),

    #[error("sample size {m} exceeds population size {n}")]
    SampleSize { m: u64, n: u64 },

    #[error("vertex count {0} must be at least 1")]
    VertexCount(u64),

    #[error("edge count {m} outside [{min}, {max}] for {n} vertices")]
    EdgeCount { n: u64, m: u64, min: u64, max: u64 },

    #[error("mean degree {0} below the tree threshold 2")]
    MeanDegreeRange(f64),

    #[error("pair index {index} outside 1..={size}")]
    PairIndex { index: u64, size: u64 },

    #[error("trajectory invalid: {0}")]
    Trajectory(&'static str),

    #[error("{what} supports n up to {max}, got {n}")]
    OracleScale {
        what: &'static str,
        n: u64,
        max: u64,
    },

    #[error("table has {total} observations for {cells} cells; need at least {min} per cell")]
    Undersampled { total: u64, cells: u64, min: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
