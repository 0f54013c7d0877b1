use thiserror::Error;

/// Errors shared by the geometry constructors, simulators and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The block count does not divide the database size.
    #[error("K must divide N (got N={n}, K={k})")]
    NonDivisible { n: u64, k: u64 },

    /// A size parameter is below the smallest meaningful value.
    #[error("{what} must be at least {min} (got {got})")]
    TooSmall {
        what: &'static str,
        min: u64,
        got: u64,
    },

    /// A target index falls outside the database.
    #[error("target index {index} is out of range for N={n}")]
    IndexOutOfRange { index: u64, n: u64 },

    /// A constraint has no root on the admissible interval.
    #[error("no admissible root found for {context}")]
    NoRoot { context: &'static str },
}
