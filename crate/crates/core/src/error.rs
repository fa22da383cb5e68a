use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the function.
    #[error("{name} = {value} is outside the valid domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: estimate {estimate} with error {abs_error}")]
    Accuracy { estimate: f64, abs_error: f64 },

    /// The sample cannot identify location and scale.
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// An iterative method failed where convergence was expected.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// A study configuration violates its invariants.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        expected,
    }
}
