use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} is outside its domain (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (best estimate {estimate}, error bound {error_bound})"
    )]
    QuadratureNonConvergence {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    #[error("optimizer hit the iteration limit ({iterations}) at {best_x:?} with f = {best_f}")]
    MaxIterations {
        iterations: usize,
        best_x: Vec<f64>,
        best_f: f64,
    },

    #[error("objective is not finite at {point:?}")]
    NonFinite { point: Vec<f64> },

    #[error("value {value} at index {index} is outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },

    #[error("cannot parse {token:?} at line {line}, column {column}")]
    Parse {
        line: usize,
        column: usize,
        token: String,
    },

    #[error("dataset contains no observations")]
    EmptyDataset,

    #[error("unknown embedded dataset {0:?}")]
    UnknownDataset(String),

    #[error("information for {parameter} is singular at the boundary of the parameter space")]
    SingularInformation { parameter: &'static str },

    #[error("{model} needs at least {needed} interior observations, found {found}")]
    InsufficientData {
        model: &'static str,
        needed: usize,
        found: usize,
    },

    #[error(
        "{parameter} optimum sits at the search bracket edge {edge}; \
         extend the search range"
    )]
    BracketEdge { parameter: &'static str, edge: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
