//! Zero-and-one inflated unit-Lindley (ULINF) modeling: the distribution,
//! closed-form maximum likelihood with Wald intervals, inflated beta and
//! Kumaraswamy competitors, AIC/BIC comparison and a Monte Carlo study
//! engine.

// Quadrature and series constants are kept as tabulated; `!(x > 0.0)`
// guards deliberately reject NaN.
#![allow(
    clippy::excessive_precision,
    clippy::needless_range_loop,
    clippy::neg_cmp_op_on_partial_ord
)]

pub mod cli;
pub mod competitors;
pub mod data_io;
pub mod error;
pub mod inference;
pub mod inflated_mixture;
pub mod model_selection;
pub mod optimizer;
pub mod simulation;
pub mod special_fn;
pub mod unit_lindley;

pub use error::{Error, Result};
pub use inference::{fit_ulinf, mle, partition, FitResult, Model, PartitionedSample, UlinfEstimate};
pub use inflated_mixture::{SamplingMode, Ulinf, UlinfParams, UlinfPoint};
pub use unit_lindley::UnitLindley;
