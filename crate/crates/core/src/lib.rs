//! Distribution families characterized by equalities in law between order
//! statistics shifted by independent exponential variables.
//!
//! The crate provides three quantile-defined families, closed-form
//! order-statistic kernels, Monte Carlo simulation of both sides of each
//! characterizing relation with a two-sample Kolmogorov-Smirnov test, and
//! deterministic verifiers (ODE residual, convolution identity by quadrature,
//! closed-form special cases).

pub mod cli;
mod error;
pub mod family;
pub mod montecarlo;
pub mod orderstats;
pub mod verifier;

pub use error::{Error, Result};
pub use family::{
    AdjacentShiftFamily, Family, PowerMaxFamily, QuantileModel, ShiftPair, Support,
    TwoSpacingFamily, WConstant,
};
pub use montecarlo::{KsReport, RandomStream, RelationKind, RelationSpec};
pub use orderstats::RankSpec;
pub use verifier::ResidualReport;
