//! Recovery of rank-one tensors with finite smoothness from point
//! evaluations: detectors, reconstruction, cost accounting and the
//! adversarial constructions behind the lower bounds.

pub mod adversary;
pub mod combin;
pub mod detectors;
pub mod error;
pub mod interpolation;
pub mod lemmas;
pub mod model;
pub mod pointsets;
pub mod poly;
pub mod recover;

pub use error::{Error, Result};
pub use interpolation::{choose_m, reconstruct, Anchor, Approximant};
pub use model::{
    factorial, sup_error_estimate, FactorKind, Oracle, RankOneFunction, Regime, SmoothnessClass,
    Tractability, UnivariateFactor,
};
pub use pointsets::{PointSet, PointsetMode};
pub use poly::Poly;
pub use recover::{approximate, cost_bound, CostReport, Recovery, RecoveryConfig};
