//! The function class: factors, rank-one products, evaluation oracles,
//! generators of certified members and the sup-norm error estimator.

pub mod class;
pub mod estimate;
pub mod factor;
pub mod function;
pub mod generate;
pub mod piecewise;

pub use class::{factorial, Regime, SmoothnessClass, Tractability};
pub use estimate::sup_error_estimate;
pub use factor::UnivariateFactor;
pub use function::{CountingOracle, FnOracle, Oracle, RankOneFunction};
pub use generate::{
    factor_with_roots, random_factor, random_factor_of_kind, random_function, sample_above,
    stream_rng, FactorKind,
};
pub use piecewise::{PiecewisePoly, ZeroSet};
