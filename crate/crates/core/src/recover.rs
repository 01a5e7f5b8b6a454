//! Detect-then-interpolate recovery, its cost accounting and the predicted
//! cost bounds.

use rayon::prelude::*;

use crate::detectors::{find_nonzero_above, Detector, DetectorOptions, DetectorParams};
use crate::error::{usage, Error, Result};
use crate::interpolation::{choose_m, reconstruct, reconstruction_constant, Anchor, Approximant};
use crate::model::{
    random_function, sample_above, stream_rng, sup_error_estimate, CountingOracle, FactorKind,
    Oracle, RankOneFunction, Regime, SmoothnessClass,
};
use crate::pointsets::{PointSet, PointsetMode};

/// Default grid budget for the error estimate.
pub const ESTIMATE_BUDGET: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecoveryConfig {
    /// Constant in the reconstruction budget `m`.
    pub c1: f64,
    /// Detector construction to use instead of the class's own regime.
    pub regime: Option<Regime>,
    pub detector: DetectorOptions,
    /// Zero test threshold; `0` means an exact test.
    pub threshold: f64,
}

impl Default for RecoveryConfig {
    fn default() -> Self {
        RecoveryConfig {
            c1: 1.0,
            regime: None,
            detector: DetectorOptions::default(),
            threshold: 0.0,
        }
    }
}

impl RecoveryConfig {
    pub fn with_mode(mode: PointsetMode) -> Self {
        RecoveryConfig {
            detector: DetectorOptions::with_mode(mode),
            ..Default::default()
        }
    }
}

/// Oracle calls spent by one recovery.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostReport {
    pub regime: Regime,
    pub detector_size: usize,
    pub m: usize,
    pub detector_evals: u64,
    pub interpolation_evals: u64,
    pub total: u64,
    pub predicted_bound: f64,
}

impl CostReport {
    /// `|P| + m`, the cost when the detector is scanned to the end.
    pub fn worst_case(&self) -> u64 {
        self.detector_size as u64 + self.m as u64
    }
}

/// A prepared recovery algorithm: a detector and a reconstruction budget.
#[derive(Clone, Debug)]
pub struct Recovery {
    class: SmoothnessClass,
    eps: f64,
    config: RecoveryConfig,
    regime: Regime,
    points: PointSet,
    m: usize,
    bound: f64,
}

impl Recovery {
    pub fn new(class: &SmoothnessClass, eps: f64, config: &RecoveryConfig) -> Result<Self> {
        let det = Detector::build(class, eps, config.regime, &config.detector)?;
        Recovery::with_points(class, eps, config, det.params.regime, det.points)
    }

    /// Uses `points` in place of the constructed detector.
    pub fn with_points(
        class: &SmoothnessClass,
        eps: f64,
        config: &RecoveryConfig,
        regime: Regime,
        points: PointSet,
    ) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return usage(format!("eps must lie in (0, 1), got {eps}"));
        }
        if !(config.c1 > 0.0) {
            return usage(format!("c1 must be positive, got {}", config.c1));
        }
        if points.d() != class.d() {
            return usage("detector dimension does not match the class");
        }
        Ok(Recovery {
            class: *class,
            eps,
            config: *config,
            regime,
            bound: cost_bound_for(class, eps, config.c1, regime, config.detector.delta)?,
            m: choose_m(class, eps, config.c1),
            points,
        })
    }

    pub fn class(&self) -> &SmoothnessClass {
        &self.class
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// Scans the detector; on a non-zero reconstructs from fibers through
    /// it, otherwise returns the zero function.
    pub fn run<O: Oracle + ?Sized>(&self, f: &O) -> Result<(Approximant, CostReport)> {
        let d = self.class.d();
        if f.dim() != d {
            return usage(format!(
                "oracle dimension {} does not match d = {d}",
                f.dim()
            ));
        }
        let counter = CountingOracle::new(f);
        let search = find_nonzero_above(&self.points, &counter, self.config.threshold)?;
        let detector_evals = counter.calls();
        debug_assert_eq!(detector_evals, search.evaluations);
        let approx = match search.hit {
            Some((index, value)) => {
                let anchor = Anchor {
                    point: self.points.point(index).to_vec(),
                    value,
                };
                reconstruct(&counter, &anchor, &self.class, self.m)?
            }
            None => Approximant::zero(d),
        };
        let total = counter.calls();
        let report = CostReport {
            regime: self.regime,
            detector_size: self.points.len(),
            m: self.m,
            detector_evals,
            interpolation_evals: total
                .checked_sub(detector_evals)
                .ok_or_else(|| Error::Numeric("oracle call counter went backwards".into()))?,
            total,
            predicted_bound: self.bound,
        };
        Ok((approx, report))
    }
}

/// Builds the detector for `class` and runs the recovery once.
pub fn approximate<O: Oracle + ?Sized>(
    f: &O,
    class: &SmoothnessClass,
    eps: f64,
    config: &RecoveryConfig,
) -> Result<(Approximant, CostReport)> {
    Recovery::new(class, eps, config)?.run(f)
}

/// Predicted cost for the class's own regime.
pub fn cost_bound(class: &SmoothnessClass, eps: f64, c1: f64) -> Result<f64> {
    cost_bound_for(class, eps, c1, class.regime(), None)
}

/// Predicted cost of the `regime` construction:
///
/// * large: `(2^8 rho + C)^d eps^(-1/r)`
/// * moderate: `(2r + C) exp(c3 (1 + ln 1/eps)(1 + ln d))` with
///   `c3 = ln(2^7 rho)(1 + 1/ln(1/C_delta))`
/// * small: `(85 r + C) d^2 eps^(-1/r) max(1, ln eps^(-1/r))`
///
/// where `C = 4 max(1, c1 M)^(1/r)`. The moderate bound overflows `f64`
/// for `M` near `2^r r!`; [`ln_cost_bound_for`] stays finite.
pub fn cost_bound_for(
    class: &SmoothnessClass,
    eps: f64,
    c1: f64,
    regime: Regime,
    delta: Option<f64>,
) -> Result<f64> {
    if regime == Regime::Moderate {
        return Ok(ln_cost_bound_for(class, eps, c1, regime, delta)?.exp());
    }
    let params = DetectorParams::new(class, eps, regime, delta)?;
    let c = reconstruction_constant(class, c1);
    let (r, d) = (class.r() as f64, class.d() as f64);
    let inv_root = eps.powf(-1.0 / r);
    Ok(match regime {
        Regime::Large => (256.0 * params.rho + c).powf(d) * inv_root,
        _ => (85.0 * r + c) * d * d * inv_root * inv_root.ln().max(1.0),
    })
}

/// Natural logarithm of [`cost_bound_for`].
pub fn ln_cost_bound_for(
    class: &SmoothnessClass,
    eps: f64,
    c1: f64,
    regime: Regime,
    delta: Option<f64>,
) -> Result<f64> {
    let params = DetectorParams::new(class, eps, regime, delta)?;
    let c = reconstruction_constant(class, c1);
    let (r, d) = (class.r() as f64, class.d() as f64);
    let ln_inv_root = -eps.ln() / r;
    Ok(match regime {
        Regime::Large => d * (256.0 * params.rho + c).ln() + ln_inv_root,
        Regime::Moderate => {
            let c2 = 2.0 * r + c;
            c2.ln() + moderate_c3(&params) * (1.0 - eps.ln()) * (1.0 + d.ln())
        }
        Regime::Small => {
            (85.0 * r + c).ln() + 2.0 * d.ln() + ln_inv_root + ln_inv_root.max(1.0).ln()
        }
    })
}

/// `c3 = ln(2^7 rho)(1 + 1/ln(1/C_delta))`.
pub fn moderate_c3(params: &DetectorParams) -> f64 {
    let cd = params.c_delta.unwrap_or(f64::NAN);
    (128.0 * params.rho).ln() * (1.0 + 1.0 / (1.0 / cd).ln())
}

/// Which functions a cost/error experiment feeds to the algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestFunctions {
    /// Random members, redrawn until the norm exceeds `eps` where possible.
    Random(FactorKind),
    /// The zero function.
    Zero,
}

/// The function of trial `trial`, drawn from the stream `(seed, trial)`.
pub fn trial_function(
    class: &SmoothnessClass,
    eps: f64,
    source: TestFunctions,
    seed: u64,
    trial: u64,
) -> RankOneFunction {
    match source {
        TestFunctions::Zero => RankOneFunction::constant(0.0, class.d(), class.r())
            .expect("constant factors are valid"),
        TestFunctions::Random(kind) => sample_above(class, eps, kind, seed, &[trial])
            .unwrap_or_else(|| {
                random_function(class, kind, &mut stream_rng(seed, &[trial, u64::MAX]))
            }),
    }
}

/// One trial of a cost/error experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct CostRow {
    pub trial: u64,
    pub regime: Regime,
    pub d: usize,
    pub eps: f64,
    pub norm: f64,
    pub cost: CostReport,
    pub measured_error: f64,
    /// The detector missed a function with norm above `eps`.
    pub detector_missed: bool,
    pub pass: bool,
}

/// Runs `trials` recoveries and measures each error with the grid
/// estimator. A row passes when the error is at most `eps`, the cost is at
/// most `|P| + m`, no function above `eps` was missed, and, for formula-mode
/// detectors, the cost is at most the predicted bound.
pub fn cost_actual_vs_bound(
    recovery: &Recovery,
    trials: u64,
    seed: u64,
    source: TestFunctions,
    estimate_budget: u64,
) -> Result<Vec<CostRow>> {
    if trials == 0 {
        return usage("at least one trial is required");
    }
    let class = recovery.class();
    let eps = recovery.eps();
    let budget = estimate_budget.max(1 << class.d().min(63));
    let formula = recovery.config.detector.mode == PointsetMode::Formula;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let f = trial_function(class, eps, source, seed, trial);
            let (approx, cost) = recovery.run(&f)?;
            let measured_error = sup_error_estimate(&f, &approx, budget)?;
            let norm = f.sup_norm();
            let detector_missed = approx.is_zero() && norm > eps;
            let pass = measured_error <= eps
                && cost.total <= cost.worst_case()
                && !detector_missed
                && (!formula || cost.total as f64 <= cost.predicted_bound);
            Ok(CostRow {
                trial,
                regime: cost.regime,
                d: class.d(),
                eps,
                norm,
                cost,
                measured_error,
                detector_missed,
                pass,
            })
        })
        .collect()
}
