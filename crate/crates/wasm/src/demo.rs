use rankone::detectors::{formula_detector_size, Detector, DetectorOptions};
use rankone::pointsets::halton_baseline_size;
use rankone::recover::{ln_cost_bound_for, trial_function, TestFunctions};
use rankone::{
    choose_m, sup_error_estimate, Error, FactorKind, Oracle, Recovery, RecoveryConfig, Result,
    SmoothnessClass,
};
use wasm_bindgen::prelude::*;

/// More points than this are not worth drawing.
pub const MAX_DRAWN_POINTS: usize = 200_000;
pub const MAX_DEMO_DIM: usize = 6;
pub const SAMPLES: usize = 201;
const ESTIMATE_BUDGET: u64 = 1 << 12;

#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct DetectorView {
    coords: Vec<f64>,
    regime: String,
    target: f64,
}

#[wasm_bindgen]
impl DetectorView {
    #[wasm_bindgen(getter)]
    pub fn coords(&self) -> Vec<f64> {
        self.coords.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn regime(&self) -> String {
        self.regime.clone()
    }

    /// Dispersion the base set was built for.
    #[wasm_bindgen(getter)]
    pub fn target(&self) -> f64 {
        self.target
    }

    #[wasm_bindgen(getter)]
    pub fn size(&self) -> usize {
        self.coords.len() / 2
    }
}

pub fn detector_2d(r: u32, m: f64, eps: f64) -> Result<DetectorView> {
    let class = SmoothnessClass::new(r, m, 2)?;
    let det = Detector::build(&class, eps, None, &DetectorOptions::default())?;
    if det.points.len() > MAX_DRAWN_POINTS {
        return Err(Error::Resource(format!(
            "{} points is too many to draw",
            det.points.len()
        )));
    }
    Ok(DetectorView {
        coords: det.points.coords().to_vec(),
        regime: det.params.regime.as_str().to_string(),
        target: det.params.target_dispersion,
    })
}

#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct ReconstructionView {
    truth: Vec<f64>,
    approx: Vec<f64>,
    detector_size: usize,
    detector_evals: u64,
    interpolation_evals: u64,
    error: f64,
    norm: f64,
}

#[wasm_bindgen]
impl ReconstructionView {
    /// `f(t, .., t)` at `SAMPLES` equally spaced `t`.
    #[wasm_bindgen(getter)]
    pub fn truth(&self) -> Vec<f64> {
        self.truth.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn approx(&self) -> Vec<f64> {
        self.approx.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn detector_size(&self) -> usize {
        self.detector_size
    }

    #[wasm_bindgen(getter)]
    pub fn detector_evals(&self) -> u64 {
        self.detector_evals
    }

    #[wasm_bindgen(getter)]
    pub fn interpolation_evals(&self) -> u64 {
        self.interpolation_evals
    }

    /// Grid estimate of the sup-norm error.
    #[wasm_bindgen(getter)]
    pub fn error(&self) -> f64 {
        self.error
    }

    #[wasm_bindgen(getter)]
    pub fn norm(&self) -> f64 {
        self.norm
    }
}

fn diagonal<O: Oracle + ?Sized>(f: &O) -> Vec<f64> {
    let d = f.dim();
    (0..SAMPLES)
        .map(|i| f.eval(&vec![i as f64 / (SAMPLES - 1) as f64; d]))
        .collect()
}

pub fn reconstruct(r: u32, m: f64, d: usize, eps: f64, seed: u64) -> Result<ReconstructionView> {
    if d > MAX_DEMO_DIM {
        return Err(Error::Resource(format!(
            "the demo runs up to d = {MAX_DEMO_DIM}"
        )));
    }
    let class = SmoothnessClass::new(r, m, d)?;
    let recovery = Recovery::new(&class, eps, &RecoveryConfig::default())?;
    let f = trial_function(
        &class,
        eps,
        TestFunctions::Random(FactorKind::Mixed),
        seed,
        0,
    );
    let (a, cost) = recovery.run(&f)?;
    Ok(ReconstructionView {
        truth: diagonal(&f),
        approx: diagonal(&a),
        detector_size: cost.detector_size,
        detector_evals: cost.detector_evals,
        interpolation_evals: cost.interpolation_evals,
        error: sup_error_estimate(&f, &a, ESTIMATE_BUDGET)?,
        norm: f.sup_norm(),
    })
}

#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct CostCurves {
    bound: Vec<f64>,
    worst_case: Vec<f64>,
    halton: Vec<f64>,
}

#[wasm_bindgen]
impl CostCurves {
    /// `log10` of the predicted bound, one entry per dimension.
    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> Vec<f64> {
        self.bound.clone()
    }

    /// `log10(|P| + m)` with `|P|` from the size formula.
    #[wasm_bindgen(getter)]
    pub fn worst_case(&self) -> Vec<f64> {
        self.worst_case.clone()
    }

    /// `log10` of the size of a Halton detector.
    #[wasm_bindgen(getter)]
    pub fn halton(&self) -> Vec<f64> {
        self.halton.clone()
    }
}

pub fn cost_curves(r: u32, m: f64, eps: f64, d_max: usize) -> Result<CostCurves> {
    let ln10 = std::f64::consts::LN_10;
    let mut curves = CostCurves {
        bound: Vec::with_capacity(d_max),
        worst_case: Vec::with_capacity(d_max),
        halton: Vec::with_capacity(d_max),
    };
    for d in 1..=d_max {
        let class = SmoothnessClass::new(r, m, d)?;
        let regime = class.regime();
        curves
            .bound
            .push(ln_cost_bound_for(&class, eps, 1.0, regime, None)? / ln10);
        let size = formula_detector_size(&class, eps, regime, None)?;
        curves
            .worst_case
            .push((size + choose_m(&class, eps, 1.0) as f64).log10());
        curves.halton.push(halton_baseline_size(&class, eps).log10);
    }
    Ok(curves)
}
