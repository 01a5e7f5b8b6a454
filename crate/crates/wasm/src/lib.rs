//! Browser bindings for the recovery library.
//!
//! The computations live in [`demo`] so they can be tested natively; the
//! exported functions only convert errors into JavaScript exceptions.

use wasm_bindgen::prelude::*;

pub mod demo;

pub use demo::{CostCurves, DetectorView, ReconstructionView};

fn js(e: rankone::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Detector for `d = 2`, as a flat `x0, y0, x1, y1, ..` array.
#[wasm_bindgen]
pub fn detector_2d(r: u32, m: f64, eps: f64) -> Result<DetectorView, JsError> {
    demo::detector_2d(r, m, eps).map_err(js)
}

/// Recovers a random member of the class and samples it and its
/// approximation along the diagonal of the cube.
#[wasm_bindgen]
pub fn reconstruct(
    r: u32,
    m: f64,
    d: usize,
    eps: f64,
    seed: u64,
) -> Result<ReconstructionView, JsError> {
    demo::reconstruct(r, m, d, eps, seed).map_err(js)
}

/// Base-10 logarithms of the cost bound and the worst-case cost for
/// `d = 1..=d_max`.
#[wasm_bindgen]
pub fn cost_curves(r: u32, m: f64, eps: f64, d_max: usize) -> Result<CostCurves, JsError> {
    demo::cost_curves(r, m, eps, d_max).map_err(js)
}

#[wasm_bindgen]
pub fn regime_of(r: u32, m: f64) -> String {
    rankone::Regime::of(r, m).as_str().to_string()
}
