//! Piecewise polynomial interpolation of fibers and the anchored rank-one
//! reconstruction.

use crate::error::{domain, usage, Error, Result};
use crate::model::{Oracle, PiecewisePoly, SmoothnessClass};
use crate::pointsets::floor_count;
use crate::poly::newton_interpolant;

/// `r` Chebyshev nodes in the cell `[a, a + h]`.
pub fn chebyshev_nodes(a: f64, h: f64, r: u32) -> Vec<f64> {
    let r = r as usize;
    (1..=r)
        .map(|k| {
            let theta = (2 * k - 1) as f64 * std::f64::consts::PI / (2 * r) as f64;
            a + 0.5 * h * (1.0 - theta.cos())
        })
        .collect()
}

/// Number of cells used for `m` samples at order `r`.
pub fn cell_count(m: usize, r: u32) -> usize {
    m / r as usize
}

/// Interpolates `g` on `floor(m/r)` equal cells with `r` Chebyshev nodes
/// each. Uses exactly `r * floor(m/r)` evaluations of `g`.
pub fn interpolate_univariate<G: FnMut(f64) -> f64>(
    mut g: G,
    m: usize,
    r: u32,
) -> Result<PiecewisePoly> {
    if r == 0 {
        return usage("interpolation order must be at least 1");
    }
    if m < r as usize {
        return usage(format!("{m} samples cannot determine pieces of order {r}"));
    }
    let cells = cell_count(m, r);
    let h = 1.0 / cells as f64;
    let breaks: Vec<f64> = (0..=cells).map(|k| k as f64 / cells as f64).collect();
    let mut pieces = Vec::with_capacity(cells);
    for k in 0..cells {
        let a = breaks[k];
        let nodes = chebyshev_nodes(a, h, r);
        let values: Vec<f64> = nodes.iter().map(|&x| g(x)).collect();
        let local: Vec<f64> = nodes.iter().map(|&x| x - a).collect();
        pieces.push(newton_interpolant(&local, &values));
    }
    PiecewisePoly::new(breaks, pieces)
}

/// `C = 4 max(1, c1 M)^(1/r)`.
pub fn reconstruction_constant(class: &SmoothnessClass, c1: f64) -> f64 {
    4.0 * (c1 * class.m()).max(1.0).powf(1.0 / class.r() as f64)
}

/// Sample budget `floor(C d^(1 + 1/r) eps^(-1/r))`, at least `d r`.
pub fn choose_m(class: &SmoothnessClass, eps: f64, c1: f64) -> usize {
    let (r, d) = (class.r() as f64, class.d() as f64);
    let value = reconstruction_constant(class, c1) * d.powf(1.0 + 1.0 / r) * eps.powf(-1.0 / r);
    let floor = class.d() * class.r() as usize;
    let m = floor_count(value);
    if m >= usize::MAX as f64 {
        usize::MAX
    } else {
        (m as usize).max(floor)
    }
}

/// Oracle calls made by [`reconstruct`] for budget `m`.
pub fn reconstruction_calls(d: usize, r: u32, m: usize) -> usize {
    d * r as usize * cell_count(m / d, r)
}

/// A point where the target is known to be non-zero, with its value.
#[derive(Clone, Debug, PartialEq)]
pub struct Anchor {
    pub point: Vec<f64>,
    pub value: f64,
}

/// `scale * p_1(x_1) * ... * p_d(x_d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximant {
    scale: f64,
    interpolants: Vec<PiecewisePoly>,
}

impl Approximant {
    /// The zero function on `[0,1]^d`.
    pub fn zero(d: usize) -> Self {
        Approximant {
            scale: 0.0,
            interpolants: vec![PiecewisePoly::constant(1.0); d],
        }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn interpolants(&self) -> &[PiecewisePoly] {
        &self.interpolants
    }

    pub fn is_zero(&self) -> bool {
        self.scale == 0.0
    }
}

impl Oracle for Approximant {
    fn dim(&self) -> usize {
        self.interpolants.len()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.interpolants
            .iter()
            .zip(x)
            .fold(self.scale, |acc, (p, &xi)| acc * p.eval(xi))
    }
}

/// Reconstructs `f` from its fibers through the anchor.
///
/// Each fiber `x -> f(z_1, .., x, .., z_d)` is interpolated with `floor(m/d)`
/// samples; the product of the fiber interpolants times `f(z)^(1-d)` is the
/// approximant. The anchor value is not re-evaluated.
pub fn reconstruct<O: Oracle + ?Sized>(
    f: &O,
    anchor: &Anchor,
    class: &SmoothnessClass,
    m: usize,
) -> Result<Approximant> {
    let (d, r) = (class.d(), class.r());
    if f.dim() != d || anchor.point.len() != d {
        return usage(format!(
            "dimension mismatch: class {d}, oracle {}, anchor {}",
            f.dim(),
            anchor.point.len()
        ));
    }
    if m < d * r as usize {
        return usage(format!("budget m = {m} is below d r = {}", d * r as usize));
    }
    if anchor.value == 0.0 {
        return domain("anchor is a zero of f");
    }
    let scale = anchor.value.powi(1 - d as i32);
    if !scale.is_finite() || scale == 0.0 || !anchor.value.is_finite() {
        return Err(Error::Numeric(format!(
            "anchor value {:e} cannot be normalized in dimension {d}",
            anchor.value
        )));
    }
    let per_coordinate = m / d;
    let mut point = anchor.point.clone();
    let mut interpolants = Vec::with_capacity(d);
    for i in 0..d {
        let p = interpolate_univariate(
            |x| {
                point[i] = x;
                f.eval(&point)
            },
            per_coordinate,
            r,
        )?;
        point[i] = anchor.point[i];
        interpolants.push(p);
    }
    Ok(Approximant {
        scale,
        interpolants,
    })
}
