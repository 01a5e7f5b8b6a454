use crate::error::{domain, Result};
use crate::model::class::SmoothnessClass;
use crate::model::piecewise::{PiecewisePoly, ZeroSet};
use crate::poly::Poly;

/// Relative slack allowed when comparing cached bounds against the class
/// limits; covers rounding in the piecewise coefficients only.
pub const MEMBERSHIP_RTOL: f64 = 1e-12;

/// A univariate factor with certified range and `r`-th derivative bound.
///
/// The shape is a piecewise polynomial whose derivatives up to order `r - 1`
/// are continuous across breakpoints, so it lies in `W^r_inf[0,1]` and its
/// `r`-th weak derivative is the piecewise `r`-th derivative. Both cached
/// bounds are computed from the representation, not sampled.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariateFactor {
    shape: PiecewisePoly,
    r: u32,
    sup_norm: f64,
    deriv_r_sup: f64,
}

impl UnivariateFactor {
    pub fn new(shape: PiecewisePoly, r: u32) -> Result<Self> {
        let sup_norm = shape.sup_abs();
        if sup_norm > 1.0 + MEMBERSHIP_RTOL {
            return domain(format!("factor leaves [-1, 1]: sup norm {sup_norm}"));
        }
        for k in 0..r as usize {
            let jump = shape.max_jump(k);
            let scale = 1.0 + shape.derivative_sup(k);
            if jump > 1e-9 * scale {
                return domain(format!(
                    "derivative of order {k} jumps by {jump:e} at a breakpoint"
                ));
            }
        }
        let deriv_r_sup = shape.derivative_sup(r as usize);
        Ok(UnivariateFactor {
            shape,
            r,
            sup_norm,
            deriv_r_sup,
        })
    }

    pub fn constant(c: f64, r: u32) -> Result<Self> {
        UnivariateFactor::new(PiecewisePoly::constant(c), r)
    }

    /// A single global polynomial, e.g. `x` or `1 - x`.
    pub fn polynomial(coeffs: Vec<f64>, r: u32) -> Result<Self> {
        UnivariateFactor::new(PiecewisePoly::single(Poly::new(coeffs)), r)
    }

    pub fn shape(&self) -> &PiecewisePoly {
        &self.shape
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn deriv_r_sup(&self) -> f64 {
        self.deriv_r_sup
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.shape.eval(x)
    }

    pub fn zero_set(&self) -> ZeroSet {
        self.shape.zero_set()
    }

    /// Whether the factor certifiably belongs to the univariate part of the
    /// class.
    pub fn fits(&self, class: &SmoothnessClass) -> bool {
        self.r == class.r()
            && self.sup_norm <= 1.0 + MEMBERSHIP_RTOL
            && self.deriv_r_sup <= class.m() * (1.0 + MEMBERSHIP_RTOL)
    }

    /// `c * self`; fails if the result leaves `[-1, 1]`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        UnivariateFactor::new(self.shape.scaled(c), self.r)
    }

    /// Largest scale `c >= 1` with `c * self` still in the class.
    pub fn max_scale_in(&self, class: &SmoothnessClass) -> f64 {
        let by_range = if self.sup_norm > 0.0 {
            1.0 / self.sup_norm
        } else {
            f64::INFINITY
        };
        let by_deriv = if self.deriv_r_sup > 0.0 {
            class.m() / self.deriv_r_sup
        } else {
            f64::INFINITY
        };
        by_range.min(by_deriv).max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caches_exact_bounds() {
        let f = UnivariateFactor::polynomial(vec![0.0, 4.0, -4.0], 2).unwrap();
        assert_eq!(f.sup_norm(), 1.0);
        assert_eq!(f.deriv_r_sup(), 8.0);
        let class = SmoothnessClass::new(2, 8.0, 1).unwrap();
        assert!(f.fits(&class));
        assert!(!f.fits(&SmoothnessClass::new(2, 7.9, 1).unwrap()));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(UnivariateFactor::polynomial(vec![0.0, 2.0], 1).is_err());
    }

    #[test]
    fn rejects_discontinuous_joins() {
        let jump = PiecewisePoly::new(
            vec![0.0, 0.5, 1.0],
            vec![Poly::constant(0.0), Poly::constant(0.5)],
        )
        .unwrap();
        assert!(UnivariateFactor::new(jump, 1).is_err());
        // a kink is fine for r = 1 but not for r = 2
        let kink = PiecewisePoly::new(
            vec![0.0, 0.5, 1.0],
            vec![Poly::new(vec![0.0, 1.0]), Poly::new(vec![0.5, -1.0])],
        )
        .unwrap();
        assert!(UnivariateFactor::new(kink.clone(), 1).is_ok());
        assert!(UnivariateFactor::new(kink, 2).is_err());
    }

    #[test]
    fn max_scale_respects_both_limits() {
        let class = SmoothnessClass::new(1, 1.0, 1).unwrap();
        let f = UnivariateFactor::polynomial(vec![0.0, 0.25], 1).unwrap();
        // range allows 4x, derivative allows 4x
        assert!((f.max_scale_in(&class) - 4.0).abs() < 1e-15);
        let class = SmoothnessClass::new(1, 0.5, 1).unwrap();
        assert!((f.max_scale_in(&class) - 2.0).abs() < 1e-15);
    }
}
