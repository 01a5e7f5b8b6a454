use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{usage, Result};
use crate::model::class::SmoothnessClass;
use crate::model::factor::UnivariateFactor;

/// Black-box access to a function on `[0,1]^d` through point evaluations.
pub trait Oracle {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> f64;
}

impl<T: Oracle + ?Sized> Oracle for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (**self).eval(x)
    }
}

/// Wraps an oracle and counts every evaluation.
pub struct CountingOracle<O> {
    inner: O,
    calls: AtomicU64,
}

impl<O: Oracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: Oracle> Oracle for CountingOracle<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(x)
    }
}

/// Adapts a closure into an oracle of a fixed dimension.
pub struct FnOracle<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64> FnOracle<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnOracle { dim, f }
    }
}

impl<F: Fn(&[f64]) -> f64> Oracle for FnOracle<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// `f = f_1 ⊗ ... ⊗ f_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOneFunction {
    factors: Vec<UnivariateFactor>,
}

impl RankOneFunction {
    pub fn new(factors: Vec<UnivariateFactor>) -> Result<Self> {
        if factors.is_empty() {
            return usage("a rank-one function needs at least one factor");
        }
        let r = factors[0].r();
        if factors.iter().any(|f| f.r() != r) {
            return usage("all factors must carry the same smoothness order");
        }
        Ok(RankOneFunction { factors })
    }

    /// The constant function `c` in dimension `d` (requires `|c| <= 1`).
    pub fn constant(c: f64, d: usize, r: u32) -> Result<Self> {
        let mut factors = vec![UnivariateFactor::constant(1.0, r)?; d];
        if let Some(first) = factors.first_mut() {
            *first = UnivariateFactor::constant(c, r)?;
        }
        RankOneFunction::new(factors)
    }

    pub fn factors(&self) -> &[UnivariateFactor] {
        &self.factors
    }

    pub fn d(&self) -> usize {
        self.factors.len()
    }

    pub fn r(&self) -> u32 {
        self.factors[0].r()
    }

    /// Product of factor values, multiplied left to right.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.d() {
            return usage(format!(
                "point has {} coordinates, function has dimension {}",
                x.len(),
                self.d()
            ));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.factors
            .iter()
            .zip(x)
            .fold(1.0, |acc, (f, &xi)| acc * f.eval(xi))
    }

    /// Exact sup norm: the product of the factor sup norms.
    pub fn sup_norm(&self) -> f64 {
        self.factors
            .iter()
            .map(UnivariateFactor::sup_norm)
            .product()
    }

    pub fn fits(&self, class: &SmoothnessClass) -> bool {
        self.d() == class.d() && self.factors.iter().all(|f| f.fits(class))
    }

    pub fn negated(&self) -> Self {
        let mut factors = self.factors.clone();
        factors[0] = factors[0]
            .scaled(-1.0)
            .expect("negation preserves the range");
        RankOneFunction { factors }
    }

    /// The restriction `x -> f(z_1, .., z_{i-1}, x, z_{i+1}, .., z_d)`.
    ///
    /// The off-coordinate product has magnitude at most one, so the fiber
    /// stays inside the class of the original factor.
    pub fn fiber(&self, i: usize, anchor: &[f64]) -> Result<UnivariateFactor> {
        if i >= self.d() {
            return usage(format!(
                "coordinate {i} out of range for dimension {}",
                self.d()
            ));
        }
        if anchor.len() != self.d() {
            return usage("anchor dimension does not match the function");
        }
        let c = self
            .factors
            .iter()
            .zip(anchor)
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1.0, |acc, (_, (f, &zj))| acc * f.eval(zj));
        self.factors[i].scaled(c)
    }
}

impl Oracle for RankOneFunction {
    fn dim(&self) -> usize {
        self.d()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.d());
        self.eval_unchecked(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_times_y() -> RankOneFunction {
        let x = UnivariateFactor::polynomial(vec![0.0, 1.0], 2).unwrap();
        RankOneFunction::new(vec![x.clone(), x]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let ones = RankOneFunction::constant(1.0, 3, 1).unwrap();
        assert_eq!(ones.value(&[0.1, 0.7, 0.3]).unwrap(), 1.0);
        let zero = RankOneFunction::constant(0.0, 3, 1).unwrap();
        assert_eq!(zero.value(&[0.1, 0.7, 0.3]).unwrap(), 0.0);
        assert_eq!(x_times_y().value(&[0.5, 0.5]).unwrap(), 0.25);
        assert!(x_times_y().value(&[0.5]).is_err());
    }

    #[test]
    fn sup_norm_examples() {
        assert_eq!(
            RankOneFunction::constant(1.0, 4, 2).unwrap().sup_norm(),
            1.0
        );
        let x = UnivariateFactor::polynomial(vec![0.0, 1.0], 1).unwrap();
        let one_minus_x = UnivariateFactor::polynomial(vec![1.0, -1.0], 1).unwrap();
        assert_eq!(
            RankOneFunction::new(vec![x, one_minus_x])
                .unwrap()
                .sup_norm(),
            1.0
        );
    }

    #[test]
    fn fiber_examples() {
        let f = x_times_y();
        let g = f.fiber(0, &[0.3, 0.5]).unwrap();
        for &x in &[0.0, 0.2, 0.9, 1.0] {
            assert_eq!(g.eval(x), 0.5 * x);
        }
        let g = f.fiber(1, &[0.0, 0.9]).unwrap();
        assert_eq!(g.sup_norm(), 0.0);
        assert!(f.fiber(2, &[0.0, 0.9]).is_err());
        let ones = RankOneFunction::constant(1.0, 3, 1).unwrap();
        assert_eq!(ones.fiber(1, &[0.2, 0.4, 0.6]).unwrap().eval(0.33), 1.0);
    }

    #[test]
    fn counting_oracle_counts() {
        let f = x_times_y();
        let counted = CountingOracle::new(&f);
        for _ in 0..7 {
            counted.eval(&[0.1, 0.2]);
        }
        assert_eq!(counted.calls(), 7);
    }

    #[test]
    fn negation_flips_values() {
        let f = x_times_y();
        assert_eq!(f.negated().eval(&[0.5, 0.5]), -0.25);
        assert_eq!(f.negated().sup_norm(), 1.0);
    }
}
