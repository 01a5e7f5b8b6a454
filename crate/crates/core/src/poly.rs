//! Dense univariate polynomials with real-root isolation.
//!
//! Coefficients are stored lowest degree first. All piecewise objects in the
//! crate evaluate a piece in its local coordinate `t = x - left_breakpoint`,
//! so the polynomials here only ever see arguments in `[0, width]`.

/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Running error bound of Horner's scheme at `t`, used to decide when a
    /// computed value is indistinguishable from zero.
    fn eval_error_bound(&self, t: f64) -> f64 {
        let at = t.abs();
        let magnitude = self
            .coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * at + c.abs());
        4.0 * (self.coeffs.len() as f64) * f64::EPSILON * magnitude
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scaled(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0.0)
                        + other.coeffs.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    /// `p(t) * (t - root)`.
    pub fn mul_linear(&self, root: f64) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * root;
        }
        Poly::new(out)
    }

    /// `q(t) = p(t + a)`.
    pub fn shifted(&self, a: f64) -> Poly {
        // repeated synthetic division by (t - a) yields the Taylor coefficients at a
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                c[k] += a * c[k + 1];
            }
        }
        Poly::new(c)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[f64]) -> Poly {
        roots
            .iter()
            .fold(Poly::constant(1.0), |p, &x| p.mul_linear(x))
    }

    fn is_root_at(&self, t: f64) -> bool {
        self.eval(t).abs() <= self.eval_error_bound(t)
    }

    /// All real roots in `[lo, hi]`, sorted.
    ///
    /// Roots are isolated recursively: the critical points of `p` split the
    /// interval into monotone segments, and each segment holds at most one
    /// root, located by bisection. Values within Horner's rounding bound of
    /// zero count as roots, so multiple roots are reported once. The zero
    /// polynomial reports no roots; callers treat it as vanishing everywhere.
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        if self.degree() == 0 || lo > hi {
            return Vec::new();
        }
        if self.degree() == 1 {
            let t = -self.coeffs[0] / self.coeffs[1];
            return if t >= lo && t <= hi {
                vec![t]
            } else {
                Vec::new()
            };
        }
        let mut knots = vec![lo];
        knots.extend(
            self.derivative()
                .roots_in(lo, hi)
                .into_iter()
                .filter(|&c| c > lo && c < hi),
        );
        knots.push(hi);

        let mut roots = Vec::new();
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let a_root = self.is_root_at(a);
            if a_root {
                roots.push(a);
            }
            if a_root || self.is_root_at(b) {
                continue;
            }
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa.signum() != fb.signum() {
                roots.push(self.bisect(a, b, fa));
            }
        }
        if self.is_root_at(hi) {
            roots.push(hi);
        }
        roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-12);
        roots
    }

    fn bisect(&self, mut a: f64, mut b: f64, fa: f64) -> f64 {
        let sa = fa.signum();
        for _ in 0..200 {
            if b - a <= ROOT_TOL {
                break;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// Maximum of `|p|` over `[lo, hi]`, taken over the endpoints and the
    /// isolated critical points.
    pub fn max_abs_on(&self, lo: f64, hi: f64) -> f64 {
        let mut best = self.eval(lo).abs().max(self.eval(hi).abs());
        if self.degree() >= 2 {
            for c in self.derivative().roots_in(lo, hi) {
                best = best.max(self.eval(c).abs());
            }
        }
        best
    }
}

/// Interpolating polynomial through `(nodes[k], values[k])`, assembled from
/// Newton divided differences. Nodes must be distinct.
pub fn newton_interpolant(nodes: &[f64], values: &[f64]) -> Poly {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    if n == 0 {
        return Poly::zero();
    }
    let mut dd = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - level]);
        }
    }
    let mut p = Poly::constant(dd[n - 1]);
    for k in (0..n - 1).rev() {
        p = p.mul_linear(nodes[k]).add(&Poly::constant(dd[k]));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_and_derivatives() {
        let p = Poly::new(vec![1.0, -3.0, 0.0, 2.0]);
        assert_eq!(p.eval(2.0), 1.0 - 6.0 + 16.0);
        assert_eq!(p.derivative(), Poly::new(vec![-3.0, 0.0, 6.0]));
        assert_eq!(p.nth_derivative(3), Poly::constant(12.0));
        assert!(p.nth_derivative(4).is_zero());
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = Poly::new(vec![0.3, -1.0, 2.5, 0.75]);
        let q = p.shifted(0.4);
        for &t in &[-0.3, 0.0, 0.2, 0.6] {
            assert!((q.eval(t) - p.eval(t + 0.4)).abs() < 1e-14);
        }
    }

    #[test]
    fn newton_reproduces_cubic() {
        let p = Poly::new(vec![0.5, -2.0, 1.0, 3.0]);
        let nodes = [0.1, 0.4, 0.45, 0.9];
        let values: Vec<f64> = nodes.iter().map(|&x| p.eval(x)).collect();
        let q = newton_interpolant(&nodes, &values);
        for (a, b) in p.coeffs().iter().zip(q.coeffs()) {
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(Poly::new(vec![1.0, 0.0, 0.0]).degree(), 0);
        assert!(Poly::new(vec![]).is_zero());
    }

    #[test]
    fn roots_of_product_form() {
        let roots = [0.1, 0.35, 0.5, 0.9];
        let p = Poly::from_roots(&roots);
        let found = p.roots_in(0.0, 1.0);
        assert_eq!(found.len(), 4);
        for (a, b) in found.iter().zip(roots) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert_eq!(p.roots_in(0.2, 0.3), Vec::<f64>::new());
    }

    #[test]
    fn double_root_reported_once() {
        let p = Poly::from_roots(&[0.25, 0.25, 0.75]);
        let found = p.roots_in(0.0, 1.0);
        assert_eq!(found.len(), 2, "{found:?}");
    }

    #[test]
    fn root_at_interval_end() {
        let p = Poly::new(vec![0.0, 0.0, 1.0]);
        assert_eq!(p.roots_in(0.0, 0.5), vec![0.0]);
    }

    #[test]
    fn max_abs_interior_critical_point() {
        // 4 t (1 - t) peaks at 1/2.
        let p = Poly::new(vec![0.0, 4.0, -4.0]);
        assert!((p.max_abs_on(0.0, 1.0) - 1.0).abs() < 1e-15);
        assert!((p.max_abs_on(0.0, 0.25) - 0.75).abs() < 1e-15);
    }
}
