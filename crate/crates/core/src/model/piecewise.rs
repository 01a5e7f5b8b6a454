use crate::error::{usage, Result};
use crate::poly::Poly;

/// A piecewise polynomial on `[0, 1]`.
///
/// Piece `j` covers `[breaks[j], breaks[j+1])` (the last piece is closed) and
/// is stored in the local coordinate `t = x - breaks[j]`. A point sitting on
/// an interior breakpoint is evaluated with the piece to its right.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePoly {
    breaks: Vec<f64>,
    pieces: Vec<Poly>,
}

impl PiecewisePoly {
    pub fn new(breaks: Vec<f64>, pieces: Vec<Poly>) -> Result<Self> {
        if pieces.is_empty() || breaks.len() != pieces.len() + 1 {
            return usage(format!(
                "{} breakpoints cannot delimit {} pieces",
                breaks.len(),
                pieces.len()
            ));
        }
        if breaks[0] != 0.0 || breaks[breaks.len() - 1] != 1.0 {
            return usage("breakpoints must start at 0 and end at 1");
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) {
            return usage("breakpoints must be strictly increasing");
        }
        Ok(PiecewisePoly { breaks, pieces })
    }

    pub fn constant(c: f64) -> Self {
        PiecewisePoly {
            breaks: vec![0.0, 1.0],
            pieces: vec![Poly::constant(c)],
        }
    }

    /// A single polynomial in the global coordinate `x` (which coincides with
    /// the local coordinate of the only piece).
    pub fn single(p: Poly) -> Self {
        PiecewisePoly {
            breaks: vec![0.0, 1.0],
            pieces: vec![p],
        }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn width(&self, j: usize) -> f64 {
        self.breaks[j + 1] - self.breaks[j]
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn piece_index(&self, x: f64) -> usize {
        let k = self.breaks.partition_point(|&b| b <= x);
        k.saturating_sub(1).min(self.pieces.len() - 1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let j = self.piece_index(x);
        self.pieces[j].eval(x - self.breaks[j])
    }

    /// Exact (up to rounding) maximum of `|p|` over `[0, 1]`.
    pub fn sup_abs(&self) -> f64 {
        self.pieces
            .iter()
            .enumerate()
            .map(|(j, p)| p.max_abs_on(0.0, self.width(j)))
            .fold(0.0, f64::max)
    }

    /// Essential supremum of the `k`-th derivative, piece by piece.
    pub fn derivative_sup(&self, k: usize) -> f64 {
        self.pieces
            .iter()
            .enumerate()
            .map(|(j, p)| p.nth_derivative(k).max_abs_on(0.0, self.width(j)))
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: f64) -> Self {
        PiecewisePoly {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.scaled(s)).collect(),
        }
    }

    /// Largest jump of the `k`-th derivative across interior breakpoints.
    pub fn max_jump(&self, k: usize) -> f64 {
        (1..self.pieces.len())
            .map(|j| {
                let left = self.pieces[j - 1].nth_derivative(k).eval(self.width(j - 1));
                let right = self.pieces[j].nth_derivative(k).eval(0.0);
                (left - right).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Zeros of the function: isolated roots plus the closed intervals on
    /// which a piece vanishes identically.
    pub fn zero_set(&self) -> ZeroSet {
        let mut intervals: Vec<(f64, f64)> = Vec::new();
        let mut points = Vec::new();
        for (j, p) in self.pieces.iter().enumerate() {
            let (a, b) = (self.breaks[j], self.breaks[j + 1]);
            if p.is_zero() {
                match intervals.last_mut() {
                    Some(last) if last.1 == a => last.1 = b,
                    _ => intervals.push((a, b)),
                }
            } else {
                points.extend(p.roots_in(0.0, b - a).into_iter().map(|t| a + t));
            }
        }
        points.sort_by(f64::total_cmp);
        points.dedup_by(|x, y| (*x - *y).abs() <= 1e-12);
        points.retain(|&x| {
            !intervals
                .iter()
                .any(|&(s, e)| x >= s - 1e-12 && x <= e + 1e-12)
        });
        ZeroSet { points, intervals }
    }
}

/// Zero set of a piecewise polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub points: Vec<f64>,
    pub intervals: Vec<(f64, f64)>,
}

impl ZeroSet {
    /// Number of zeros in the open interval `(a, b)`; `None` when a whole
    /// interval of zeros meets it.
    pub fn count_in_open(&self, a: f64, b: f64) -> Option<usize> {
        if self.intervals.iter().any(|&(s, e)| s < b && e > a) {
            return None;
        }
        Some(self.points.iter().filter(|&&x| x > a && x < b).count())
    }

    /// Number of zeros in the closed interval `[a, b]`; `None` for a
    /// continuum.
    pub fn count_in_closed(&self, a: f64, b: f64) -> Option<usize> {
        if self.intervals.iter().any(|&(s, e)| s <= b && e >= a) {
            return None;
        }
        Some(self.points.iter().filter(|&&x| x >= a && x <= b).count())
    }

    /// Longest open subinterval of `[0, 1]` free of zeros.
    pub fn longest_gap(&self) -> f64 {
        let mut blockers: Vec<(f64, f64)> = self.points.iter().map(|&x| (x, x)).collect();
        blockers.extend(self.intervals.iter().copied());
        blockers.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut best = 0.0f64;
        let mut cursor = 0.0f64;
        for (s, e) in blockers {
            best = best.max(s - cursor);
            cursor = cursor.max(e);
        }
        best.max(1.0 - cursor)
    }
}
