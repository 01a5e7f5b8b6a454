//! Randomized checks of the structural facts the detectors rest on. Every
//! check works from exact zero sets of piecewise polynomial factors.

use rand::{Rng, RngExt};

use crate::detectors::{c_delta, choose_delta, empty_interval_length, pseudo_dimension_of};
use crate::model::generate::maximized;
use crate::model::{
    factor_with_roots, factorial, random_factor_of_kind, stream_rng, FactorKind, RankOneFunction,
    SmoothnessClass, UnivariateFactor, ZeroSet,
};
use crate::pointsets::diagonal_set;

const TOL: f64 = 1e-12;

/// Result of a randomized suite.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteOutcome {
    pub cases: usize,
    pub counterexamples: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.counterexamples.is_empty()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.counterexamples.push(describe());
        }
    }
}

fn random_class<R: Rng + ?Sized>(rng: &mut R, max_r: u32, d: usize) -> SmoothnessClass {
    let r = rng.random_range(1..=max_r);
    let m = 10f64.powf(rng.random_range(-1.0..2.0));
    SmoothnessClass::new(r, m, d).expect("valid class")
}

/// Whether `x` lies within `TOL` of a zero.
fn is_zero_at(zeros: &ZeroSet, x: f64) -> bool {
    zeros.points.iter().any(|&z| (z - x).abs() <= TOL)
        || zeros
            .intervals
            .iter()
            .any(|&(s, e)| s - TOL <= x && x <= e + TOL)
}

/// Fewest zeros in an open window of length `len` inside `[0, 1]`; `None`
/// means every window meets a continuum of zeros.
pub fn fewest_zeros_in_window(zeros: &ZeroSet, len: f64) -> Option<usize> {
    let top = (1.0 - len).max(0.0);
    let mut starts = vec![0.0, top];
    for &z in &zeros.points {
        starts.extend([z, z - len]);
    }
    for &(s, e) in &zeros.intervals {
        starts.extend([e, s - len]);
    }
    starts
        .into_iter()
        .filter(|&a| (0.0..=top).contains(&a))
        .filter_map(|a| zeros.count_in_open(a, a + len))
        .min()
}

/// Every factor has a zero-free interval of length `L(g)`.
pub fn empty_interval_suite(cases: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    for i in 0..cases {
        let mut rng = stream_rng(seed, &[3, i as u64]);
        let class = random_class(&mut rng, 4, 1);
        let g = random_factor_of_kind(&class, FactorKind::Mixed, &mut rng);
        let len = empty_interval_length(&g, &class);
        let gap = g.zero_set().longest_gap();
        out.record(gap >= len * (1.0 - TOL), || {
            format!(
                "case {i}: r = {}, M = {}, gap {gap} < L {len}",
                class.r(),
                class.m()
            )
        });
    }
    out
}

/// A factor with `r` zeros in `[1/2 - delta, 1/2 + delta]` has norm at most
/// `C_delta`.
pub fn zeros_at_half_suite(cases: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    let mut i = 0u64;
    while out.cases < cases {
        i += 1;
        let mut rng = stream_rng(seed, &[4, i]);
        let r = rng.random_range(1..=4u32);
        let large = 2f64.powi(r as i32) * factorial(r);
        let m = large * rng.random_range(0.05..1.0);
        let class = SmoothnessClass::new(r, m, 1).expect("valid class");
        let delta = rng.random_range(0.0..=0.5f64).max(1e-3);
        let mut roots: Vec<f64> = (0..r)
            .map(|_| 0.5 + delta * rng.random_range(-1.0..=1.0))
            .collect();
        roots.sort_by(f64::total_cmp);
        roots.dedup();
        if roots.windows(2).any(|w| w[1] - w[0] < 1e-6) || roots.len() < r as usize {
            continue;
        }
        let g = factor_with_roots(&class, &roots, &mut rng);
        let zeros = g.zero_set();
        if !roots.iter().all(|&x| is_zero_at(&zeros, x)) {
            continue;
        }
        let bound = c_delta(r, m, delta);
        out.record(g.sup_norm() <= bound + TOL, || {
            format!(
                "r = {r}, M = {m}, delta = {delta}: norm {} > {bound}",
                g.sup_norm()
            )
        });
    }
    out
}

/// Factors with at least `r` zeros (or a continuum) in `I_delta`.
pub fn crowded_factors(f: &RankOneFunction, delta: f64) -> usize {
    let r = f.r() as usize;
    f.factors()
        .iter()
        .filter(|g| {
            g.zero_set()
                .count_in_closed(0.5 - delta, 0.5 + delta)
                .is_none_or(|n| n >= r)
        })
        .count()
}

/// A member with norm above `eps` has at most `d_0` factors with `r` or
/// more zeros in `I_delta`.
pub fn harmless_suite(cases: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    let mut i = 0u64;
    while out.cases < cases {
        i += 1;
        let mut rng = stream_rng(seed, &[5, i]);
        let r = rng.random_range(1..=3u32);
        let (low, high) = (factorial(r), 2f64.powi(r as i32) * factorial(r));
        let m = low + (high - low) * rng.random_range(0.01..0.99);
        let d = rng.random_range(1..=6usize);
        let eps = [0.5, 0.25, 0.1, 0.05][rng.random_range(0..4usize)];
        let class = SmoothnessClass::new(r, m, d).expect("valid class");
        let delta = choose_delta(r, m).expect("moderate class");
        let crowd_rate = rng.random_range(0.0..1.0);
        let factors: Vec<UnivariateFactor> = (0..d)
            .map(|_| {
                if rng.random_bool(crowd_rate) {
                    let roots: Vec<f64> = (0..r)
                        .map(|k| {
                            let t = (k as f64 + rng.random_range(0.1..0.9)) / r as f64;
                            0.5 - delta + 2.0 * delta * t
                        })
                        .collect();
                    factor_with_roots(&class, &roots, &mut rng)
                } else {
                    random_factor_of_kind(&class, FactorKind::Mixed, &mut rng)
                }
            })
            .collect();
        let f = maximized(&RankOneFunction::new(factors).expect("same r"), &class);
        if f.sup_norm() <= eps {
            if i > 200 * cases as u64 {
                break;
            }
            continue;
        }
        let d0 = pseudo_dimension_of(c_delta(r, m, delta), d, eps);
        let crowded = crowded_factors(&f, delta);
        out.record(crowded <= d0, || {
            format!("r = {r}, M = {m}, d = {d}, eps = {eps}: {crowded} crowded factors > d0 = {d0}")
        });
    }
    out
}

/// Any `l k + 1` points of a box that are distinct in every coordinate
/// contain a non-zero of a product of `l` factors with at most `k` zeros
/// each in the box.
pub fn diagonal_suite(cases: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    let mut i = 0u64;
    while out.cases < cases {
        i += 1;
        let mut rng = stream_rng(seed, &[6, i]);
        let l = rng.random_range(1..=3usize);
        let k = rng.random_range(0..=2usize);
        let center = rng.random_range(0.2..0.8);
        let half = rng.random_range(0.01..0.2f64).min(center).min(1.0 - center);
        let (lo, hi) = (center - half, center + half);
        let count = l * k + 1;
        let positions: Vec<f64> = diagonal_set(count, center, half, 1)
            .expect("interval inside the cube")
            .iter()
            .map(|x| x[0])
            .collect();

        // spread roots over all but one diagonal position, k per factor
        let mut order: Vec<usize> = (0..count).collect();
        for a in (1..count).rev() {
            order.swap(a, rng.random_range(0..=a));
        }
        let class = SmoothnessClass::new(k.max(1) as u32 + 1, 5.0, 1).expect("valid class");
        let mut factors = Vec::with_capacity(l);
        for j in 0..l {
            let roots: Vec<f64> = order[j * k..(j + 1) * k]
                .iter()
                .map(|&p| positions[p])
                .collect();
            let g = factor_with_roots(&class, &roots, &mut rng);
            factors.push(g);
        }
        let zero_sets: Vec<ZeroSet> = factors.iter().map(UnivariateFactor::zero_set).collect();
        if zero_sets
            .iter()
            .any(|z| z.count_in_closed(lo, hi).is_none_or(|n| n > k))
        {
            continue;
        }

        // the diagonal points and a random set with distinct coordinates
        let mut sets = vec![positions.iter().map(|&t| vec![t; l]).collect::<Vec<_>>()];
        let random: Vec<Vec<f64>> = (0..count)
            .map(|_| (0..l).map(|_| rng.random_range(lo..=hi)).collect())
            .collect();
        sets.push(random);
        for set in sets {
            let sees = set.iter().any(|x| {
                x.iter()
                    .zip(&zero_sets)
                    .all(|(&xi, zeros)| !is_zero_at(zeros, xi))
            });
            out.record(sees, || {
                format!("l = {l}, k = {k}, interval [{lo}, {hi}]: all points vanish")
            });
        }
    }
    out
}

/// With `|g| <= 1` and `|g^(r)| <= r!`, some window of length `|g|^(1/r)`
/// holds at most `r - 1` zeros.
pub fn almost_empty_suite(cases: usize, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    for i in 0..cases {
        let mut rng = stream_rng(seed, &[7, i as u64]);
        let r = rng.random_range(1..=4u32);
        let m = factorial(r) * rng.random_range(0.2..=1.0f64).min(1.0);
        let class = SmoothnessClass::new(r, m, 1).expect("valid class");
        let g = if rng.random_bool(0.5) {
            let roots: Vec<f64> = (0..r).map(|_| rng.random_range(0.0..=1.0)).collect();
            factor_with_roots(&class, &roots, &mut rng)
        } else {
            random_factor_of_kind(&class, FactorKind::Mixed, &mut rng)
        };
        let g = g
            .scaled(g.max_scale_in(&class))
            .expect("scaling stays in class");
        let len = g.sup_norm().powf(1.0 / r as f64) * (1.0 - TOL);
        let fewest = fewest_zeros_in_window(&g.zero_set(), len);
        out.record(fewest.is_some_and(|n| n < r as usize), || {
            format!("case {i}: r = {r}, M = {m}, window {len} holds {fewest:?} zeros")
        });
    }
    out
}
