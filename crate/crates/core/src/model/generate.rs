//! Seeded generators of certified class members.
//!
//! Every generated factor is a piecewise polynomial whose range and `r`-th
//! derivative bound are computed exactly after construction, so membership
//! holds for every seed. Randomness comes from counter-addressed ChaCha
//! streams: the same `(seed, key)` pair always produces the same draws,
//! independent of how many other streams were consumed or on which thread.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::class::{factorial, SmoothnessClass};
use crate::model::factor::UnivariateFactor;
use crate::model::function::RankOneFunction;
use crate::model::piecewise::PiecewisePoly;
use crate::poly::{newton_interpolant, Poly};

/// Rejection sampling for norms above a threshold gives up after this many
/// fresh draws.
pub const MAX_ATTEMPTS: u64 = 10;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random stream addressed by `(seed, key)`.
pub fn stream_rng(seed: u64, key: &[u64]) -> ChaCha8Rng {
    let stream = key.iter().fold(0x5851_f42d_4c95_7f2d_u64, |acc, &k| {
        splitmix(acc ^ splitmix(k))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Shapes of random factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// Piecewise-constant `r`-th derivative integrated `r` times.
    Spline,
    /// `c (x - t)^r` on one side of a random `t`, zero on the other.
    TruncatedPower,
    /// `c * prod (x - rho_k)` with `r` clustered roots.
    Rooted,
    /// A spline minus its interpolant at `r` clustered points, so it has
    /// (at least) `r` prescribed roots.
    Forced,
    /// Each factor drawn from one of the above, uniformly.
    Mixed,
}

impl FactorKind {
    pub const ALL: [FactorKind; 4] = [
        FactorKind::Spline,
        FactorKind::TruncatedPower,
        FactorKind::Rooted,
        FactorKind::Forced,
    ];
}

fn sorted_breaks<R: Rng + ?Sized>(rng: &mut R) -> Vec<f64> {
    let k = rng.random_range(1..=8usize);
    let mut interior: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
    interior.sort_by(f64::total_cmp);
    interior.dedup();
    interior.retain(|&b| b > 0.0 && b < 1.0);
    let mut breaks = Vec::with_capacity(interior.len() + 2);
    breaks.push(0.0);
    breaks.extend(interior);
    breaks.push(1.0);
    breaks
}

/// Unnormalized spline: `r`-th derivative piecewise constant in `[-M, M]`,
/// initial derivatives of order `< r` in `[-1, 1]`.
fn raw_spline<R: Rng + ?Sized>(class: &SmoothnessClass, rng: &mut R) -> PiecewisePoly {
    let r = class.r() as usize;
    let m = class.m();
    let breaks = sorted_breaks(rng);
    let mut derivs: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let mut pieces = Vec::with_capacity(breaks.len() - 1);
    for w in breaks.windows(2) {
        let top = rng.random_range(-m..=m);
        let mut coeffs: Vec<f64> = derivs
            .iter()
            .enumerate()
            .map(|(k, &dk)| dk / factorial(k as u32))
            .collect();
        coeffs.push(top / factorial(r as u32));
        let piece = Poly::new(coeffs);
        let width = w[1] - w[0];
        for (k, dk) in derivs.iter_mut().enumerate() {
            *dk = piece.nth_derivative(k).eval(width);
        }
        pieces.push(piece);
    }
    PiecewisePoly::new(breaks, pieces).expect("breakpoints are sorted and distinct")
}

fn normalized(shape: PiecewisePoly, r: u32) -> UnivariateFactor {
    let sup = shape.sup_abs();
    let shape = if sup > 1.0 {
        shape.scaled(1.0 / sup)
    } else {
        shape
    };
    UnivariateFactor::new(shape, r).expect("generated factor satisfies the class constraints")
}

/// A random class member: integrate a random piecewise-constant `r`-th
/// derivative `r` times, then divide by `max(1, sup)`.
pub fn random_factor<R: Rng + ?Sized>(class: &SmoothnessClass, rng: &mut R) -> UnivariateFactor {
    normalized(raw_spline(class, rng), class.r())
}

fn truncated_power<R: Rng + ?Sized>(class: &SmoothnessClass, rng: &mut R) -> UnivariateFactor {
    let r = class.r();
    let t0 = rng.random_range(0.02..0.98);
    let right = rng.random::<bool>();
    let len: f64 = if right { 1.0 - t0 } else { t0 };
    let reach = class.m() / factorial(r) * len.powi(r as i32);
    let u: f64 = rng.random();
    let amplitude = reach.min(1.0) * (1.0 - u * u * u);
    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    let c = sign * amplitude / len.powi(r as i32);
    let power = Poly::from_roots(&vec![0.0; r as usize]).scaled(c);
    let pieces = if right {
        vec![Poly::zero(), power]
    } else {
        vec![
            Poly::from_roots(&vec![t0; r as usize]).scaled(c),
            Poly::zero(),
        ]
    };
    let shape = PiecewisePoly::new(vec![0.0, t0, 1.0], pieces).expect("valid breakpoints");
    normalized(shape, r)
}

fn clustered_roots<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<f64> {
    let center: f64 = rng.random();
    let width = 10f64.powf(-rng.random_range(0.0..2.0));
    let mut roots: Vec<f64> = (0..count)
        .map(|_| (center + width * (rng.random::<f64>() - 0.5)).clamp(0.0, 1.0))
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots
}

fn rooted<R: Rng + ?Sized>(class: &SmoothnessClass, rng: &mut R) -> UnivariateFactor {
    let r = class.r();
    let roots = clustered_roots(r as usize, rng);
    let lead = class.m() / factorial(r) * rng.random_range(0.5..=1.0);
    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    // fewer distinct roots than r only lowers the degree, never raises the derivative
    let p = Poly::from_roots(&roots).scaled(sign * lead);
    normalized(PiecewisePoly::single(p), r)
}

/// A random member of the class that vanishes at each of `roots` (at most
/// `r` distinct points).
///
/// Subtracting the interpolant of degree `< r` through the roots leaves the
/// `r`-th derivative of the underlying spline unchanged, and the final
/// normalization keeps the zeros.
pub fn factor_with_roots<R: Rng + ?Sized>(
    class: &SmoothnessClass,
    roots: &[f64],
    rng: &mut R,
) -> UnivariateFactor {
    assert!(
        roots.len() <= class.r() as usize,
        "at most r prescribed roots"
    );
    let spline = raw_spline(class, rng);
    let values: Vec<f64> = roots.iter().map(|&x| spline.eval(x)).collect();
    let interp = newton_interpolant(roots, &values);
    let pieces = spline
        .pieces()
        .iter()
        .zip(spline.breaks())
        .map(|(p, &b)| p.add(&interp.shifted(b).scaled(-1.0)))
        .collect();
    let shape = PiecewisePoly::new(spline.breaks().to_vec(), pieces).expect("same breakpoints");
    normalized(shape, class.r())
}

fn forced<R: Rng + ?Sized>(class: &SmoothnessClass, rng: &mut R) -> UnivariateFactor {
    let roots = clustered_roots(class.r() as usize, rng);
    factor_with_roots(class, &roots, rng)
}

pub fn random_factor_of_kind<R: Rng + ?Sized>(
    class: &SmoothnessClass,
    kind: FactorKind,
    rng: &mut R,
) -> UnivariateFactor {
    match kind {
        FactorKind::Spline => random_factor(class, rng),
        FactorKind::TruncatedPower => truncated_power(class, rng),
        FactorKind::Rooted => rooted(class, rng),
        FactorKind::Forced => forced(class, rng),
        FactorKind::Mixed => {
            let pick = FactorKind::ALL[rng.random_range(0..FactorKind::ALL.len())];
            random_factor_of_kind(class, pick, rng)
        }
    }
}

pub fn random_function<R: Rng + ?Sized>(
    class: &SmoothnessClass,
    kind: FactorKind,
    rng: &mut R,
) -> RankOneFunction {
    let factors = (0..class.d())
        .map(|_| random_factor_of_kind(class, kind, rng))
        .collect();
    RankOneFunction::new(factors).expect("factors share r")
}

/// Every factor scaled up to the edge of the class.
pub fn maximized(f: &RankOneFunction, class: &SmoothnessClass) -> RankOneFunction {
    let factors = f
        .factors()
        .iter()
        .map(|g| {
            let c = g.max_scale_in(class);
            // back off by a few ulps so rounding cannot push the range past 1
            g.scaled(c * (1.0 - 4.0 * f64::EPSILON))
                .unwrap_or_else(|_| g.clone())
        })
        .collect();
    RankOneFunction::new(factors).expect("factors share r")
}

/// Draws a class member with sup norm above `eps` from the streams
/// `(seed, key.., attempt)`. A draw below the threshold is first rescaled to
/// the edge of the class; if that is still too small a fresh draw follows,
/// up to [`MAX_ATTEMPTS`] times.
pub fn sample_above(
    class: &SmoothnessClass,
    eps: f64,
    kind: FactorKind,
    seed: u64,
    key: &[u64],
) -> Option<RankOneFunction> {
    let mut stream_key = key.to_vec();
    stream_key.push(0);
    for attempt in 0..MAX_ATTEMPTS {
        *stream_key.last_mut().unwrap() = attempt;
        let mut rng = stream_rng(seed, &stream_key);
        let f = random_function(class, kind, &mut rng);
        if f.sup_norm() > eps {
            return Some(f);
        }
        let g = maximized(&f, class);
        if g.sup_norm() > eps {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::function::Oracle;

    fn class(r: u32, m: f64, d: usize) -> SmoothnessClass {
        SmoothnessClass::new(r, m, d).unwrap()
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| stream_rng(7, &[1, 2]).random()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let b: u64 = stream_rng(7, &[1, 3]).random();
        let c: u64 = stream_rng(8, &[1, 2]).random();
        assert_ne!(a[0], b);
        assert_ne!(a[0], c);
    }

    #[test]
    fn every_kind_stays_in_class() {
        for r in 1..=4 {
            for &m in &[0.3, 1.0, 5.0, 100.0] {
                let cl = class(r, m, 1);
                for (i, kind) in FactorKind::ALL.iter().enumerate() {
                    for s in 0..40 {
                        let mut rng = stream_rng(s, &[r as u64, i as u64]);
                        let f = random_factor_of_kind(&cl, *kind, &mut rng);
                        assert!(f.fits(&cl), "{kind:?} r={r} M={m}: {f:?}");
                        assert!(f.shape().max_degree() <= (r as usize).max(6));
                    }
                }
            }
        }
    }

    #[test]
    fn forced_roots_are_zeros() {
        let cl = class(3, 2.0, 1);
        let mut rng = stream_rng(11, &[]);
        let roots = [0.4, 0.45, 0.52];
        for _ in 0..20 {
            let f = factor_with_roots(&cl, &roots, &mut rng);
            assert!(f.fits(&cl));
            for &x in &roots {
                assert!(f.eval(x).abs() < 1e-13, "{}", f.eval(x));
            }
        }
    }

    #[test]
    fn sample_above_respects_threshold() {
        let cl = class(2, 5.0, 3);
        for t in 0..50 {
            if let Some(f) = sample_above(&cl, 0.5, FactorKind::Mixed, 3, &[t]) {
                assert!(f.sup_norm() > 0.5);
                assert!(f.fits(&cl));
                assert_eq!(f.dim(), 3);
            }
        }
    }
}
