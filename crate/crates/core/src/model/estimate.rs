use crate::error::{usage, Result};
use crate::model::function::Oracle;

const GOLDEN_ITERATIONS: usize = 50;
const SWEEPS: usize = 3;

/// Largest `n` with `n^d <= budget`.
fn points_per_axis(budget: u64, d: usize) -> u64 {
    let mut n = (budget as f64).powf(1.0 / d as f64).floor() as u64;
    while n > 1 && (n as f64).powi(d as i32) > budget as f64 {
        n -= 1;
    }
    while ((n + 1) as f64).powi(d as i32) <= budget as f64 {
        n += 1;
    }
    n
}

/// Lower estimate of `sup |f - a|` over `[0,1]^d`.
///
/// Evaluates the gap on a full tensor grid with `floor(budget^(1/d))` points
/// per axis (endpoints included), then polishes the best grid point with
/// coordinate-wise golden-section search inside its neighbouring cells. The
/// result is the largest gap seen anywhere, so it never overstates the true
/// error; it is not a certificate.
pub fn sup_error_estimate<F: Oracle + ?Sized, A: Oracle + ?Sized>(
    f: &F,
    a: &A,
    budget: u64,
) -> Result<f64> {
    let d = f.dim();
    if a.dim() != d {
        return usage("function and surrogate dimensions differ");
    }
    if d >= 64 || budget < (1u64 << d) {
        return usage(format!("budget {budget} is below 2^d for d = {d}"));
    }
    let n = points_per_axis(budget, d);
    let step = 1.0 / (n - 1) as f64;
    let gap = |x: &[f64]| (f.eval(x) - a.eval(x)).abs();

    let mut idx = vec![0u64; d];
    let mut x = vec![0.0; d];
    let mut best = f64::NEG_INFINITY;
    let mut best_x = x.clone();
    'grid: loop {
        for (xi, &k) in x.iter_mut().zip(&idx) {
            *xi = (k as f64 * step).min(1.0);
        }
        let g = gap(&x);
        if g > best || best.is_nan() {
            best = g;
            best_x.copy_from_slice(&x);
        }
        for k in idx.iter_mut() {
            *k += 1;
            if *k < n {
                continue 'grid;
            }
            *k = 0;
        }
        break;
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut probe = best_x.clone();
    for _ in 0..SWEEPS {
        for i in 0..d {
            let centre = probe[i];
            let (mut lo, mut hi) = ((centre - step).max(0.0), (centre + step).min(1.0));
            let mut eval_at = |t: f64, probe: &mut Vec<f64>| {
                probe[i] = t;
                let g = gap(probe);
                if g > best {
                    best = g;
                    best_x.copy_from_slice(probe);
                }
                g
            };
            let mut c = hi - inv_phi * (hi - lo);
            let mut e = lo + inv_phi * (hi - lo);
            let mut gc = eval_at(c, &mut probe);
            let mut ge = eval_at(e, &mut probe);
            for _ in 0..GOLDEN_ITERATIONS {
                if gc >= ge {
                    hi = e;
                    e = c;
                    ge = gc;
                    c = hi - inv_phi * (hi - lo);
                    gc = eval_at(c, &mut probe);
                } else {
                    lo = c;
                    c = e;
                    gc = ge;
                    e = lo + inv_phi * (hi - lo);
                    ge = eval_at(e, &mut probe);
                }
            }
            probe.copy_from_slice(&best_x);
        }
    }
    Ok(best)
}
