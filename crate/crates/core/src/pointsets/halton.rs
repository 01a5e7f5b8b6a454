use crate::model::SmoothnessClass;

use super::ceil_count;

/// First `d` primes.
pub fn first_primes(d: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(d);
    let mut candidate = 2u64;
    while primes.len() < d {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| candidate % p != 0)
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Size of the Halton-based detector from the earlier existence argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HaltonSize {
    /// The size, or `u64::MAX` when saturated.
    pub value: u64,
    /// `log10` of the size, finite even when `value` saturates.
    pub log10: f64,
    pub saturated: bool,
}

/// `ceil((2^d M^d / eps)^(1/r) * 2^d * p_1 ... p_d)`, the Halton point count
/// needed to detect a function with sup norm above `eps`.
pub fn halton_baseline_size(class: &SmoothnessClass, eps: f64) -> HaltonSize {
    let d = class.d();
    let (r, m) = (class.r() as f64, class.m());
    let ln2 = std::f64::consts::LN_2;
    let ln_primes: f64 = first_primes(d).iter().map(|&p| (p as f64).ln()).sum();
    let ln_size = (d as f64 * (ln2 + m.ln()) - eps.ln()) / r + d as f64 * ln2 + ln_primes;
    let log10 = ln_size / std::f64::consts::LN_10;
    if ln_size >= 63.0 * ln2 {
        return HaltonSize {
            value: u64::MAX,
            log10,
            saturated: true,
        };
    }
    let primes: f64 = first_primes(d).iter().map(|&p| p as f64).product();
    let direct =
        (2f64.powi(d as i32) * m.powi(d as i32) / eps).powf(1.0 / r) * 2f64.powi(d as i32) * primes;
    HaltonSize {
        value: ceil_count(direct) as u64,
        log10,
        saturated: false,
    }
}
