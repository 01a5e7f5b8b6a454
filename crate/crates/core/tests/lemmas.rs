use rankone::detectors::{
    c_delta, choose_delta, detector_moderate, detector_small, is_detector_empirical,
    pseudo_dimension_of, DetectorOptions, DetectorParams,
};
use rankone::lemmas::{
    almost_empty_suite, diagonal_suite, empty_interval_suite, harmless_suite, zeros_at_half_suite,
    SuiteOutcome,
};
use rankone::pointsets::low_dispersion_set;
use rankone::{factorial, FactorKind, PointsetMode, Regime, SmoothnessClass};

const CASES: usize = 500;

fn check(name: &str, out: SuiteOutcome) {
    assert!(out.cases >= CASES, "{name}: only {} cases", out.cases);
    assert!(
        out.passed(),
        "{name}: {:?}",
        &out.counterexamples[..out.counterexamples.len().min(5)]
    );
}

#[test]
fn empty_interval() {
    check("empty interval", empty_interval_suite(CASES, 11));
}

#[test]
fn zeros_near_half_bound_the_norm() {
    check("zeros at 1/2", zeros_at_half_suite(CASES, 12));
}

#[test]
fn few_crowded_factors() {
    check("harmless", harmless_suite(CASES, 13));
}

#[test]
fn diagonal_points_see_a_nonzero() {
    check("diagonal", diagonal_suite(CASES, 14));
}

#[test]
fn almost_empty_window() {
    check("almost empty", almost_empty_suite(CASES, 15));
}

// d_0 against a plain scan over k
#[test]
fn pseudo_dimension_by_scan() {
    for &c in &[0.1f64, 0.5, 0.9, 0.99] {
        for d in 1..=12 {
            for &eps in &[0.5, 0.1, 0.01, 1e-4] {
                let scan = (0..=d)
                    .filter(|&k| c.powi(k as i32) > eps)
                    .max()
                    .unwrap_or(0);
                assert_eq!(
                    pseudo_dimension_of(c, d, eps),
                    scan,
                    "c {c} d {d} eps {eps}"
                );
            }
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn moderate_cardinality() {
    let opts = DetectorOptions::default();
    for r in 1..=3u32 {
        let m = 1.5 * factorial(r);
        for d in 1..=4usize {
            for &eps in &[0.5, 0.2] {
                let class = SmoothnessClass::new(r, m, d).unwrap();
                let params = DetectorParams::new(&class, eps, Regime::Moderate, None).unwrap();
                let d0 = params.d0.unwrap();
                let n1 = if d0 == 0 {
                    1
                } else {
                    low_dispersion_set(params.target_dispersion, d0, PointsetMode::Verified)
                        .unwrap()
                        .len()
                };
                let p = detector_moderate(&class, eps, &opts).unwrap();
                let expected = binom(d, d0) * n1 * ((r as usize - 1) * (d - d0) + 1);
                assert_eq!(p.len(), expected, "r {r} d {d} eps {eps} d0 {d0}");
            }
        }
    }
}

#[test]
fn small_cardinality() {
    let opts = DetectorOptions::default();
    for r in 1..=3u32 {
        for d in 1..=3usize {
            let class = SmoothnessClass::new(r, factorial(r), d).unwrap();
            let eps: f64 = 0.3;
            let target = eps.powf(1.0 / r as f64) / 2.0;
            let p0 = low_dispersion_set(target, d, PointsetMode::Verified).unwrap();
            let p = detector_small(&class, eps, &opts).unwrap();
            assert_eq!(p.len(), ((r as usize - 1) * d + 1) * p0.len());
        }
    }
}

#[test]
fn delta_choice() {
    for r in 1..=4u32 {
        for t in [0.05, 0.5, 0.95] {
            let (low, high) = (factorial(r), 2f64.powi(r as i32) * factorial(r));
            let m = low + t * (high - low);
            let delta = choose_delta(r, m).unwrap();
            assert!(delta > 0.0 && delta <= 0.5);
            assert!(c_delta(r, m, delta) < 1.0, "r {r} M {m}");
        }
    }
}

// every detector finds a non-zero of members above eps in its own regime
#[test]
fn detectors_find_members_above_eps() {
    let opts = DetectorOptions::default();
    for (r, m) in [
        (1u32, 2.0),
        (2, 2.0),
        (2, 5.0),
        (2, 8.0),
        (3, 6.0),
        (3, 20.0),
        (3, 48.0),
    ] {
        for d in 1..=3usize {
            for &eps in &[0.5, 0.25, 0.1] {
                let class = SmoothnessClass::new(r, m, d).unwrap();
                let det = match rankone::detectors::Detector::build(&class, eps, None, &opts) {
                    Ok(det) => det,
                    Err(rankone::Error::Resource(_)) => continue,
                    Err(e) => panic!("{e}"),
                };
                for kind in [FactorKind::Mixed, FactorKind::Rooted] {
                    let report =
                        is_detector_empirical(&det.points, &class, eps, 200, 21, kind).unwrap();
                    assert!(
                        report.passed(),
                        "r {r} M {m} d {d} eps {eps} {kind:?}: {} misses",
                        report.failures.len()
                    );
                }
            }
        }
    }
}
