use proptest::prelude::*;
use rankone::pointsets::{
    diagonal_set, digital_net, dispersion_at_most, dispersion_exact, low_dispersion_set, PointSet,
    PointsetMode,
};

/// Largest empty open box by enumerating all boxes whose faces lie on the
/// cube boundary or on point coordinates.
fn brute_force_dispersion(p: &PointSet) -> f64 {
    let d = p.d();
    let bounds: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            let mut b: Vec<f64> = p.iter().map(|x| x[j]).chain([0.0, 1.0]).collect();
            b.sort_by(f64::total_cmp);
            b.dedup();
            b
        })
        .collect();
    let mut best = 0.0f64;
    let mut lo = vec![0.0; d];
    let mut hi = vec![0.0; d];
    fn rec(
        j: usize,
        bounds: &[Vec<f64>],
        p: &PointSet,
        lo: &mut [f64],
        hi: &mut [f64],
        best: &mut f64,
    ) {
        let d = bounds.len();
        if j == d {
            let empty = p
                .iter()
                .all(|x| !(0..d).all(|i| lo[i] < x[i] && x[i] < hi[i]));
            if empty {
                let v: f64 = (0..d).map(|i| hi[i] - lo[i]).product();
                *best = best.max(v);
            }
            return;
        }
        let b = &bounds[j];
        for a in 0..b.len() {
            for c in a + 1..b.len() {
                lo[j] = b[a];
                hi[j] = b[c];
                rec(j + 1, bounds, p, lo, hi, best);
            }
        }
    }
    rec(0, &bounds, p, &mut lo, &mut hi, &mut best);
    best
}

fn point_set(d: usize, max_n: usize) -> impl Strategy<Value = PointSet> {
    // coordinates on a coarse grid so that ties are common
    prop::collection::vec(prop::collection::vec(0u32..=8, d), 0..=max_n).prop_map(move |pts| {
        PointSet::from_points(
            d,
            pts.iter()
                .map(|p| p.iter().map(|&k| k as f64 / 8.0).collect::<Vec<_>>()),
        )
        .unwrap()
    })
}

fn continuous_set(d: usize, max_n: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(0.0f64..=1.0, d), 0..=max_n)
        .prop_map(move |pts| PointSet::from_points(d, pts).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_matches_brute_force_1d(p in point_set(1, 10)) {
        prop_assert_eq!(dispersion_exact(&p).unwrap(), brute_force_dispersion(&p));
    }

    #[test]
    fn exact_matches_brute_force_2d(p in point_set(2, 9)) {
        prop_assert_eq!(dispersion_exact(&p).unwrap(), brute_force_dispersion(&p));
    }

    #[test]
    fn exact_matches_brute_force_2d_continuous(p in continuous_set(2, 9)) {
        let (a, b) = (dispersion_exact(&p).unwrap(), brute_force_dispersion(&p));
        prop_assert!((a - b).abs() <= 1e-12 * b, "{} vs {}", a, b);
    }

    #[test]
    fn exact_matches_brute_force_3d(p in point_set(3, 6)) {
        prop_assert_eq!(dispersion_exact(&p).unwrap(), brute_force_dispersion(&p));
    }

    #[test]
    fn exact_matches_brute_force_3d_continuous(p in continuous_set(3, 6)) {
        let (a, b) = (dispersion_exact(&p).unwrap(), brute_force_dispersion(&p));
        prop_assert!((a - b).abs() <= 1e-12 * b, "{} vs {}", a, b);
    }

    #[test]
    fn adding_points_never_increases_dispersion(p in continuous_set(2, 8), q in continuous_set(2, 3)) {
        let mut both = p.clone();
        for x in q.iter() {
            both.push(x);
        }
        prop_assert!(dispersion_exact(&both).unwrap() <= dispersion_exact(&p).unwrap());
    }

    #[test]
    fn threshold_query_is_consistent(p in continuous_set(3, 8), t in 0.01f64..1.0) {
        let exact = dispersion_exact(&p).unwrap();
        prop_assert_eq!(dispersion_at_most(&p, t).unwrap(), exact <= t);
    }

    #[test]
    fn text_roundtrip_is_exact(p in continuous_set(3, 12)) {
        let (q, _) = PointSet::from_text(&p.to_text(&[])).unwrap();
        prop_assert_eq!(q.coords(), p.coords());
    }
}

#[test]
fn exact_matches_brute_force_4d() {
    let p = digital_net(7, 4).unwrap();
    assert_eq!(dispersion_exact(&p).unwrap(), brute_force_dispersion(&p));
}

#[test]
fn net_matches_reference_generator() {
    use sobol::params::JoeKuoD6;
    use sobol::Sobol;
    let params = JoeKuoD6::minimal();
    for d in [1usize, 2, 5, 32] {
        let ours = digital_net(4096, d).unwrap();
        let reference = Sobol::<u32>::new(d, &params);
        for (i, (x, y)) in ours.iter().zip(reference).enumerate() {
            let y: Vec<f64> = y.iter().map(|&v| v as f64 / 4294967296.0).collect();
            assert_eq!(x, &y[..], "point {i} in d = {d}");
        }
    }
}

#[test]
fn net_prefixes_of_length_power_of_two_are_stratified() {
    // every dyadic interval of length 2^-k in each coordinate holds one point
    for d in 1..=8 {
        let p = digital_net(64, d).unwrap();
        for j in 0..d {
            let mut cells = [0; 64];
            for x in p.iter() {
                cells[(x[j] * 64.0) as usize] += 1;
            }
            assert!(cells.iter().all(|&c| c == 1), "coordinate {j} of d = {d}");
        }
    }
}

#[test]
fn verified_sets_meet_their_target() {
    for (d, target) in [
        (1, 0.1),
        (2, 0.05),
        (2, 0.01),
        (3, 0.05),
        (3, 0.01),
        (4, 0.1),
    ] {
        let p = low_dispersion_set(target, d, PointsetMode::Verified).unwrap();
        let disp = dispersion_exact(&p).unwrap();
        assert!(disp <= target, "d = {d}, target = {target}: {disp}");
        // the prefix before the last doubling missed the target
        if p.len() > 2 * d {
            assert!(dispersion_exact(&p.truncated(p.len() / 2)).unwrap() > target);
        }
    }
}

#[test]
fn diagonal_of_every_size_stays_on_its_segment() {
    for count in 1..20 {
        let p = diagonal_set(count, 0.5, 0.3, 3).unwrap();
        assert_eq!(p.len(), count);
        for x in p.iter() {
            assert!(x.iter().all(|&c| c == x[0] && (0.2..=0.8).contains(&c)));
        }
    }
}
