use proptest::prelude::*;
use rankone::model::{
    random_factor, random_factor_of_kind, random_function, stream_rng, FactorKind, Oracle,
    SmoothnessClass, UnivariateFactor,
};

fn class_strategy(max_d: usize) -> impl Strategy<Value = SmoothnessClass> {
    (1u32..=4, 0.05f64..60.0, 1usize..=max_d)
        .prop_map(|(r, m, d)| SmoothnessClass::new(r, m, d).unwrap())
}

fn kind_strategy() -> impl Strategy<Value = FactorKind> {
    prop::sample::select(vec![
        FactorKind::Spline,
        FactorKind::TruncatedPower,
        FactorKind::Rooted,
        FactorKind::Forced,
        FactorKind::Mixed,
    ])
}

/// Largest `r`-th forward difference quotient on a grid of `n + 1` points.
fn finite_difference_sup(g: &UnivariateFactor, r: u32, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let values: Vec<f64> = (0..=n).map(|k| g.eval(k as f64 * h)).collect();
    let mut diff = values;
    for _ in 0..r {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    diff.iter().map(|v| v.abs()).fold(0.0, f64::max) / h.powi(r as i32)
}

/// Grid size and the rounding allowance of the difference quotient.
fn grid_for(r: u32) -> (usize, f64) {
    let n = [10_000, 10_000, 1_000, 200][(r as usize - 1).min(3)];
    let rounding = 2f64.powi(r as i32 + 1) * f64::EPSILON * (n as f64).powi(r as i32);
    (n, rounding)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivative_bound_survives_finite_differences(
        class in class_strategy(1), kind in kind_strategy(), seed in any::<u64>()
    ) {
        let g = random_factor_of_kind(&class, kind, &mut stream_rng(seed, &[0]));
        prop_assert!(g.fits(&class));
        let (n, rounding) = grid_for(class.r());
        let fd = finite_difference_sup(&g, class.r(), n);
        prop_assert!(fd <= g.deriv_r_sup() + 1e-6 + rounding, "{} > {}", fd, g.deriv_r_sup());
    }

    #[test]
    fn sup_norm_matches_grid(class in class_strategy(3), seed in any::<u64>()) {
        let f = random_function(&class, FactorKind::Mixed, &mut stream_rng(seed, &[1]));
        let d = class.d();
        let n = [2001usize, 201, 41][d - 1];
        let h = 1.0 / (n - 1) as f64;
        let lipschitz: f64 = f.factors().iter().map(|g| g.shape().derivative_sup(1)).sum();
        let mut idx = vec![0usize; d];
        let mut x = vec![0.0; d];
        let mut grid_max = 0.0f64;
        'grid: loop {
            for (xi, &k) in x.iter_mut().zip(&idx) {
                *xi = k as f64 * h;
            }
            grid_max = grid_max.max(f.eval(&x).abs());
            for k in idx.iter_mut() {
                *k += 1;
                if *k < n {
                    continue 'grid;
                }
                *k = 0;
            }
            break;
        }
        let norm = f.sup_norm();
        prop_assert!(grid_max <= norm * (1.0 + 1e-12) + 1e-300);
        prop_assert!(norm <= grid_max + lipschitz * h / 2.0 + 1e-12);
    }

    #[test]
    fn evaluation_is_the_left_to_right_product(
        class in class_strategy(5), seed in any::<u64>(), x in prop::collection::vec(0.0f64..=1.0, 5)
    ) {
        let f = random_function(&class, FactorKind::Mixed, &mut stream_rng(seed, &[2]));
        let x = &x[..class.d()];
        let mut acc = 1.0;
        for (g, &xi) in f.factors().iter().zip(x) {
            acc *= g.eval(xi);
        }
        prop_assert_eq!(f.eval(x).to_bits(), acc.to_bits());
        prop_assert_eq!(f.value(x).unwrap().to_bits(), acc.to_bits());
    }

    #[test]
    fn fibers_stay_in_class(
        class in class_strategy(4), seed in any::<u64>(), z in prop::collection::vec(0.0f64..=1.0, 4), i in 0usize..4
    ) {
        let f = random_function(&class, FactorKind::Mixed, &mut stream_rng(seed, &[3]));
        let i = i % class.d();
        let z = &z[..class.d()];
        let g = f.fiber(i, z).unwrap();
        prop_assert!(g.deriv_r_sup() <= class.m() * (1.0 + 1e-12));
        prop_assert!(g.sup_norm() <= 1.0 + 1e-12);
        for t in [0.0, 0.3, 0.77, 1.0] {
            let mut y = z.to_vec();
            y[i] = t;
            prop_assert!((g.eval(t) - f.eval(&y)).abs() <= 1e-14);
        }
    }
}

#[test]
fn second_differences_of_a_fixed_factor() {
    let class = SmoothnessClass::new(2, 2.0, 1).unwrap();
    let g = random_factor(&class, &mut stream_rng(20240601, &[0]));
    assert!(g.deriv_r_sup() <= 2.0);
    assert!(finite_difference_sup(&g, 2, 10_000) <= g.deriv_r_sup() + 1e-6);
}

#[test]
fn eval_examples() {
    use rankone::model::RankOneFunction;
    let x1 = UnivariateFactor::polynomial(vec![0.0, 1.0], 1).unwrap();
    let f = RankOneFunction::new(vec![x1.clone(), x1.clone()]).unwrap();
    assert_eq!(f.value(&[0.5, 0.5]).unwrap(), 0.25);
    assert!(f.value(&[0.5]).is_err());
    let one_minus = UnivariateFactor::polynomial(vec![1.0, -1.0], 1).unwrap();
    let g = RankOneFunction::new(vec![x1.clone(), one_minus]).unwrap();
    assert_eq!(g.sup_norm(), 1.0);
    let fib = f.fiber(0, &[0.3, 0.5]).unwrap();
    assert_eq!(fib.eval(0.8), 0.4);
    let fib = f.fiber(1, &[0.0, 0.9]).unwrap();
    assert_eq!(fib.sup_norm(), 0.0);
    assert!(f.fiber(2, &[0.0, 0.9]).is_err());
}
