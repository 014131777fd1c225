use proptest::prelude::*;
use shiftconv::coeffs::{ramanujan_tau, CoefficientTable, FormSpec, DEFAULT_THETA};
use shiftconv::shifted::*;
use shiftconv::voronoi::SmoothWindow;
use shiftconv::Error;
use std::sync::OnceLock;

// Σ λ(n+h) r_ℓ(n) from big-integer τ and lattice enumeration (tools/oracles.py).
const DIRECT_VALUES: &[(u32, u64, f64, f64)] = &[
    (2, 1, 1000.0, -25.74483316186036),
    (3, 5, 500.0, 538.3018219110859),
    (4, 101, 300.0, 6128.930517540346),
];

// The same with weight φ(n/X) of sharpness Δ, ℓ = 2.
const SMOOTHED_VALUES: &[(u64, f64, f64, f64)] = &[
    (1, 400.0, 16.0, -40.618590559497996),
    (7, 400.0, 8.0, -19.369552914868777),
];

fn tau() -> &'static CoefficientTable {
    static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
    TABLE.get_or_init(|| ramanujan_tau(20_000).unwrap())
}

#[test]
fn direct_sums_match_reference() {
    for &(ell, h, x, want) in DIRECT_VALUES {
        let got = shifted_sum_direct(ell, h, x, tau()).unwrap();
        assert!(
            (got - want).abs() <= 1e-10 * want.abs().max(1.0),
            "ℓ = {ell}, h = {h}: {got} vs {want}"
        );
    }
}

#[test]
fn smoothed_sums_match_reference() {
    for &(h, x, delta, want) in SMOOTHED_VALUES {
        let got = shifted_sum_smoothed(2, h, x, delta, tau())
            .unwrap()
            .smoothed;
        assert!(
            (got - want).abs() <= 1e-10 * want.abs(),
            "h = {h}: {got} vs {want}"
        );
    }
}

#[test]
fn empty_range_sums_to_zero() {
    assert_eq!(shifted_sum_direct(2, 1, 0.5, tau()).unwrap(), 0.0);
    assert_eq!(shifted_sum_direct(3, 1, 0.0, tau()).unwrap(), 0.0);
    assert!(shifted_sum_direct(2, 1, -1.0, tau()).is_err());
    assert!(shifted_sum_direct(2, 1, f64::NAN, tau()).is_err());
}

#[test]
fn short_table_is_reported() {
    let small = ramanujan_tau(100).unwrap();
    assert!(matches!(
        shifted_sum_direct(2, 5, 100.0, &small),
        Err(Error::TableTooShort { .. })
    ));
}

#[test]
fn sums_are_linear_in_the_coefficients() {
    let n = 600;
    let a: Vec<f64> = (1..=n).map(|k| ((k * 37) % 11) as f64 - 5.0).collect();
    let b: Vec<f64> = (1..=n).map(|k| ((k * 13) % 7) as f64 * 0.25).collect();
    let c: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 2.0 * x - 3.0 * y).collect();
    let t = |v: &Vec<f64>| CoefficientTable::new(FormSpec::delta(), v.clone()).unwrap();
    let (ta, tb, tc) = (t(&a), t(&b), t(&c));
    for ell in [2, 3] {
        let sa = shifted_sum_direct(ell, 3, 500.0, &ta).unwrap();
        let sb = shifted_sum_direct(ell, 3, 500.0, &tb).unwrap();
        let sc = shifted_sum_direct(ell, 3, 500.0, &tc).unwrap();
        assert!((sc - (2.0 * sa - 3.0 * sb)).abs() < 1e-9 * sc.abs().max(1.0));
    }
}

#[test]
fn zero_shift_is_a_plain_twisted_count() {
    let sums = ShiftedSums::new(2, 1000, tau()).unwrap();
    let r = shiftconv::arith::repr_count(2, 1000).unwrap();
    let want: f64 = (1..=1000)
        .map(|n| tau().lambda(n as u64) * r.get(n) as f64)
        .sum();
    assert!((sums.direct(0, 1000.0).unwrap() - want).abs() < 1e-10 * want.abs().max(1.0));
}

#[test]
fn smoothing_gap_is_confined_to_edges() {
    let sums = ShiftedSums::new(2, 5000, tau()).unwrap();
    for h in [1, 5, 101] {
        for (x, delta) in [(1000.0, 8.0), (5000.0, 32.0)] {
            let s = sums.smoothed(h, x, delta).unwrap();
            assert!(
                s.gap.abs() <= s.edge_bound + 1e-9,
                "h = {h}, X = {x}: {s:?}"
            );
            assert!(s.edge_count > 0);
        }
    }
}

#[test]
fn trivial_bound_dominates() {
    let sums = ShiftedSums::new(3, 3000, tau()).unwrap();
    let running = sums.running_sums(7, 3000.0).unwrap();
    assert_eq!(running.len(), 3001);
    for x in [10.0, 100.0, 1000.0, 3000.0] {
        let s = sums.direct(7, x).unwrap();
        assert_eq!(s, running[x as usize]);
        assert!(s.abs() <= sums.trivial_bound(7, x).unwrap());
    }
}

#[test]
fn circle_reconstruction_small() {
    for (x, h, delta) in [(100.0, 1, 8.0), (400.0, 7, 16.0)] {
        let r = circle_reconstruction(h, x, delta, tau()).unwrap();
        assert!(r.relerr <= 1e-4, "X = {x}, h = {h}: {r:?}");
        assert!(r.reconstructed.im.abs() <= 1e-4 * r.direct.abs());
        assert_eq!(r.order, (5.0 * f64::sqrt(x)) as i64);
    }
    assert!(circle_reconstruction(1, 2e4, 8.0, tau()).is_err());
    assert!(circle_reconstruction(1, 0.5, 8.0, tau()).is_err());
}

#[test]
fn integrand_at_zero_is_the_unweighted_mass() {
    let window = SmoothWindow::theta_bump(400.0, 16.0).unwrap();
    let integrand = CircleIntegrand::new(tau(), 1, &window).unwrap();
    let g0 = integrand.g(0.0);
    let want: f64 = (1..=400u64)
        .map(|n| tau().lambda(n + 1) * window.value(n as f64))
        .sum();
    assert!((g0.re - want).abs() < 1e-10 * want.abs().max(1.0) && g0.im.abs() < 1e-10);
    let f0 = 2.0 * 20.0 + 1.0;
    assert!((integrand.eval(0.0).unwrap() - g0 * f0 * f0).norm() < 1e-8 * (g0.norm() * f0 * f0));
}

#[test]
fn grid_validation() {
    let t = tau();
    let grid = |xs: Vec<f64>, hs: Vec<u64>, delta: f64| ExperimentGrid {
        ell: 2,
        x_values: xs,
        h_values: hs,
        delta,
        table: t,
    };
    let good = vec![100.0, 300.0, 1000.0, 5000.0];
    assert!(grid(good.clone(), vec![1, 5], 8.0).validate().is_ok());
    assert!(grid(vec![100.0, 300.0, 1000.0], vec![1], 8.0)
        .validate()
        .is_err());
    assert!(grid(vec![100.0, 90.0, 1000.0, 5000.0], vec![1], 8.0)
        .validate()
        .is_err());
    assert!(grid(vec![100.0, 200.0, 2000.0, 3000.0], vec![1], 8.0)
        .validate()
        .is_err());
    assert!(grid(good.clone(), vec![0], 8.0).validate().is_err());
    assert!(grid(good.clone(), vec![1], 4.0).validate().is_err());
    assert!(matches!(
        grid(vec![1000.0, 3000.0, 10_000.0, 40_000.0], vec![1], 8.0).validate(),
        Err(Error::TableTooShort { .. })
    ));
}

#[test]
fn exponent_fit_small_grid() {
    let grid = ExperimentGrid {
        ell: 2,
        x_values: vec![300.0, 1000.0, 3000.0, 10_000.0],
        h_values: vec![5, 1],
        delta: 8.0,
        table: tau(),
    };
    let (points, fits) = exponent_fit(&grid).unwrap();
    assert_eq!(points.len(), 8);
    assert_eq!(fits.iter().map(|f| f.h).collect::<Vec<_>>(), vec![1, 5]);
    for f in &fits {
        assert!(f.slope.is_finite() && f.slope < 1.5, "{f:?}");
        assert!((f.theorem_exponent - theorem_exponent(2, DEFAULT_THETA)).abs() < 1e-15);
    }
    for p in &points {
        assert!(p.direct.abs() <= p.trivial_bound);
        assert!(p.dyadic_rms > 0.0);
    }
}

#[test]
fn theorem_exponents() {
    assert!((theorem_exponent(2, 7.0 / 64.0) - (1.0 - 25.0 / 384.0)).abs() < 1e-15);
    assert!((theorem_exponent(2, 7.0 / 64.0) - 0.934896).abs() < 1e-6);
    assert!((theorem_exponent(3, 0.0) - 4.0 / 3.0).abs() < 1e-15);
    assert!((two_squares_exponent(7.0 / 64.0) - 0.9296875).abs() < 1e-15);
    assert!((two_squares_exponent(0.0) - 0.875).abs() < 1e-15);
}

#[test]
fn least_squares_recovers_a_line() {
    let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|x| 0.75 * x - 2.0).collect();
    let (slope, intercept, res) = least_squares(&xs, &ys);
    assert!((slope - 0.75).abs() < 1e-14 && (intercept + 2.0).abs() < 1e-13 && res < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn running_sums_telescope(h in 0u64..200, x in 1.0f64..2000.0) {
        let sums = ShiftedSums::new(2, 2000, tau()).unwrap();
        let running = sums.running_sums(h, x).unwrap();
        let n = x.floor() as usize;
        prop_assert_eq!(running.len(), n + 1);
        prop_assert!((running[n] - sums.direct(h, x).unwrap()).abs() < 1e-9 * running[n].abs().max(1.0));
    }

    #[test]
    fn exponent_is_monotone_in_theta(ell in 2u32..8, a in 0.0f64..0.25, b in 0.0f64..0.25) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(theorem_exponent(ell, lo) <= theorem_exponent(ell, hi));
    }
}
