use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shiftconv::coeffs::{ramanujan_tau, FormSpec};
use shiftconv::special::{Branch, KernelSpec};
use shiftconv::voronoi::*;
use shiftconv::Error;
use std::sync::OnceLock;

// mpmath quadrature of w(x)x^{s/2}J_s(4π√(xy)) with w = φ(x/X) (tools/oracles.py).
const TRANSFORM_W_VALUES: &[(u32, f64, f64, f64, f64)] = &[
    (2, 100.0, 8.0, 0.01, -5.276717021723052),
    (3, 100.0, 8.0, 0.05, 0.08835032542072042),
    (4, 200.0, 16.0, 0.02, -7.889772981464366),
];

fn tau_table() -> &'static shiftconv::coeffs::CoefficientTable {
    static TABLE: OnceLock<shiftconv::coeffs::CoefficientTable> = OnceLock::new();
    TABLE.get_or_init(|| ramanujan_tau(60_000).unwrap())
}

#[test]
fn window_shape() {
    let w = SmoothWindow::theta_bump(1000.0, 16.0).unwrap();
    assert_eq!(w.support(), (500.0, 1000.0));
    assert_eq!(w.value(750.0), 1.0);
    assert_eq!(w.value(500.0), 0.0);
    assert_eq!(w.value(1000.0), 0.0);
    assert_eq!(w.value(499.0), 0.0);
    let (pl, ph) = w.plateau();
    assert!((pl - 562.5).abs() < 1e-12 && (ph - 937.5).abs() < 1e-12);
    let mass = w.mass();
    assert!((500.0 - 2.0 * 1000.0 / 16.0..=500.0).contains(&mass));
    let riemann: f64 = (0..100_000)
        .map(|i| w.value(500.0 + (i as f64 + 0.5) * 0.005) * 0.005)
        .sum();
    assert!((riemann - mass).abs() < 1e-6, "{riemann} vs {mass}");
}

#[test]
fn window_rejects_bad_parameters() {
    assert!(SmoothWindow::theta_bump(100.0, 4.0).is_err());
    assert!(SmoothWindow::theta_bump(-1.0, 8.0).is_err());
    assert!(SmoothWindow::theta_bump(f64::NAN, 8.0).is_err());
    assert!(make_window(WindowKind::PlateauBump, 100.0, 8.0, 7).is_ok());
}

#[test]
fn window_derivative_bounded_by_sharpness() {
    let (x, delta) = (400.0, 16.0);
    let w = SmoothWindow::theta_bump(x, delta).unwrap();
    let mut worst = [0.0f64; 3];
    for i in 0..20_000 {
        let t = 200.0 + 200.0 * i as f64 / 20_000.0;
        let d = w.derivatives(t);
        for j in 0..3 {
            worst[j] = worst[j].max(d[j].abs() * (x / delta).powi(j as i32));
        }
    }
    for c in worst {
        assert!(c < 10.0, "{worst:?}");
    }
}

#[test]
fn transform_w_matches_reference() {
    for &(ell, x, delta, y, want) in TRANSFORM_W_VALUES {
        let w = SmoothWindow::theta_bump(x, delta).unwrap();
        let got = transform_w(&w, 0.0, ell, y).unwrap();
        assert!(
            (got.re - want).abs() <= 1e-8 * want.abs().max(1.0),
            "ℓ = {ell}: {got} vs {want}"
        );
        assert!(got.im.abs() < 1e-12);
    }
}

#[test]
fn sums_of_squares_identity() {
    let window = SmoothWindow::theta_bump(500.0, 16.0).unwrap();
    for ell in [2, 3, 4] {
        let mut checker = ReprVoronoi::new(ell, window).unwrap();
        for q in [1, 3, 5] {
            for r in checker.check_all(q).unwrap() {
                assert!(
                    r.relerr <= 1e-5,
                    "ℓ = {ell}, {}/{}: {:.3e}",
                    r.a,
                    r.q,
                    r.relerr
                );
            }
        }
    }
}

#[test]
fn sums_of_squares_identity_sharper_window() {
    let window = SmoothWindow::theta_bump(1000.0, 32.0).unwrap();
    let mut checker = ReprVoronoi::new(3, window).unwrap();
    for q in [1, 3] {
        for r in checker.check_all(q).unwrap() {
            assert!(r.relerr <= 1e-5, "{}/{}: {:.3e}", r.a, r.q, r.relerr);
        }
    }
}

#[test]
fn sums_of_squares_identity_even_moduli() {
    let window = SmoothWindow::theta_bump(400.0, 16.0).unwrap();
    for ell in [2, 4] {
        let mut checker = ReprVoronoi::new(ell, window).unwrap();
        for q in [4, 8] {
            for r in checker.check_all(q).unwrap() {
                assert!(
                    r.relerr <= 1e-5,
                    "ℓ = {ell}, {}/{}: {:.3e}",
                    r.a,
                    r.q,
                    r.relerr
                );
            }
        }
    }
}

#[test]
fn overlong_dual_sum_is_reported() {
    let window = SmoothWindow::theta_bump(500.0, 32.0).unwrap();
    let mut checker = ReprVoronoi::new(3, window).unwrap();
    assert!(matches!(checker.check(1, 7), Err(Error::Truncation(_))));
}

#[test]
fn sums_of_squares_rejects_unsupported_moduli() {
    let window = SmoothWindow::theta_bump(300.0, 8.0).unwrap();
    let mut checker = ReprVoronoi::new(2, window).unwrap();
    assert!(matches!(checker.check(1, 10), Err(Error::Unsupported(_))));
    assert!(matches!(
        checker.check(5, 10),
        Err(Error::NotInvertible { .. })
    ));
    assert!(ReprVoronoi::new(1, window).is_err());
}

#[test]
fn discriminant_form_identity() {
    let window = SmoothWindow::theta_bump(1000.0, 16.0).unwrap();
    let mut checker = FormVoronoi::new(tau_table(), window).unwrap();
    for q in [1, 2, 4] {
        for r in checker.check_all(q).unwrap() {
            assert!(r.relerr <= 1e-5, "{}/{}: {:.3e}", r.a, r.q, r.relerr);
            assert_eq!(r.main_term.norm(), 0.0);
        }
    }
}

#[test]
fn short_table_is_reported() {
    let tau = ramanujan_tau(500).unwrap();
    let window = SmoothWindow::theta_bump(1000.0, 16.0).unwrap();
    assert!(matches!(
        FormVoronoi::new(&tau, window),
        Err(Error::TableTooShort { .. })
    ));
}

#[test]
fn minus_branch_vanishes_for_holomorphic_forms() {
    let spec = KernelSpec::new(FormSpec::delta(), Branch::Minus);
    assert!(spec.is_zero());
    let w = SmoothWindow::theta_bump(100.0, 8.0).unwrap();
    assert_eq!(transform_v(&w, 0.0, &spec, 0.3).unwrap().norm(), 0.0);
}

#[test]
fn integration_by_parts_split() {
    let x = 200.0;
    let window = SmoothWindow::theta_bump(x, 8.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let ell = rng.gen_range(2..=4);
        let beta = rng.gen_range(-1.0..=1.0) / x;
        let y = 10f64.powf(rng.gen_range(-1.0..2.0)) / x;
        let split = w_beta_split(&window, beta, ell, y).unwrap();
        assert!(
            split.relative_defect() <= 1e-6,
            "ℓ = {ell}, β = {beta}, y = {y}: {split:?}"
        );
    }
}

#[test]
fn small_beta_does_not_change_envelope() {
    for ell in [2, 3, 4] {
        let base = w_beta_envelope_fit(ell, 500.0, 8.0, 0.0, 25)
            .unwrap()
            .constant;
        for beta_x in [-1.0, 0.5, 1.0] {
            let c = w_beta_envelope_fit(ell, 500.0, 8.0, beta_x, 25)
                .unwrap()
                .constant;
            assert!(
                c <= 2.0 * base && c >= base / 2.0,
                "ℓ = {ell}, βX = {beta_x}: {c} vs {base}"
            );
        }
    }
    assert!(w_beta_envelope_fit(2, 500.0, 8.0, 1.5, 5).is_err());
}

#[test]
fn envelope_constants_stable_across_scales() {
    let spec = KernelSpec::new(FormSpec::delta(), Branch::Plus);
    let v_small = v_envelope_fits(&spec, 1e3, 16.0, 25).unwrap();
    let v_large = v_envelope_fits(&spec, 1e4, 16.0, 25).unwrap();
    for j in 0..3 {
        let r = v_large[j].constant / v_small[j].constant;
        assert!((1.0 / 3.0..=3.0).contains(&r), "j = {j}: ratio {r}");
    }
    for ell in [2, 3, 4] {
        let small = w_envelope_fits(ell, 1e3, 16.0, 25).unwrap();
        let large = w_envelope_fits(ell, 1e4, 16.0, 25).unwrap();
        for j in 0..2 {
            let r = large[j].constant / small[j].constant;
            assert!(
                (1.0 / 3.0..=3.0).contains(&r),
                "ℓ = {ell}, j = {j}: ratio {r}"
            );
        }
    }
}

#[test]
fn transform_profile_requires_increasing_grid() {
    let spec = KernelSpec::new(FormSpec::delta(), Branch::Plus);
    let w = SmoothWindow::theta_bump(100.0, 8.0).unwrap();
    assert!(transform_profile(&w, 0.0, &spec, &[0.1, 0.05]).is_err());
    assert!(transform_v(&w, 0.0, &spec, -1.0).is_err());
    let p = transform_profile(&w, 0.0, &spec, &log_grid(1e-3, 1.0, 5)).unwrap();
    assert_eq!(p.values.len(), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn window_is_a_bump(x in 10.0f64..1e5, delta in 4.5f64..64.0, t in -0.5f64..1.5) {
        let w = SmoothWindow::theta_bump(x, delta).unwrap();
        let v = w.value(t * x);
        prop_assert!((0.0..=1.0).contains(&v));
        if !(0.5..=1.0).contains(&t) {
            prop_assert_eq!(v, 0.0);
        }
        let (pl, ph) = w.plateau();
        if t * x >= pl && t * x <= ph {
            prop_assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ramp_is_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(ramp(lo) <= ramp(hi));
        prop_assert!((ramp(a) + ramp(1.0 - a) - 1.0).abs() < 1e-14);
    }
}
