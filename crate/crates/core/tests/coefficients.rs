use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shiftconv::coeffs::*;
use shiftconv::expsums::e;
use shiftconv::{Complex64, Error};
use std::sync::OnceLock;

// Big-integer expansion of q·Π(1 − q^m)^24 (tools/oracles.py).
const TAU_VALUES: &[(usize, i128)] = &[
    (2, -24),
    (3, 252),
    (10, -115920),
    (100, 37534859200),
    (997, -21400415987399554),
    (1000, -30328412970240000),
];

#[test]
fn tau_matches_reference() {
    let tau = ramanujan_tau_integers(1000).unwrap();
    assert_eq!(tau[1], 1);
    for &(n, want) in TAU_VALUES {
        assert_eq!(tau[n], want, "tau({n})");
    }
}

#[test]
fn normalized_values() {
    let t = ramanujan_tau(3).unwrap();
    assert_eq!(t.lambda(1), 1.0);
    assert!((t.lambda(2) + 0.530_330_085_9).abs() < 1e-10);
    assert_eq!(t.n_max(), 3);
}

#[test]
fn tau_range_is_enforced() {
    assert!(ramanujan_tau(0).is_err());
    assert!(ramanujan_tau_integers(TAU_MAX_INDEX + 1).is_err());
}

#[test]
fn native_table_is_clean() {
    let t = ramanujan_tau(1000).unwrap();
    let r = check_hecke_relations(&t);
    assert!(r.is_clean(), "{:?}", r.violations.first());
    assert!(r.relations_checked > 1000);
    assert!(check_divisor_bound(&t).is_empty());
}

#[test]
fn corrupted_entry_is_located() {
    let t = ramanujan_tau(200).unwrap();
    let mut v = t.values().to_vec();
    v[3] += 1.0;
    let bad = CoefficientTable::new(t.spec, v).unwrap();
    let r = check_hecke_relations(&bad);
    assert!(!r.is_clean());
    for viol in &r.violations {
        assert!(viol.indices().contains(&4), "{viol:?}");
    }
    // λ(4) enters the p = 2 relations for k = 1, 2, 3 and λ(4m) = λ(4)λ(m) for odd m ≤ 50.
    let expected = 3 + (3..=50).step_by(2).count();
    assert_eq!(r.violations.len(), expected);
}

#[test]
fn single_entry_table_is_vacuous() {
    let t = CoefficientTable::new(FormSpec::delta(), vec![1.0]).unwrap();
    assert!(check_hecke_relations(&t).is_clean());
}

#[test]
fn file_parsing() {
    let (t, _) = read_coefficients("1 1.0\n2 -0.53033\n".as_bytes(), FormSpec::delta()).unwrap();
    assert_eq!(t.n_max(), 2);
    let gap = read_coefficients("1 1.0\n3 0.2\n".as_bytes(), FormSpec::delta()).unwrap_err();
    assert_eq!(
        gap,
        Error::Gap {
            expected: 2,
            found: 3
        }
    );
    let bad = read_coefficients("1 1.0\n2 x\n".as_bytes(), FormSpec::delta()).unwrap_err();
    assert!(matches!(bad, Error::Parse { line: 2, .. }));
}

#[test]
fn metadata_overrides_spec() {
    let text = "# kind = maass\n# weight = 0\n# level = 1\n# mu = 4.5\n# theta = 0.1\n# omega = 1 0\n1 1\n2 0.5\n";
    let (t, _) = read_coefficients(text.as_bytes(), FormSpec::delta()).unwrap();
    assert_eq!(t.spec.kind, FormKind::Maass);
    assert_eq!(t.spec.spectral_mu, 4.5);
    assert_eq!(t.spec.theta, 0.1);
    assert_eq!(t.spec.omega, Some(Complex64::new(1.0, 0.0)));
}

#[test]
fn write_then_read_round_trips() {
    let t = ramanujan_tau(500).unwrap();
    let mut buf = Vec::new();
    write_coefficients(&t, &mut buf).unwrap();
    let (back, report) = read_coefficients(buf.as_slice(), FormSpec::maass(0, 1, 1.0)).unwrap();
    assert_eq!(back, t);
    assert!(report.hecke.is_clean());
}

#[test]
fn second_moment_grows_linearly() {
    let t = ramanujan_tau(10_000).unwrap();
    let ratios: Vec<f64> = [100usize, 1000, 10_000]
        .iter()
        .map(|&x| t.values()[..x].iter().map(|v| v * v).sum::<f64>() / x as f64)
        .collect();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(hi / lo <= 2.0, "{ratios:?}");
}

#[test]
fn twisted_partial_sums_cancel() {
    let x = 10_000usize;
    let t = ramanujan_tau(x).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bound = 20.0 * (x as f64).sqrt() * (2.0 * x as f64).ln();
    for _ in 0..100 {
        let alpha: f64 = rng.gen();
        let s: Complex64 = (1..=x)
            .map(|n| e(alpha * n as f64) * t.lambda(n as u64))
            .sum();
        assert!(s.norm() <= bound, "alpha = {alpha}: {}", s.norm());
    }
}

fn shared_table() -> &'static CoefficientTable {
    static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
    TABLE.get_or_init(|| ramanujan_tau(90_000).unwrap())
}

proptest! {
    #[test]
    fn multiplicativity(m in 2u64..300, n in 2u64..300) {
        prop_assume!(shiftconv::arith::gcd(m as i64, n as i64) == 1);
        let t = shared_table();
        let lhs = t.lambda(m * n);
        prop_assert!((lhs - t.lambda(m) * t.lambda(n)).abs() < 1e-9);
    }
}
