//! Bessel functions of real order.
//!
//! For x ≤ max(12, 2s) the power series is summed in double-double arithmetic, which
//! absorbs the cancellation between terms of size I_s(x). Beyond that point the
//! Hankel asymptotic expansion is used, truncated at its smallest term.

use super::dd::Dd;
use crate::error::{invalid, Error, Result};
use std::f64::consts::{FRAC_2_PI, PI};

/// Largest order accepted by [`bessel_j`] and [`bessel_y`].
pub const MAX_ORDER: f64 = 16.0;

const EULER_GAMMA: Dd = Dd {
    hi: 0.577_215_664_901_532_9,
    lo: -4.942_915_152_430_645e-18,
};

/// Γ(x).
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}

fn switch_point(s: f64) -> f64 {
    12f64.max(2.0 * s)
}

fn check_args(s: f64, x: f64) -> Result<()> {
    if !(s.is_finite() && x.is_finite()) {
        return invalid("Bessel arguments must be finite");
    }
    if s < 0.0 {
        return invalid(format!("order {s} must be non-negative"));
    }
    if s > MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "order {s} above the supported maximum {MAX_ORDER}"
        )));
    }
    if x <= 0.0 {
        return invalid(format!("argument {x} must be positive"));
    }
    Ok(())
}

/// Σ_k (−x²/4)^k / (k!·(ν+1)_k) in double-double; ν may be negative but not a negative integer.
fn series_core(nu: f64, x: f64) -> Dd {
    let z = Dd::prod(0.5 * x, 0.5 * x);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut k = 1.0f64;
    loop {
        let denom = Dd::sum(k, nu) * Dd::new(k);
        term = -(term * z) / denom;
        sum = sum + term;
        if term.hi.abs() <= 1e-34 * sum.hi.abs() && k > 0.5 * x {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            break;
        }
    }
    sum
}

/// J_ν(x) by its power series, for any real ν that is not a negative integer.
pub(crate) fn series_j(nu: f64, x: f64) -> f64 {
    let pref = (0.5 * x).powf(nu) * rgamma(nu + 1.0);
    series_core(nu, x).to_f64() * pref
}

/// Hankel's P and Q for order s at argument x, truncated at the smallest term.
pub(crate) fn hankel_pq(s: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * s * s;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        t *= (mu - odd * odd) / (8.0 * k as f64 * x);
        let at = t.abs();
        if at == 0.0 {
            break;
        }
        if odd * odd > mu && at > prev {
            break;
        }
        match k % 4 {
            1 => q += t,
            2 => p -= t,
            3 => q -= t,
            _ => p += t,
        }
        if at < 1e-17 * p.abs().max(q.abs()) {
            break;
        }
        prev = at;
    }
    (p, q)
}

/// (J_s(x), Y_s(x)) from the Hankel expansion.
pub(crate) fn hankel_jy(s: f64, x: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(s, x);
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = ((0.5 * s + 0.25) * PI).sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (FRAC_2_PI / x).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}

/// J_s(x) without argument validation (hot loops).
#[inline]
pub(crate) fn j_unchecked(s: f64, x: f64) -> f64 {
    if x <= switch_point(s) {
        series_j(s, x)
    } else {
        hankel_jy(s, x).0
    }
}

/// J_s(x) for 0 ≤ s ≤ 16 and x > 0, to about 10⁻¹⁰ relative away from zeros.
pub fn bessel_j(s: f64, x: f64) -> Result<f64> {
    check_args(s, x)?;
    Ok(j_unchecked(s, x))
}

/// Y_n(x) for integer n by the logarithmic series, summed in double-double.
fn series_y_integer(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let z = Dd::prod(half, half);
    // Finite part: Σ_{k<n} (n−k−1)!/k! · z^k, times (x/2)^{−n}.
    let mut finite = Dd::ZERO;
    if n > 0 {
        let mut coef = Dd::new((1..n).map(|j| j as f64).product::<f64>());
        let mut zk = Dd::ONE;
        for k in 0..n {
            finite = finite + coef * zk;
            if k + 1 < n {
                coef = coef / Dd::new(((n - k - 1) as f64) * ((k + 1) as f64));
                zk = zk * z;
            }
        }
    }
    // Infinite part: Σ_k (ψ(k+1) + ψ(n+k+1)) (−z)^k / (k!(n+k)!).
    let mut hk = Dd::ZERO;
    let mut hnk = Dd::ZERO;
    for j in 1..=n {
        hnk = hnk + Dd::ONE / Dd::new(j as f64);
    }
    let mut term = Dd::ONE;
    let mut infinite = Dd::ZERO;
    let two_gamma = EULER_GAMMA * Dd::new(2.0);
    let mut k = 0u32;
    loop {
        let psi = hk + hnk - two_gamma;
        let contrib = term * psi;
        infinite = infinite + contrib;
        k += 1;
        term = -(term * z) / Dd::new(k as f64 * (n + k) as f64);
        hk = hk + Dd::ONE / Dd::new(k as f64);
        hnk = hnk + Dd::ONE / Dd::new((n + k) as f64);
        if (k as f64) > half
            && term.hi.abs() * (psi.hi.abs() + 1.0) <= 1e-34 * infinite.hi.abs().max(1e-300)
        {
            break;
        }
        if k > 500 {
            break;
        }
    }
    let nfact: f64 = (1..=n).map(|j| j as f64).product();
    let pow_pos = half.powi(n as i32);
    let pow_neg = half.powi(-(n as i32));
    let a = finite.to_f64() * pow_neg;
    let b = infinite.to_f64() * pow_pos / nfact;
    let j = series_j(n as f64, x);
    (-a - b) / PI + FRAC_2_PI * half.ln() * j
}

/// Y_s(x) without argument validation.
pub(crate) fn y_unchecked(s: f64, x: f64) -> f64 {
    if x > switch_point(s) {
        return hankel_jy(s, x).1;
    }
    let n = s.round();
    if (s - n).abs() < 1e-12 {
        return series_y_integer(n as u32, x);
    }
    let frac = s - s.floor();
    let parity = if (s.floor() as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let sin_s = parity * (PI * frac).sin();
    let cos_s = parity * (PI * frac).cos();
    (series_j(s, x) * cos_s - series_j(-s, x)) / sin_s
}

/// Y_s(x) for 0 ≤ s ≤ 16 and x > 0.
///
/// Non-integer orders use (J_s cos sπ − J_{−s})/sin sπ in the series regime; orders within
/// 10⁻¹² of an integer are treated as that integer.
pub fn bessel_y(s: f64, x: f64) -> Result<f64> {
    check_args(s, x)?;
    Ok(y_unchecked(s, x))
}
