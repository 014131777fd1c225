//! Special functions and oscillatory integrals.
//!
//! * Bessel J_s, Y_s of real order ([`bessel_j`], [`bessel_y`]) and of imaginary order
//!   ([`bessel_k_imag`], [`bessel_y_imag`]).
//! * The Voronoi kernels ℋ^± of holomorphic and Maass forms ([`kernel_h`]).
//! * Φ₀(β) = ∫₀^{√X} e(βx²) dx and the theta sum ℱ(α) = Σ_{|m|≤√X} e(αm²), with the
//!   major-arc approximation ℱ(a/q + β) ≈ 2G(a,0;q)Φ₀(β)/q.
//! * The adaptive quadrature engine shared by the whole crate ([`quad`]).

mod bessel;
pub mod dd;
mod imag;
pub mod quad;

pub(crate) use bessel::j_unchecked;
pub use bessel::{bessel_j, bessel_y, gamma, rgamma, MAX_ORDER};
pub use imag::{
    bessel_k_imag, bessel_y_imag, bessel_y_imag_diff, bessel_y_imag_pair, K_MIN_ARGUMENT,
    Y_MIN_ARGUMENT,
};

use crate::arith::gcd;
use crate::coeffs::{FormKind, FormSpec};
use crate::error::{invalid, Error, Result};
use crate::expsums::gauss_sum;
use num_complex::Complex64;
use quad::{half_period_breakpoints, integrate, QuadConfig};
use std::f64::consts::{PI, SQRT_2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// A Voronoi kernel: the form and which of ℋ^± is meant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub form: FormSpec,
    pub branch: Branch,
}

impl KernelSpec {
    pub fn new(form: FormSpec, branch: Branch) -> Self {
        KernelSpec { form, branch }
    }

    /// True when the kernel vanishes identically (Minus branch of a holomorphic form).
    pub fn is_zero(&self) -> bool {
        self.form.kind == FormKind::Holomorphic && self.branch == Branch::Minus
    }
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// ℋ^±(x).
///
/// * holomorphic weight k: ℋ⁺ = 2π i^k J_{k−1}(x), ℋ⁻ = 0;
/// * Maass, even weight: ℋ⁺ = −π/cosh(πμ)·(Y_{2iμ} + Y_{−2iμ}), ℋ⁻ = 4cosh(πμ)K_{2iμ};
/// * Maass, odd weight: ℋ⁺ = π/sinh(πμ)·(Y_{2iμ} − Y_{−2iμ}), ℋ⁻ = −4i sinh(πμ)K_{2iμ}.
pub fn kernel_h(spec: &KernelSpec, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return invalid(format!("kernel argument {x} must be positive"));
    }
    let form = &spec.form;
    match (form.kind, spec.branch) {
        (FormKind::Holomorphic, Branch::Minus) => Ok(Complex64::new(0.0, 0.0)),
        (FormKind::Holomorphic, Branch::Plus) => {
            if form.weight < 1 {
                return invalid("holomorphic weight must be at least 1");
            }
            let j = bessel_j((form.weight - 1) as f64, x)?;
            Ok(i_pow(form.weight) * (2.0 * PI * j))
        }
        (FormKind::Maass, branch) => {
            let mu = form.spectral_mu;
            let nu = 2.0 * mu;
            let even = form.weight.is_multiple_of(2);
            match (even, branch) {
                (true, Branch::Plus) => {
                    let pair = bessel_y_imag_pair(nu, x)?;
                    Ok(Complex64::new(-PI / (PI * mu).cosh() * pair, 0.0))
                }
                (true, Branch::Minus) => Ok(Complex64::new(
                    4.0 * (PI * mu).cosh() * bessel_k_imag(nu, x)?,
                    0.0,
                )),
                (false, _) if mu == 0.0 => Err(Error::Unsupported(
                    "odd-weight Maass kernel needs μ ≠ 0".into(),
                )),
                (false, Branch::Plus) => Ok(bessel_y_imag_diff(nu, x)? * (PI / (PI * mu).sinh())),
                (false, Branch::Minus) => Ok(Complex64::new(
                    0.0,
                    -4.0 * (PI * mu).sinh() * bessel_k_imag(nu, x)?,
                )),
            }
        }
    }
}

/// The constants of the two-term oscillatory expansion
///
/// ℋ⁺(4π√w) = w^{−1/4} Σ_± c₁^± e(±2√w) + w^{−3/4} Σ_± c₂^± e(±2√w) + O(w^{−5/4})
///
/// for a holomorphic form of weight k, derived from the two-term Hankel expansion of
/// J_{k−1}. With θ = (k−1)π/2 + π/4:
/// c₁^± = i^k e^{∓iθ}/√2 and c₂^± = ±i·√2·i^k((2k−2)² − 1)e^{∓iθ}/(64π).
/// Returned as `[[c₁⁺, c₁⁻], [c₂⁺, c₂⁻]]`.
pub fn holomorphic_kernel_constants(k: u32) -> [[Complex64; 2]; 2] {
    let s = (k as f64) - 1.0;
    let theta = PI * s / 2.0 + PI / 4.0;
    let ik = i_pow(k);
    let m = 4.0 * s * s - 1.0;
    let c1p = ik * Complex64::cis(-theta) / SQRT_2;
    let c1m = ik * Complex64::cis(theta) / SQRT_2;
    let c2p = Complex64::i() * ik * Complex64::cis(-theta) * (SQRT_2 * m / (64.0 * PI));
    let c2m = -Complex64::i() * ik * Complex64::cis(theta) * (SQRT_2 * m / (64.0 * PI));
    [[c1p, c1m], [c2p, c2m]]
}

/// The two-term expansion of ℋ⁺(x) for a holomorphic form of weight k, x = 4π√w.
pub fn kernel_h_asymptotic(k: u32, x: f64) -> Complex64 {
    let w = (x / (4.0 * PI)).powi(2);
    let [[c1p, c1m], [c2p, c2m]] = holomorphic_kernel_constants(k);
    let ep = Complex64::cis(x);
    let em = ep.conj();
    (c1p * ep + c1m * em) * w.powf(-0.25) + (c2p * ep + c2m * em) * w.powf(-0.75)
}

/// Φ₀(β) = ∫₀^{√X} e(βx²) dx.
pub fn phi0(beta: f64, x_scale: f64) -> Result<Complex64> {
    if !(x_scale > 0.0 && x_scale.is_finite() && beta.is_finite()) {
        return invalid("phi0 needs X > 0 and finite β");
    }
    let top = x_scale.sqrt();
    if beta == 0.0 {
        return Ok(Complex64::new(top, 0.0));
    }
    let bp = half_period_breakpoints(0.0, top, |x| 4.0 * PI * beta * x, 4);
    let r = integrate(
        |x| Complex64::cis(2.0 * PI * beta * x * x),
        &bp,
        QuadConfig::new(1e-12, 1e-14 * top),
    )?;
    Ok(r.value)
}

/// ⌊√X⌋ computed exactly for X up to 2⁵².
pub fn isqrt_floor(x: f64) -> u64 {
    if x < 1.0 {
        return 0;
    }
    let mut m = x.sqrt().floor() as u64;
    while ((m + 1) * (m + 1)) as f64 <= x {
        m += 1;
    }
    while (m * m) as f64 > x {
        m -= 1;
    }
    m
}

/// e(α m²) with the product reduced mod 1 in compensated arithmetic.
#[inline]
pub(crate) fn e_alpha_m2(alpha: f64, m2: f64) -> Complex64 {
    let p = alpha * m2;
    let err = alpha.mul_add(m2, -p);
    let r = (p - p.floor()) + err;
    Complex64::cis(2.0 * PI * r)
}

/// ℱ(α) = Σ_{|m| ≤ √X} e(αm²) by direct summation.
pub fn theta_sum_f(alpha: f64, x_scale: f64) -> Result<Complex64> {
    if !(x_scale > 0.0 && x_scale.is_finite() && alpha.is_finite()) {
        return invalid("theta sum needs X > 0 and finite α");
    }
    let a = alpha - alpha.floor();
    let m_max = isqrt_floor(x_scale);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 1..=m_max {
        acc += e_alpha_m2(a, (m * m) as f64);
    }
    Ok(acc * 2.0 + 1.0)
}

/// Both sides of ℱ(a/q + β) ≈ 2G(a,0;q)Φ₀(β)/q on a major arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorArcApprox {
    pub approx: Complex64,
    pub actual: Complex64,
    pub residual: f64,
}

/// Compares the theta sum with its major-arc approximation; requires gcd(a,q) = 1,
/// q ≤ Q = ⌊5√X⌋ and |β| ≤ 1/(qQ).
pub fn theta_major_arc(a: i64, q: i64, beta: f64, x_scale: f64) -> Result<MajorArcApprox> {
    if q < 1 || gcd(a, q) != 1 {
        return invalid(format!("arc {a}/{q} is not a reduced fraction"));
    }
    if !(x_scale > 0.0 && x_scale.is_finite()) {
        return invalid("X must be positive");
    }
    let big_q = (5.0 * x_scale.sqrt()).floor() as i64;
    if q > big_q {
        return invalid(format!("q = {q} exceeds Q = {big_q}"));
    }
    let limit = 1.0 / (q as f64 * big_q as f64);
    if beta.abs() > limit * (1.0 + 1e-12) {
        return invalid(format!("|β| = {} exceeds 1/(qQ) = {limit}", beta.abs()));
    }
    let g = gauss_sum(a, 0, q)?;
    let approx = g * phi0(beta, x_scale)? * (2.0 / q as f64);
    let alpha = (a.rem_euclid(q) as f64) / q as f64 + beta;
    let actual = theta_sum_f(alpha, x_scale)?;
    Ok(MajorArcApprox {
        approx,
        actual,
        residual: (actual - approx).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_sum_examples() {
        assert_eq!(theta_sum_f(0.0, 10.0).unwrap(), Complex64::new(7.0, 0.0));
        let v = theta_sum_f(0.5, 16.0).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let v1 = theta_sum_f(1.0, 30.0).unwrap();
        assert!((v1 - theta_sum_f(0.0, 30.0).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn phi0_zero_frequency() {
        assert_eq!(phi0(0.0, 49.0).unwrap(), Complex64::new(7.0, 0.0));
    }

    #[test]
    fn major_arc_trivial_case() {
        let r = theta_major_arc(1, 1, 0.0, 100.0).unwrap();
        assert!((r.approx - Complex64::new(20.0, 0.0)).norm() < 1e-12);
        assert!((r.actual - Complex64::new(21.0, 0.0)).norm() < 1e-12);
        assert!((r.residual - 1.0).abs() < 1e-12);
        assert!(theta_major_arc(2, 4, 0.0, 100.0).is_err());
        assert!(theta_major_arc(1, 51, 0.0, 100.0).is_err());
        assert!(theta_major_arc(1, 3, 0.01, 100.0).is_err());
    }

    #[test]
    fn holomorphic_minus_branch_vanishes() {
        let spec = KernelSpec::new(FormSpec::delta(), Branch::Minus);
        assert!(spec.is_zero());
        assert_eq!(kernel_h(&spec, 3.0).unwrap(), Complex64::new(0.0, 0.0));
    }
}
