//! Bessel functions of purely imaginary order.
//!
//! K_{iν}(x) = ∫₀^∞ e^{−x cosh t} cos(νt) dt.
//!
//! For Y_{iν} we use a contour representation of the Hankel function,
//!
//! H¹_{iλ}(x) = e^{λπ/2}/(πi) · [ e^{λπ/2}∫₀^∞ e^{−x sinh s − iλs} ds
//!                             + e^{−λπ/2}∫₀^∞ e^{−x sinh s + iλs} ds
//!                             + i∫_{−π/2}^{π/2} e^{ix cos φ + λφ} dφ ],
//!
//! valid for real λ and x > 0, and Y_ν = (H¹_ν − conj(H¹_{conj ν}))/(2i).
//! The pieces have size e^{|λ|π} while Y_{iλ} is of size e^{|λ|π/2}, so the relative
//! accuracy is roughly 10⁻¹⁴·e^{|λ|π/2}: about 10⁻⁷ at λ = 10.

use super::quad::{half_period_breakpoints, integrate, QuadConfig};
use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Smallest argument at which K_{iν} is returned.
pub const K_MIN_ARGUMENT: f64 = 1e-2;

/// Smallest argument at which Y_{iν} is returned.
pub const Y_MIN_ARGUMENT: f64 = 1.0;

fn quad_cfg() -> QuadConfig {
    QuadConfig::new(1e-13, 0.0)
}

/// K_{iν}(x) for real ν and x ≥ 10⁻².
pub fn bessel_k_imag(nu: f64, x: f64) -> Result<f64> {
    if !(nu.is_finite() && x.is_finite()) || x <= 0.0 {
        return invalid(format!("K_(i{nu})({x}) needs finite ν and x > 0"));
    }
    if x < K_MIN_ARGUMENT {
        return Err(Error::Accuracy(format!(
            "K_(iν)(x) below x = {K_MIN_ARGUMENT} is not computed accurately (x = {x})"
        )));
    }
    // Cut where the integrand has decayed by e^{-60} relative to its value at t = 0.
    let t_max = (1.0 + 60.0 / x).acosh();
    let bp = half_period_breakpoints(0.0, t_max, |_| nu, 8);
    // Absolute tolerance tied to K_0(x)-sized mass to avoid chasing cancellation.
    let scale = (-x).exp() * (PI / (2.0 * x)).sqrt().min(t_max);
    let cfg = QuadConfig::new(1e-13, 1e-15 * scale);
    let r = integrate(
        |t| Complex64::new((-x * t.cosh()).exp() * (nu * t).cos(), 0.0),
        &bp,
        cfg,
    )?;
    Ok(r.value.re)
}

fn hankel1_imag(lambda: f64, x: f64) -> Result<Complex64> {
    let s_max = (60.0 / x).asinh().max(1.0);
    let bp = half_period_breakpoints(0.0, s_max, |_| lambda, 8);
    let up = integrate(
        |s| Complex64::from_polar((-x * s.sinh()).exp(), -lambda * s),
        &bp,
        quad_cfg(),
    )?
    .value;
    let lo = integrate(
        |s| Complex64::from_polar((-x * s.sinh()).exp(), lambda * s),
        &bp,
        quad_cfg(),
    )?
    .value;
    let bpv = half_period_breakpoints(-FRAC_PI_2, FRAC_PI_2, |p| x * p.sin(), 8);
    let vert = integrate(
        |p| Complex64::from_polar((lambda * p).exp(), x * p.cos()),
        &bpv,
        quad_cfg(),
    )?
    .value;
    let e = (lambda * FRAC_PI_2).exp();
    let f = up * e + lo / e + Complex64::i() * vert;
    Ok(f * e / Complex64::new(0.0, PI))
}

/// Y_{iλ}(x) for real λ and x ≥ 1.
pub fn bessel_y_imag(lambda: f64, x: f64) -> Result<Complex64> {
    if !(lambda.is_finite() && x.is_finite()) {
        return invalid("Y_(iλ) needs finite arguments");
    }
    if x < Y_MIN_ARGUMENT {
        return Err(Error::Accuracy(format!(
            "Y_(iλ)(x) is only evaluated for x >= {Y_MIN_ARGUMENT} (x = {x})"
        )));
    }
    let h1 = hankel1_imag(lambda, x)?;
    let h1m = hankel1_imag(-lambda, x)?;
    Ok((h1 - h1m.conj()) / Complex64::new(0.0, 2.0))
}

/// Y_{iν}(x) + Y_{−iν}(x) = 2·Re Y_{iν}(x), real for real ν.
pub fn bessel_y_imag_pair(nu: f64, x: f64) -> Result<f64> {
    Ok(2.0 * bessel_y_imag(nu, x)?.re)
}

/// Y_{iν}(x) − Y_{−iν}(x) = 2i·Im Y_{iν}(x), purely imaginary for real ν.
pub fn bessel_y_imag_diff(nu: f64, x: f64) -> Result<Complex64> {
    Ok(Complex64::new(0.0, 2.0 * bessel_y_imag(nu, x)?.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k0_at_one() {
        assert!((bessel_k_imag(0.0, 1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-12);
    }

    #[test]
    fn small_argument_reported() {
        assert!(matches!(bessel_k_imag(1.0, 1e-3), Err(Error::Accuracy(_))));
        assert!(matches!(bessel_y_imag(1.0, 0.5), Err(Error::Accuracy(_))));
    }
}
