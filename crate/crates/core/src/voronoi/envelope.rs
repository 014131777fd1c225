//! Decay envelopes for the transforms and a helper to fit their constants.
//!
//! Each envelope is the shape of an upper bound with the implied constant set to 1.
//! A fit records the largest observed ratio |value|/envelope over a grid.

use super::{transform_v, transform_w, SmoothWindow};
use crate::error::{invalid, Result};
use crate::special::KernelSpec;

/// Y(1 + √(yY))^{−1/2}((yY)^{−1/2} + (yY)^{−1})^j, the 𝒱^± envelope for forms with μ = 0.
pub fn v_envelope(y: f64, big_y: f64, j: u32) -> f64 {
    let z = y * big_y;
    big_y * (1.0 + z.sqrt()).powf(-0.5) * (z.powf(-0.5) + 1.0 / z).powi(j as i32)
}

/// Y^{1+s/2}(1 + √(yY))^{−1/2}(1 + 1/√(yY))^{−s}(Δ/(1 + √(yY)))^j, the 𝒲_s envelope.
pub fn w_envelope(y: f64, big_y: f64, s: f64, delta: f64, j: u32) -> f64 {
    let r = (y * big_y).sqrt();
    big_y.powf(1.0 + 0.5 * s)
        * (1.0 + r).powf(-0.5)
        * (1.0 + 1.0 / r).powf(-s)
        * (delta / (1.0 + r)).powi(j as i32)
}

/// X^{ℓ/4+1/2}·min((√(yX))^{ℓ/2−1}, (√(yX))^{−3/2}), the 𝒲_β envelope for |β| ≤ 1/X
/// evaluated at y = n/q².
pub fn w_beta_envelope(y: f64, x_scale: f64, ell: u32) -> f64 {
    let r = (y * x_scale).sqrt();
    let l = ell as f64;
    x_scale.powf(l / 4.0 + 0.5) * r.powf(l / 2.0 - 1.0).min(r.powf(-1.5))
}

/// n points spaced geometrically from lo to hi inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Summary of |value|/envelope ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFit {
    /// The fitted constant: the largest ratio.
    pub constant: f64,
    /// The index of the sample attaining it.
    pub argmax: usize,
    pub points: usize,
}

/// Fits the envelope constant from (|value|, envelope) pairs.
pub fn fit_constant<I: IntoIterator<Item = (f64, f64)>>(samples: I) -> EnvelopeFit {
    let mut fit = EnvelopeFit {
        constant: 0.0,
        argmax: 0,
        points: 0,
    };
    for (i, (v, env)) in samples.into_iter().enumerate() {
        let r = v / env;
        if r > fit.constant || fit.points == 0 {
            fit.constant = r;
            fit.argmax = i;
        }
        fit.points += 1;
    }
    fit
}

fn scale_grid(big_y: f64, points: usize) -> Result<Vec<f64>> {
    if !(big_y > 0.0 && big_y.is_finite()) || points < 2 {
        return invalid("envelope fits need Y > 0 and at least two grid points");
    }
    Ok(log_grid(1e-2, 1e4, points)
        .into_iter()
        .map(|z| z / big_y)
        .collect())
}

/// Fits of |𝒱⁺(y)| against [`v_envelope`] for j = 0, 1, 2 over yY ∈ [10⁻², 10⁴], with a
/// window of sharpness Δ supported on [Y, 2Y].
pub fn v_envelope_fits(
    spec: &KernelSpec,
    big_y: f64,
    delta: f64,
    points: usize,
) -> Result<[EnvelopeFit; 3]> {
    let window = SmoothWindow::theta_bump(2.0 * big_y, delta)?;
    let mut samples = Vec::with_capacity(points);
    for y in scale_grid(big_y, points)? {
        samples.push((y, transform_v(&window, 0.0, spec, y)?.norm()));
    }
    Ok([0, 1, 2].map(|j| fit_constant(samples.iter().map(|&(y, v)| (v, v_envelope(y, big_y, j))))))
}

/// Fits of |𝒲(y)| (order s = ℓ/2 − 1) against [`w_envelope`] for j = 0, 1 over the same grid.
pub fn w_envelope_fits(
    ell: u32,
    big_y: f64,
    delta: f64,
    points: usize,
) -> Result<[EnvelopeFit; 2]> {
    let window = SmoothWindow::theta_bump(2.0 * big_y, delta)?;
    let s = ell as f64 / 2.0 - 1.0;
    let mut samples = Vec::with_capacity(points);
    for y in scale_grid(big_y, points)? {
        samples.push((y, transform_w(&window, 0.0, ell, y)?.norm()));
    }
    Ok([0, 1].map(|j| {
        fit_constant(
            samples
                .iter()
                .map(|&(y, v)| (v, w_envelope(y, big_y, s, delta, j))),
        )
    }))
}

/// Fit of |𝒲_β(y)| against [`w_beta_envelope`] for the window φ(x/X) and β = `beta_x`/X,
/// over yX ∈ [10⁻², 10⁴].
pub fn w_beta_envelope_fit(
    ell: u32,
    x_scale: f64,
    delta: f64,
    beta_x: f64,
    points: usize,
) -> Result<EnvelopeFit> {
    if beta_x.abs() > 1.0 {
        return invalid("the envelope is stated for |β| ≤ 1/X");
    }
    let window = SmoothWindow::theta_bump(x_scale, delta)?;
    let beta = beta_x / x_scale;
    let mut samples = Vec::with_capacity(points);
    for y in scale_grid(x_scale, points)? {
        let v = transform_w(&window, beta, ell, y)?.norm();
        samples.push((v, w_beta_envelope(y, x_scale, ell)));
    }
    Ok(fit_constant(samples))
}
