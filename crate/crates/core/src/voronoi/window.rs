//! C^∞ windows built from the exp(−1/t) mollifier.
//!
//! The ramp ρ(s) = 1/(1 + exp(1/s − 1/(1−s))) rises from 0 on s ≤ 0 to 1 on s ≥ 1 and
//! satisfies ρ(s) + ρ(1−s) = 1. The bump is φ(t) = ρ(Δ(t − 1/2))·ρ(Δ(1 − t)), supported
//! on [1/2, 1] and equal to 1 on [1/2 + 1/Δ, 1 − 1/Δ]. Derivatives are obtained by
//! truncated Taylor arithmetic.

use crate::error::{invalid, Result};

/// Highest derivative order available from [`SmoothWindow::derivatives`].
pub const MAX_DERIVATIVE: usize = 4;

const N: usize = MAX_DERIVATIVE + 1;

/// Truncated Taylor series c₀ + c₁ε + … + c₄ε⁴.
#[derive(Debug, Clone, Copy)]
struct Jet([f64; N]);

impl Jet {
    fn var(x: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x;
        c[1] = 1.0;
        Jet(c)
    }

    fn constant(x: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x;
        Jet(c)
    }

    fn scale(self, k: f64) -> Self {
        Jet(self.0.map(|v| v * k))
    }

    fn add(self, o: Jet) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(o.0) {
            *a += b;
        }
        Jet(c)
    }

    fn mul(self, o: Jet) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            for j in 0..N - i {
                c[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }

    fn recip(self) -> Self {
        let a = self.0;
        let mut c = [0.0; N];
        c[0] = 1.0 / a[0];
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| a[j] * c[k - j]).sum();
            c[k] = -s * c[0];
        }
        Jet(c)
    }

    fn exp(self) -> Self {
        let a = self.0;
        let mut c = [0.0; N];
        c[0] = a[0].exp();
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * c[k - j]).sum();
            c[k] = s / k as f64;
        }
        Jet(c)
    }
}

/// The ramp ρ and its Taylor coefficients at s.
fn ramp_jet(s: f64) -> Jet {
    if s <= 0.0 {
        return Jet::constant(0.0);
    }
    if s >= 1.0 {
        return Jet::constant(1.0);
    }
    let e0 = 1.0 / s - 1.0 / (1.0 - s);
    if e0 > 700.0 {
        return Jet::constant(0.0);
    }
    if e0 < -700.0 {
        return Jet::constant(1.0);
    }
    let t = Jet::var(s);
    let one_minus = Jet::constant(1.0).add(t.scale(-1.0));
    let expo = t.recip().add(one_minus.recip().scale(-1.0)).exp();
    Jet::constant(1.0).add(expo).recip()
}

/// ρ(s) without derivatives.
pub fn ramp(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        let e = 1.0 / s - 1.0 / (1.0 - s);
        1.0 / (1.0 + e.exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    /// φ(x/X), supported on [X/2, X].
    ThetaBump,
    /// φ((x − h)/X), supported on [h + X/2, h + X].
    PlateauBump,
}

/// A smooth window of scale X and sharpness Δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWindow {
    pub kind: WindowKind,
    pub x_scale: f64,
    pub delta: f64,
    pub h: u64,
}

/// Builds a window; Δ must exceed 4 so that the two ramps do not overlap.
pub fn make_window(kind: WindowKind, x_scale: f64, delta: f64, h: u64) -> Result<SmoothWindow> {
    if !(x_scale > 0.0 && x_scale.is_finite()) {
        return invalid(format!("window scale X = {x_scale} must be positive"));
    }
    if !(delta > 4.0 && delta.is_finite()) {
        return invalid(format!("window sharpness Δ = {delta} must exceed 4"));
    }
    Ok(SmoothWindow {
        kind,
        x_scale,
        delta,
        h,
    })
}

impl SmoothWindow {
    /// Shorthand for a [`WindowKind::ThetaBump`] window.
    pub fn theta_bump(x_scale: f64, delta: f64) -> Result<Self> {
        make_window(WindowKind::ThetaBump, x_scale, delta, 0)
    }

    fn offset(&self) -> f64 {
        match self.kind {
            WindowKind::ThetaBump => 0.0,
            WindowKind::PlateauBump => self.h as f64,
        }
    }

    fn t_of(&self, x: f64) -> f64 {
        (x - self.offset()) / self.x_scale
    }

    /// The window value at x.
    pub fn value(&self, x: f64) -> f64 {
        let t = self.t_of(x);
        ramp(self.delta * (t - 0.5)) * ramp(self.delta * (1.0 - t))
    }

    /// [w(x), w′(x), …, w⁗(x)].
    pub fn derivatives(&self, x: f64) -> [f64; N] {
        let t = self.t_of(x);
        let d = self.delta;
        let up = ramp_jet(d * (t - 0.5));
        let down = ramp_jet(d * (1.0 - t));
        // Chain rule: each ε-power picks up a factor ±Δ/X.
        let mut cu = up.0;
        let mut cd = down.0;
        let mut f = 1.0;
        for k in 0..N {
            cu[k] *= f;
            cd[k] *= f * if k % 2 == 0 { 1.0 } else { -1.0 };
            f *= d / self.x_scale;
        }
        let prod = Jet(cu).mul(Jet(cd)).0;
        let mut out = [0.0; N];
        let mut fact = 1.0;
        for k in 0..N {
            if k > 0 {
                fact *= k as f64;
            }
            out[k] = prod[k] * fact;
        }
        out
    }

    /// w′(x).
    pub fn derivative(&self, x: f64) -> f64 {
        self.derivatives(x)[1]
    }

    /// The closed support [lo, hi].
    pub fn support(&self) -> (f64, f64) {
        let o = self.offset();
        (o + 0.5 * self.x_scale, o + self.x_scale)
    }

    /// The interval on which the window is identically 1.
    pub fn plateau(&self) -> (f64, f64) {
        let o = self.offset();
        let w = self.x_scale / self.delta;
        (o + 0.5 * self.x_scale + w, o + self.x_scale - w)
    }

    /// The rising and falling edge bands.
    pub fn ramps(&self) -> [(f64, f64); 2] {
        let (lo, hi) = self.support();
        let (pl, ph) = self.plateau();
        [(lo, pl), (ph, hi)]
    }

    /// ∫ w(x) dx = X(1/2 − 1/Δ), from ρ(s) + ρ(1−s) = 1.
    pub fn mass(&self) -> f64 {
        self.x_scale * (0.5 - 1.0 / self.delta)
    }

    /// The same window with Δ replaced.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        make_window(self.kind, self.x_scale, delta, self.h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_symmetry() {
        for &s in &[0.1, 0.25, 0.5, 0.8] {
            assert!((ramp(s) + ramp(1.0 - s) - 1.0).abs() < 1e-15);
        }
        assert_eq!(ramp(0.0), 0.0);
        assert_eq!(ramp(1.0), 1.0);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let w = SmoothWindow::theta_bump(100.0, 8.0).unwrap();
        for &x in &[51.0, 53.7, 56.0, 93.0, 97.5] {
            let d = w.derivatives(x);
            let h = 1e-3;
            for k in 0..MAX_DERIVATIVE {
                let fd = (w.derivatives(x + h)[k] - w.derivatives(x - h)[k]) / (2.0 * h);
                let scale = d[k + 1].abs() + (8.0f64 / 100.0).powi(k as i32 + 1);
                assert!((fd - d[k + 1]).abs() < 1e-4 * scale, "k={k} x={x}");
            }
            assert!((d[0] - w.value(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn delta_at_most_four_rejected() {
        assert!(SmoothWindow::theta_bump(100.0, 4.0).is_err());
        assert!(make_window(WindowKind::PlateauBump, -1.0, 8.0, 0).is_err());
    }
}
