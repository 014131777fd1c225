//! Fast evaluation of Hankel-type transforms for long dual sums.
//!
//! T(c) = ∫ w(x) x^α J_s(c√x) dx is computed by the trapezoid rule in u = √x. The
//! integrand vanishes to all orders at the ends of its support, so the rule converges
//! geometrically once the node spacing resolves both the Bessel oscillation and the
//! edge bands of the window. When α = s/2 one integration by parts,
//! d/dx[x^{(s+1)/2}J_{s+1}(c√x)] = (c/2)x^{s/2}J_s(c√x), moves the derivative onto the
//! window and only the two edge bands remain:
//! T(c) = −(4/c) ∫ w′(u²) u^{s+2} J_{s+1}(cu) du.
//!
//! For dual sums the transform is tabulated in v = c/(4π) = √y as v^s·G(v) with G
//! smooth, using piecewise Chebyshev interpolation built on demand.

use super::window::SmoothWindow;
use crate::error::{Error, Result};
use crate::special::j_unchecked;
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Extra trapezoid nodes per edge band beyond the Bessel oscillation count; the
/// Fourier transform of an edge band decays like 10^{1.7 − 1.55√ξ} at ξ cycles.
const EDGE_CYCLES: f64 = 100.0;

#[derive(Debug, Clone)]
struct Segment {
    u0: f64,
    u1: f64,
}

/// T(c) = ∫ w(x) x^α J_s(c√x) dx by the trapezoid rule in √x.
#[derive(Debug, Clone)]
pub(crate) struct TrapezoidTransform {
    window: SmoothWindow,
    alpha: f64,
    s: f64,
    by_parts: bool,
    segments: Vec<Segment>,
    edge_len: f64,
    nodes: HashMap<(usize, usize), Vec<(f64, f64)>>,
    magnitude: f64,
}

impl TrapezoidTransform {
    /// ∫ w(x) x^α J_s(c√x) dx; uses the edge-band form automatically when α = s/2.
    pub(crate) fn new(window: SmoothWindow, alpha: f64, s: f64) -> Self {
        let by_parts = (alpha - 0.5 * s).abs() < 1e-15;
        let ramps = window.ramps();
        let edge_len = ramps
            .iter()
            .map(|&(a, b)| b.sqrt() - a.sqrt())
            .fold(f64::INFINITY, f64::min);
        let segments = if by_parts {
            ramps
                .iter()
                .map(|&(a, b)| Segment {
                    u0: a.sqrt(),
                    u1: b.sqrt(),
                })
                .collect()
        } else {
            let (lo, hi) = window.support();
            vec![Segment {
                u0: lo.sqrt(),
                u1: hi.sqrt(),
            }]
        };
        let mut t = TrapezoidTransform {
            window,
            alpha,
            s,
            by_parts,
            segments,
            edge_len,
            nodes: HashMap::new(),
            magnitude: 0.0,
        };
        t.magnitude = (0..t.segments.len())
            .map(|seg| {
                let m = t.node_count(seg, 0.0);
                t.weights(seg, m).iter().map(|&(_, w)| w.abs()).sum::<f64>()
            })
            .sum();
        t
    }

    /// A bound for the rounding error of [`Self::eval`] at c.
    pub(crate) fn noise(&self, c: f64) -> f64 {
        let pre = if self.by_parts { 4.0 / c } else { 1.0 };
        64.0 * f64::EPSILON * pre * self.magnitude
    }

    /// Largest √x in the support.
    pub(crate) fn u_max(&self) -> f64 {
        self.window.support().1.sqrt()
    }

    pub(crate) fn order(&self) -> f64 {
        self.s
    }

    fn node_count(&self, seg: usize, c: f64) -> usize {
        let sg = &self.segments[seg];
        let len = sg.u1 - sg.u0;
        let m = len * c / (2.0 * PI) + EDGE_CYCLES * len / self.edge_len + 8.0;
        (m / 16.0).ceil() as usize * 16
    }

    fn weights(&mut self, seg: usize, m: usize) -> &[(f64, f64)] {
        let (window, alpha, s, by_parts) = (self.window, self.alpha, self.s, self.by_parts);
        let sg = self.segments[seg].clone();
        self.nodes.entry((seg, m)).or_insert_with(|| {
            let h = (sg.u1 - sg.u0) / m as f64;
            (1..m)
                .map(|j| {
                    let u = sg.u0 + h * j as f64;
                    let x = u * u;
                    let w = if by_parts {
                        window.derivative(x) * u.powf(s + 2.0)
                    } else {
                        window.value(x) * 2.0 * u.powf(2.0 * alpha + 1.0)
                    };
                    (u, w * h)
                })
                .filter(|&(_, w)| w != 0.0)
                .collect()
        })
    }

    /// T(c) for c > 0.
    pub(crate) fn eval(&mut self, c: f64) -> f64 {
        let order = if self.by_parts { self.s + 1.0 } else { self.s };
        let mut acc = 0.0;
        for seg in 0..self.segments.len() {
            let m = self.node_count(seg, c);
            acc += self
                .weights(seg, m)
                .iter()
                .map(|&(u, w)| w * j_unchecked(order, c * u))
                .sum::<f64>();
        }
        if self.by_parts {
            -4.0 / c * acc
        } else {
            acc
        }
    }
}

const CHEB_DEGREE: usize = 32;

/// T(4πv) = v^s·G(v) with G tabulated piecewise in Chebyshev form.
#[derive(Debug, Clone)]
pub(crate) struct ChebyshevTable {
    transform: TrapezoidTransform,
    width: f64,
    panels: Vec<[f64; CHEB_DEGREE]>,
}

impl ChebyshevTable {
    pub(crate) fn new(transform: TrapezoidTransform) -> Self {
        // Panels over which the phase 4πv·u advances by at most 16 radians.
        let width = 16.0 / (4.0 * PI * transform.u_max());
        ChebyshevTable {
            transform,
            width,
            panels: Vec::new(),
        }
    }

    fn build_panel(&mut self, k: usize) -> [f64; CHEB_DEGREE] {
        let n = CHEB_DEGREE;
        let v0 = k as f64 * self.width;
        let s = self.transform.order();
        let mut vals = [0.0; CHEB_DEGREE];
        for (j, val) in vals.iter_mut().enumerate() {
            let t = (PI * (j as f64 + 0.5) / n as f64).cos();
            let v = v0 + 0.5 * self.width * (1.0 + t);
            *val = self.transform.eval(4.0 * PI * v) / v.powf(s);
        }
        let mut coef = [0.0; CHEB_DEGREE];
        for (m, cm) in coef.iter_mut().enumerate() {
            let sum: f64 = vals
                .iter()
                .enumerate()
                .map(|(j, &f)| f * (PI * m as f64 * (j as f64 + 0.5) / n as f64).cos())
                .sum();
            *cm = 2.0 * sum / n as f64;
        }
        coef[0] *= 0.5;
        coef
    }

    /// G(v) = T(4πv)/v^s.
    pub(crate) fn reduced(&mut self, v: f64) -> f64 {
        let k = (v / self.width).floor() as usize;
        while self.panels.len() <= k {
            let p = self.build_panel(self.panels.len());
            self.panels.push(p);
        }
        let c = &self.panels[k];
        let t = 2.0 * (v - k as f64 * self.width) / self.width - 1.0;
        // Clenshaw recurrence.
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in c.iter().skip(1).rev() {
            let b0 = 2.0 * t * b1 - b2 + ck;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + c[0]
    }

    /// Rounding-error bound for [`Self::reduced`] at v.
    pub(crate) fn reduced_noise(&self, v: f64) -> f64 {
        self.transform.noise(4.0 * PI * v) / v.powf(self.transform.order())
    }

    /// T(4πv).
    pub(crate) fn value(&mut self, v: f64) -> f64 {
        self.reduced(v) * v.powf(self.transform.order())
    }

    /// Direct evaluation, bypassing the table.
    #[cfg(test)]
    pub(crate) fn direct(&mut self, v: f64) -> f64 {
        self.transform.eval(4.0 * PI * v)
    }
}

/// Result of a truncated dual sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DualSum {
    pub sum: Complex64,
    pub terms: u64,
    pub last_n: u64,
    pub tail: f64,
}

/// Width in v = √n/κ of one truncation block.
const BLOCK_WIDTH: f64 = 0.5;

/// Σ_{n≥1} term(n), where term(n) depends on n through v = √n/κ.
///
/// `term` returns the term and a bound for its rounding error. The sum is processed in
/// blocks of width 1/2 in v and stops after two consecutive blocks with non-zero terms
/// whose absolute sum is below `threshold` or within the rounding error of the block.
pub(crate) fn truncated_dual_sum<F>(
    kappa: f64,
    threshold: f64,
    max_n: u64,
    mut term: F,
) -> Result<DualSum>
where
    F: FnMut(u64) -> Result<Option<(Complex64, f64)>>,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut terms = 0u64;
    let mut quiet = 0;
    let mut n = 1u64;
    let mut block = 0u64;
    loop {
        let v_end = (block + 1) as f64 * BLOCK_WIDTH;
        let n_end = ((v_end * kappa).powi(2)).ceil() as u64;
        if n_end > max_n {
            return Err(Error::Truncation(format!(
                "dual terms still above {threshold:.3e} at n = {n} (limit {max_n})"
            )));
        }
        let mut block_abs = 0.0;
        let mut block_noise = 0.0;
        let mut block_terms = 0u64;
        while n < n_end {
            if let Some((t, noise)) = term(n)? {
                sum += t;
                block_abs += t.norm();
                block_noise += noise;
                block_terms += 1;
            }
            n += 1;
        }
        terms += block_terms;
        block += 1;
        if block_terms > 0 {
            if block_abs < threshold.max(block_noise) {
                quiet += 1;
                if quiet >= 2 {
                    return Ok(DualSum {
                        sum,
                        terms,
                        last_n: n - 1,
                        tail: block_abs,
                    });
                }
            } else {
                quiet = 0;
            }
        }
    }
}
