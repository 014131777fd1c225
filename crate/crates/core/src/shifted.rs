//! Shifted convolution sums S_h(X) = Σ_{1≤n≤X} λ(n+h) r_ℓ(n).
//!
//! Besides the sharp sum this module evaluates the smoothed sum S*_h(X) = Σ λ(n+h) r_ℓ(n) φ(n/X),
//! rebuilds S*_h(X) for ℓ = 2 as ∫₀¹ ℱ(α)²𝒢(α) dα over a Farey dissection of order ⌊5√X⌋,
//! and fits growth exponents against X^{ℓ/2 − (ℓ−1−2θ)/12}.
//!
//! Exponent fits use the root mean square of S_h(x) over the dyadic window X/2 < x ≤ X,
//! since S_h(X) changes sign.

use crate::arith::{repr_count, ReprTable};
use crate::circle::{farey_dissect, major_arc_quadrature};
use crate::coeffs::CoefficientTable;
use crate::error::{invalid, Error, Result};
use crate::special::quad::QuadConfig;
use crate::special::{isqrt_floor, theta_sum_f};
use crate::voronoi::window::SmoothWindow;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest X accepted by [`circle_reconstruction`].
pub const MAX_RECONSTRUCTION_X: f64 = 1e4;

/// X^{ℓ/2 − (ℓ−1−2θ)/12}: the exponent of the general bound.
pub fn theorem_exponent(ell: u32, theta: f64) -> f64 {
    let l = ell as f64;
    l / 2.0 - (l - 1.0 - 2.0 * theta) / 12.0
}

/// 1 − (1 − 4θ)/8: the exponent for ℓ = 2 with θ-dependence made explicit.
pub fn two_squares_exponent(theta: f64) -> f64 {
    1.0 - (1.0 - 4.0 * theta) / 8.0
}

fn check_x(x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return invalid(format!("X = {x} must be finite and non-negative"));
    }
    Ok(())
}

/// A coefficient table paired with r_ℓ, ready to evaluate shifted sums.
#[derive(Debug, Clone)]
pub struct ShiftedSums<'a> {
    pub ell: u32,
    table: &'a CoefficientTable,
    r: ReprTable,
}

/// The smoothed sum with its distance to the sharp dyadic sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothedSum {
    /// Σ λ(n+h) r(n) φ(n/X).
    pub smoothed: f64,
    /// Σ_{X/2<n≤X} λ(n+h) r(n).
    pub dyadic: f64,
    /// dyadic − smoothed.
    pub gap: f64,
    /// (integers in the edge bands) × max over them of |λ(n+h) r(n)|.
    pub edge_bound: f64,
    pub edge_count: u64,
}

impl<'a> ShiftedSums<'a> {
    /// Prepares r_ℓ(n) for n ≤ n_max.
    pub fn new(ell: u32, n_max: usize, table: &'a CoefficientTable) -> Result<Self> {
        Ok(ShiftedSums {
            ell,
            table,
            r: repr_count(ell, n_max)?,
        })
    }

    pub fn n_max(&self) -> usize {
        self.r.n_max()
    }

    pub fn table(&self) -> &CoefficientTable {
        self.table
    }

    fn require(&self, h: u64, x: f64) -> Result<u64> {
        check_x(x)?;
        let n = x.floor() as u64;
        if n as usize > self.r.n_max() {
            return invalid(format!(
                "X = {x} exceeds the prepared range {}",
                self.r.n_max()
            ));
        }
        if n >= 1 {
            self.table.require(n + h)?;
        }
        Ok(n)
    }

    #[inline]
    fn term(&self, n: u64, h: u64) -> f64 {
        self.table.lambda(n + h) * self.r.get(n as usize) as f64
    }

    /// S_h(X) = Σ_{1≤n≤X} λ(n+h) r_ℓ(n).
    pub fn direct(&self, h: u64, x: f64) -> Result<f64> {
        let n_top = self.require(h, x)?;
        Ok((1..=n_top).map(|n| self.term(n, h)).sum())
    }

    /// Σ_{1≤n≤X} |λ(n+h)| r_ℓ(n), an upper bound for |S_h(X)|.
    pub fn trivial_bound(&self, h: u64, x: f64) -> Result<f64> {
        let n_top = self.require(h, x)?;
        Ok((1..=n_top).map(|n| self.term(n, h).abs()).sum())
    }

    /// The smoothed sum with window φ(n/X) of sharpness Δ.
    pub fn smoothed(&self, h: u64, x: f64, delta: f64) -> Result<SmoothedSum> {
        let window = SmoothWindow::theta_bump(x, delta)?;
        let n_top = self.require(h, x)?;
        let (lo, hi) = window.support();
        let (pl, ph) = window.plateau();
        let (mut smoothed, mut dyadic, mut band_max) = (0.0, 0.0, 0.0f64);
        let mut edge_count = 0u64;
        for n in (lo.floor() as u64).max(1)..=n_top {
            let nf = n as f64;
            if nf <= lo || nf > hi {
                continue;
            }
            let t = self.term(n, h);
            dyadic += t;
            smoothed += t * window.value(nf);
            if nf < pl || nf > ph {
                edge_count += 1;
                band_max = band_max.max(t.abs());
            }
        }
        Ok(SmoothedSum {
            smoothed,
            dyadic,
            gap: dyadic - smoothed,
            edge_bound: edge_count as f64 * band_max,
            edge_count,
        })
    }

    /// S_h(x) for every integer 0 ≤ x ≤ X.
    pub fn running_sums(&self, h: u64, x: f64) -> Result<Vec<f64>> {
        let n_top = self.require(h, x)?;
        let mut out = Vec::with_capacity(n_top as usize + 1);
        let mut acc = 0.0;
        out.push(0.0);
        for n in 1..=n_top {
            acc += self.term(n, h);
            out.push(acc);
        }
        Ok(out)
    }
}

/// S_h(X) for a single point; builds r_ℓ up to X.
pub fn shifted_sum_direct(ell: u32, h: u64, x: f64, table: &CoefficientTable) -> Result<f64> {
    check_x(x)?;
    ShiftedSums::new(ell, x.floor() as usize, table)?.direct(h, x)
}

/// The smoothed sum for a single point; builds r_ℓ up to X.
pub fn shifted_sum_smoothed(
    ell: u32,
    h: u64,
    x: f64,
    delta: f64,
    table: &CoefficientTable,
) -> Result<SmoothedSum> {
    check_x(x)?;
    ShiftedSums::new(ell, x.floor() as usize, table)?.smoothed(h, x, delta)
}

/// ℱ(α)²𝒢(α), with 𝒢(α) = Σ λ(n+h) φ(n/X) e(−αn) summed directly.
#[derive(Debug, Clone)]
pub struct CircleIntegrand {
    pub x_scale: f64,
    first: u64,
    weights: Vec<f64>,
}

impl CircleIntegrand {
    pub fn new(table: &CoefficientTable, h: u64, window: &SmoothWindow) -> Result<Self> {
        let (lo, hi) = window.support();
        let first = (lo.floor() as u64 + 1).max(1);
        let last = hi.floor() as u64;
        table.require(last + h)?;
        let weights = (first..=last)
            .map(|n| table.lambda(n + h) * window.value(n as f64))
            .collect();
        Ok(CircleIntegrand {
            x_scale: window.x_scale,
            first,
            weights,
        })
    }

    /// 𝒢(α).
    pub fn g(&self, alpha: f64) -> Complex64 {
        let a = alpha - alpha.floor();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut z = Complex64::new(0.0, 0.0);
        let step = Complex64::cis(-2.0 * PI * a);
        for (k, &w) in self.weights.iter().enumerate() {
            // Re-anchor the rotation every 32 terms to bound drift.
            if k % 32 == 0 {
                let n = self.first + k as u64;
                let ph = (a * n as f64).fract();
                z = Complex64::cis(-2.0 * PI * ph);
            } else {
                z *= step;
            }
            acc += z * w;
        }
        acc
    }

    /// Σ |λ(n+h) φ(n/X)|.
    pub fn g_mass(&self) -> f64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    /// ℱ(α)²𝒢(α).
    pub fn eval(&self, alpha: f64) -> Result<Complex64> {
        let f = theta_sum_f(alpha, self.x_scale)?;
        Ok(f * f * self.g(alpha))
    }
}

/// Direct and circle-method values of S*_h(X).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconstruction {
    pub direct: f64,
    pub reconstructed: Complex64,
    pub relerr: f64,
    pub arcs: usize,
    pub order: i64,
}

/// Rebuilds the ℓ = 2 smoothed sum by integrating ℱ²𝒢 over every Farey arc of order ⌊5√X⌋.
pub fn circle_reconstruction(
    h: u64,
    x: f64,
    delta: f64,
    table: &CoefficientTable,
) -> Result<Reconstruction> {
    if !(1.0..=MAX_RECONSTRUCTION_X).contains(&x) {
        return invalid(format!("X = {x} outside [1, {MAX_RECONSTRUCTION_X}]"));
    }
    let direct = shifted_sum_smoothed(2, h, x, delta, table)?.smoothed;
    let window = SmoothWindow::theta_bump(x, delta)?;
    let integrand = CircleIntegrand::new(table, h, &window)?;
    let order = (5.0 * x.sqrt()).floor() as i64;
    let arcs = farey_dissect(order)?;
    let m = isqrt_floor(x) as f64;
    let bound = (2.0 * m + 1.0).powi(2) * integrand.g_mass();
    // Frequencies of ℱ²𝒢 lie in [−X, 2X].
    let rate = 4.0 * PI * x;
    let cfg = QuadConfig::new(1e-10, 1e-15 * bound);
    let reconstructed = major_arc_quadrature(&arcs, rate, cfg, |a, q, b| {
        let alpha = a as f64 / q as f64 + b;
        integrand
            .eval(alpha)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    })?;
    if !reconstructed.re.is_finite() {
        return Err(Error::Quadrature("non-finite integrand on an arc".into()));
    }
    let relerr = (reconstructed - direct).norm() / direct.abs().max(f64::MIN_POSITIVE);
    Ok(Reconstruction {
        direct,
        reconstructed,
        relerr,
        arcs: arcs.len(),
        order,
    })
}

/// Parameters of an exponent-fit run.
#[derive(Debug, Clone)]
pub struct ExperimentGrid<'a> {
    pub ell: u32,
    pub x_values: Vec<f64>,
    pub h_values: Vec<u64>,
    pub delta: f64,
    pub table: &'a CoefficientTable,
}

impl ExperimentGrid<'_> {
    pub fn validate(&self) -> Result<()> {
        let xs = &self.x_values;
        if xs.len() < 4 {
            return invalid(format!(
                "exponent fit needs at least 4 X values, got {}",
                xs.len()
            ));
        }
        if xs.iter().any(|x| !(x.is_finite() && *x >= 2.0)) || xs.windows(2).any(|w| w[1] <= w[0]) {
            return invalid("X values must be finite, at least 2 and strictly increasing");
        }
        let x_max = *xs.last().unwrap();
        if (x_max / xs[0]).log10() < 1.5 - 1e-12 {
            return invalid("X values must span at least 1.5 decades");
        }
        if self.h_values.is_empty() || self.h_values.iter().any(|&h| h == 0 || h as f64 > x_max) {
            return invalid("every h must satisfy 1 ≤ h ≤ max X");
        }
        if self.delta.is_nan() || self.delta <= 4.0 {
            return invalid(format!("Δ = {} must exceed 4", self.delta));
        }
        let h_max = *self.h_values.iter().max().unwrap();
        self.table.require(x_max.floor() as u64 + h_max)
    }
}

/// One (h, X) point of a grid run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub h: u64,
    pub x: f64,
    pub direct: f64,
    pub smoothed: f64,
    pub gap: f64,
    /// Root mean square of S_h(x) over X/2 < x ≤ X.
    pub dyadic_rms: f64,
    pub trivial_bound: f64,
}

/// Least-squares fit of log(dyadic RMS) against log X.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub h: u64,
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the fit residuals in log space.
    pub residual: f64,
    pub theorem_exponent: f64,
    /// max over X of |S_h(X)| / X^slope.
    pub constant: f64,
}

/// Least-squares line through (x, y): (slope, intercept, rms residual).
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let res = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / n;
    (slope, intercept, res.sqrt())
}

/// Evaluates the grid and fits one exponent per shift. Points are returned sorted by (h, X).
pub fn exponent_fit(grid: &ExperimentGrid) -> Result<(Vec<GridPoint>, Vec<ExponentFit>)> {
    grid.validate()?;
    let x_max = *grid.x_values.last().unwrap();
    let sums = ShiftedSums::new(grid.ell, x_max.floor() as usize, grid.table)?;
    let theorem = theorem_exponent(grid.ell, grid.table.spec.theta);
    let per_h: Vec<Result<(Vec<GridPoint>, ExponentFit)>> = grid
        .h_values
        .par_iter()
        .map(|&h| {
            let running = sums.running_sums(h, x_max)?;
            let mut sq = Vec::with_capacity(running.len());
            let mut acc = 0.0;
            for s in &running {
                acc += s * s;
                sq.push(acc);
            }
            let mut points = Vec::new();
            for &x in &grid.x_values {
                let top = x.floor() as usize;
                let bottom = (x / 2.0).floor() as usize;
                let count = (top - bottom) as f64;
                let rms = ((sq[top] - sq[bottom]) / count).sqrt();
                let sm = sums.smoothed(h, x, grid.delta)?;
                points.push(GridPoint {
                    h,
                    x,
                    direct: running[top],
                    smoothed: sm.smoothed,
                    gap: sm.gap,
                    dyadic_rms: rms,
                    trivial_bound: sums.trivial_bound(h, x)?,
                });
            }
            if points
                .iter()
                .any(|p| p.dyadic_rms.is_nan() || p.dyadic_rms <= 0.0)
            {
                return Err(Error::Accuracy(format!(
                    "shifted sums vanish on a dyadic window for h = {h}"
                )));
            }
            let lx: Vec<f64> = points.iter().map(|p| p.x.ln()).collect();
            let ly: Vec<f64> = points.iter().map(|p| p.dyadic_rms.ln()).collect();
            let (slope, intercept, residual) = least_squares(&lx, &ly);
            let constant = points
                .iter()
                .map(|p| p.direct.abs() / p.x.powf(slope))
                .fold(0.0, f64::max);
            Ok((
                points,
                ExponentFit {
                    h,
                    slope,
                    intercept,
                    residual,
                    theorem_exponent: theorem,
                    constant,
                },
            ))
        })
        .collect();
    let mut points = Vec::new();
    let mut fits = Vec::new();
    for r in per_h {
        let (p, f) = r?;
        points.extend(p);
        fits.push(f);
    }
    points.sort_by(|a, b| a.h.cmp(&b.h).then(a.x.total_cmp(&b.x)));
    fits.sort_by_key(|f| f.h);
    Ok((points, fits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::FormSpec;

    fn toy_table(n: usize) -> CoefficientTable {
        let v = (1..=n).map(|k| ((k * 7919) % 13) as f64 - 6.0).collect();
        CoefficientTable::new(FormSpec::delta(), v).unwrap()
    }

    #[test]
    fn exponents() {
        assert!((theorem_exponent(2, 7.0 / 64.0) - (1.0 - 25.0 / 384.0)).abs() < 1e-15);
        assert!((theorem_exponent(3, 0.0) - 4.0 / 3.0).abs() < 1e-15);
        assert!((two_squares_exponent(7.0 / 64.0) - (1.0 - 9.0 / 128.0)).abs() < 1e-15);
    }

    #[test]
    fn small_direct_sum() {
        let t = toy_table(20);
        let s = shifted_sum_direct(2, 1, 3.0, &t).unwrap();
        assert_eq!(s, t.lambda(2) * 4.0 + t.lambda(3) * 4.0);
        assert_eq!(shifted_sum_direct(2, 1, 0.5, &t).unwrap(), 0.0);
    }

    #[test]
    fn integrand_at_zero() {
        let t = toy_table(200);
        let w = SmoothWindow::theta_bump(100.0, 8.0).unwrap();
        let ci = CircleIntegrand::new(&t, 1, &w).unwrap();
        let g0: f64 = (51..=100)
            .map(|n| t.lambda(n + 1) * w.value(n as f64))
            .sum();
        let v = ci.eval(0.0).unwrap();
        assert!((v.re - 441.0 * g0).abs() < 1e-9 * (1.0 + g0.abs()));
    }
}
