//! Smooth windows, Hankel-type transforms and two-sided checks of the Voronoi formulas.
//!
//! For a holomorphic form of level D, q ≡ 0 (mod D) and ad ≡ 1 (mod q):
//!
//! Σ λ(n)e(an/q)v(n) = (χ_D(d)/q) Σ λ(n)e(−dn/q)𝒱⁺(n/q²)  [+ the ℋ⁻ term for Maass forms],
//! 𝒱^±(y) = ∫ v(x)ℋ^±(4π√(xy)) dx.
//!
//! For sums of ℓ squares the dual side involves 𝒲(y) = ∫ w(x)x^{s/2}J_s(4π√(xy)) dx with
//! s = ℓ/2 − 1. Two normalizations are implemented:
//!
//! * 4 | q: main term (2πi/q)^{ℓ/2}Γ(ℓ/2)⁻¹((q/d)ε_d⁻¹)^ℓ w̃(ℓ/2) and dual sum
//!   (2πi^{ℓ/2}/q)((q/d)ε_d⁻¹)^ℓ Σ r_ℓ(n)e(−dn/q)n^{(1−ℓ/2)/2}𝒲(n/q²);
//! * q odd: main term ((a/q)ε_q)^ℓ π^{ℓ/2}q^{−ℓ/2}Γ(ℓ/2)⁻¹ w̃(ℓ/2) and dual sum
//!   (π/q)((a/q)ε_q)^ℓ Σ r_ℓ(n)e(−\overline{4a}n/q)n^{(1−ℓ/2)/2}𝒲(n/(4q²)),
//!   which follows from the Gauss sum G(a,n;q) = e(−\overline{4a}n²/q)(a/q)ε_q√q.
//!
//! q ≡ 2 (mod 4) is rejected. Dual sums are truncated by observed decay: they stop after
//! two consecutive blocks (width 1/2 in √y) whose absolute contribution is below
//! [`DUAL_TOLERANCE`]·|lhs| or below the rounding error of the transforms in the block.

mod dual;
pub mod envelope;
pub mod window;

pub use envelope::{
    fit_constant, log_grid, v_envelope, v_envelope_fits, w_beta_envelope, w_beta_envelope_fit,
    w_envelope, w_envelope_fits, EnvelopeFit,
};
pub use window::{make_window, ramp, SmoothWindow, WindowKind, MAX_DERIVATIVE};

use crate::arith::{epsilon_unit, gcd, jacobi_symbol, mod_inverse, repr_count, ReprTable};
use crate::coeffs::{CoefficientTable, FormKind};
use crate::error::{invalid, Error, Result};
use crate::expsums::{e, e_frac, DirichletCharacter};
use crate::special::quad::{half_period_breakpoints, integrate, QuadConfig};
use crate::special::{bessel_j, gamma, kernel_h, Branch, KernelSpec, MAX_ORDER};
use dual::{truncated_dual_sum, ChebyshevTable, TrapezoidTransform};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Dual sums stop once two consecutive blocks contribute less than this fraction of |lhs|.
pub const DUAL_TOLERANCE: f64 = 1e-12;

/// Largest dual index examined before a truncation failure is reported.
pub const MAX_DUAL_INDEX: u64 = 1_000_000;

/// Maass dual sums evaluate each transform by adaptive quadrature; this caps their length.
pub const MAASS_MAX_TERMS: u64 = 2_000;

fn quad_cfg(scale: f64) -> QuadConfig {
    QuadConfig::new(1e-11, 1e-14 * scale)
}

/// Breakpoints over the support of `w`, split at the plateau edges and refined so that a
/// phase with local rate `rate(x)` advances by at most π per panel.
fn window_breakpoints<R: Fn(f64) -> f64>(w: &SmoothWindow, rate: R) -> Vec<f64> {
    let [(a0, a1), (b0, b1)] = w.ramps();
    let mut pts = half_period_breakpoints(a0, a1, &rate, 8);
    for (lo, hi, min) in [(a1, b0, 4), (b0, b1, 8)] {
        let seg = half_period_breakpoints(lo, hi, &rate, min);
        pts.extend_from_slice(&seg[1..]);
    }
    pts
}

fn ramp_breakpoints<R: Fn(f64) -> f64>(w: &SmoothWindow, rate: R) -> [Vec<f64>; 2] {
    let [(a0, a1), (b0, b1)] = w.ramps();
    [
        half_period_breakpoints(a0, a1, &rate, 8),
        half_period_breakpoints(b0, b1, &rate, 8),
    ]
}

fn check_y(y: f64) -> Result<()> {
    if !(y > 0.0 && y.is_finite()) {
        return invalid(format!("transform argument y = {y} must be positive"));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() {
        return invalid("β must be finite");
    }
    Ok(())
}

/// s = ℓ/2 − 1, validated.
fn bessel_order(ell: u32) -> Result<f64> {
    if ell < 2 {
        return invalid(format!("ℓ = {ell} must be at least 2"));
    }
    let s = ell as f64 / 2.0 - 1.0;
    if s + 1.0 > MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "ℓ = {ell} needs Bessel order above {MAX_ORDER}"
        )));
    }
    Ok(s)
}

/// 𝒱^±_β(y) = ∫ w(x)e(−βx)ℋ^±(4π√(xy)) dx by adaptive quadrature.
pub fn transform_v(
    window: &SmoothWindow,
    beta: f64,
    spec: &KernelSpec,
    y: f64,
) -> Result<Complex64> {
    check_y(y)?;
    check_beta(beta)?;
    if spec.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let bp = window_breakpoints(window, |x| 2.0 * PI * ((y / x).sqrt() + beta.abs()));
    let mut failure = None;
    let r = integrate(
        |x| {
            let w = window.value(x);
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            match kernel_h(spec, 4.0 * PI * (x * y).sqrt()) {
                Ok(k) => k * e(-beta * x) * w,
                Err(err) => {
                    failure.get_or_insert(err);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        &bp,
        quad_cfg(2.0 * PI * window.mass()),
    );
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(r?.value)
}

/// 𝒲_β(y) = ∫ w(x)e(βx)x^{(ℓ/2−1)/2}J_{ℓ/2−1}(4π√(xy)) dx by adaptive quadrature.
pub fn transform_w(window: &SmoothWindow, beta: f64, ell: u32, y: f64) -> Result<Complex64> {
    check_y(y)?;
    check_beta(beta)?;
    let s = bessel_order(ell)?;
    let c = 4.0 * PI * y.sqrt();
    let bp = window_breakpoints(window, |x| 0.5 * c / x.sqrt() + 2.0 * PI * beta.abs());
    let scale = window.mass() * window.support().1.powf(0.5 * s);
    let r = integrate(
        |x| {
            let w = window.value(x);
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            e(beta * x) * (w * x.powf(0.5 * s) * bessel_j(s, c * x.sqrt()).unwrap_or(f64::NAN))
        },
        &bp,
        quad_cfg(scale),
    )?;
    Ok(r.value)
}

/// w̃_β(s) = ∫ w(x)e(βx)x^{s−1} dx.
pub fn mellin_w(window: &SmoothWindow, beta: f64, s: f64) -> Result<Complex64> {
    check_beta(beta)?;
    if !(s > 0.0 && s.is_finite()) {
        return invalid(format!("Mellin variable s = {s} must be positive"));
    }
    let bp = window_breakpoints(window, |_| 2.0 * PI * beta.abs());
    let scale = window.mass() * window.support().1.powf(s - 1.0);
    let r = integrate(
        |x| e(beta * x) * (window.value(x) * x.powf(s - 1.0)),
        &bp,
        quad_cfg(scale),
    )?;
    Ok(r.value)
}

/// The integration-by-parts split 𝒲_β = ℰ₁ + ℰ₂ together with the direct value.
///
/// With c = 4π√y and s = ℓ/2 − 1, one integration by parts gives
/// 𝒲_β(y) = −(2/c)∫ (w(x)e(βx))′ x^{(s+1)/2}J_{s+1}(c√x) dx; ℰ₁ collects the 2πiβ·w
/// part of the derivative and ℰ₂ the w′ part, which lives on the edge bands. For
/// w = φ(·/X), R = c√X and t = x/X these are
/// ℰ₁ = −4πiβX^{ℓ/4+3/2}R^{−ℓ/2−1}∫φ(t)e(βXt)(R√t)^{ℓ/2}J_{ℓ/2}(R√t)dt and
/// ℰ₂ = −2X^{ℓ/4+1/2}R^{−ℓ/2−1}∫φ′(t)e(βXt)(R√t)^{ℓ/2}J_{ℓ/2}(R√t)dt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WBetaSplit {
    pub e1: Complex64,
    pub e2: Complex64,
    pub direct: Complex64,
}

impl WBetaSplit {
    pub fn relative_defect(&self) -> f64 {
        (self.e1 + self.e2 - self.direct).norm() / self.direct.norm().max(f64::MIN_POSITIVE)
    }
}

pub fn w_beta_split(window: &SmoothWindow, beta: f64, ell: u32, y: f64) -> Result<WBetaSplit> {
    check_y(y)?;
    check_beta(beta)?;
    let s = bessel_order(ell)?;
    let c = 4.0 * PI * y.sqrt();
    let rate = |x: f64| 0.5 * c / x.sqrt() + 2.0 * PI * beta.abs();
    let kernel =
        |x: f64| x.powf(0.5 * (s + 1.0)) * bessel_j(s + 1.0, c * x.sqrt()).unwrap_or(f64::NAN);
    let scale = window.mass() * window.support().1.powf(0.5 * (s + 1.0));
    let bp = window_breakpoints(window, rate);
    let i1 = integrate(
        |x| e(beta * x) * (window.value(x) * kernel(x)),
        &bp,
        quad_cfg(scale),
    )?
    .value;
    let e1 = i1 * Complex64::new(0.0, 2.0 * PI * beta) * (-2.0 / c);
    let mut i2 = Complex64::new(0.0, 0.0);
    for bp in ramp_breakpoints(window, rate) {
        i2 += integrate(
            |x| e(beta * x) * (window.derivative(x) * kernel(x)),
            &bp,
            quad_cfg(scale),
        )?
        .value;
    }
    let e2 = i2 * (-2.0 / c);
    let direct = transform_w(window, beta, ell, y)?;
    Ok(WBetaSplit { e1, e2, direct })
}

/// A transform sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformProfile {
    pub y_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub branch: Branch,
}

/// 𝒱^± on a strictly increasing grid of positive y.
pub fn transform_profile(
    window: &SmoothWindow,
    beta: f64,
    spec: &KernelSpec,
    y_grid: &[f64],
) -> Result<TransformProfile> {
    if y_grid.windows(2).any(|p| p[1] <= p[0]) {
        return invalid("transform grid must be strictly increasing");
    }
    let values = y_grid
        .iter()
        .map(|&y| transform_v(window, beta, spec, y))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = values
        .iter()
        .position(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::Accuracy(format!(
            "non-finite transform at y = {}",
            y_grid[bad]
        )));
    }
    Ok(TransformProfile {
        y_grid: y_grid.to_vec(),
        values,
        branch: spec.branch,
    })
}

/// Outcome of one two-sided check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoronoiCheck {
    pub a: i64,
    pub q: i64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// The non-oscillatory term of the r_ℓ formula (zero for cusp forms).
    pub main_term: Complex64,
    pub relerr: f64,
    /// Number of non-zero dual terms summed.
    pub dual_terms: u64,
    /// Largest dual index reached.
    pub last_n: u64,
}

impl VoronoiCheck {
    fn new(
        a: i64,
        q: i64,
        lhs: Complex64,
        main_term: Complex64,
        dual: Complex64,
        terms: u64,
        last_n: u64,
    ) -> Self {
        let rhs = main_term + dual;
        VoronoiCheck {
            a,
            q,
            lhs,
            rhs,
            main_term,
            relerr: (lhs - rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE),
            dual_terms: terms,
            last_n,
        }
    }
}

/// Residues 1 ≤ a ≤ q coprime to q.
pub fn coprime_residues(q: i64) -> Vec<i64> {
    (1..=q.max(1)).filter(|&a| gcd(a, q) == 1).collect()
}

fn check_residue(a: i64, q: i64) -> Result<()> {
    if q < 1 {
        return invalid(format!("modulus q = {q} must be positive"));
    }
    if gcd(a, q) != 1 {
        return Err(Error::NotInvertible { a, q });
    }
    Ok(())
}

/// Two-sided checker for the r_ℓ formula; the transform table is shared across (a, q).
#[derive(Debug, Clone)]
pub struct ReprVoronoi {
    ell: u32,
    s: f64,
    window: SmoothWindow,
    table: ChebyshevTable,
    reprs: ReprTable,
    mellin: f64,
    edge_len: f64,
}

impl ReprVoronoi {
    pub fn new(ell: u32, window: SmoothWindow) -> Result<Self> {
        let s = bessel_order(ell)?;
        let (lo, hi) = window.support();
        if lo < 1.0 {
            return invalid("window support must lie in x ≥ 1");
        }
        let table = ChebyshevTable::new(TrapezoidTransform::new(window, 0.5 * s, s));
        let mellin = mellin_w(&window, 0.0, ell as f64 / 2.0)?.re;
        let reprs = repr_count(ell, hi as usize + 1)?;
        let edge_len = window
            .ramps()
            .iter()
            .map(|&(a, b)| b.sqrt() - a.sqrt())
            .fold(f64::INFINITY, f64::min);
        Ok(ReprVoronoi {
            ell,
            s,
            window,
            table,
            reprs,
            mellin,
            edge_len,
        })
    }

    pub fn window(&self) -> &SmoothWindow {
        &self.window
    }

    fn ensure_reprs(&mut self, n: u64) -> Result<()> {
        if n as usize > self.reprs.n_max() {
            let target = (n as usize).max(self.reprs.n_max() * 3 / 2);
            self.reprs = repr_count(self.ell, target)?;
        }
        Ok(())
    }

    /// Σ r_ℓ(n)e(an/q)w(n) over the support.
    pub fn direct_side(&self, a: i64, q: i64) -> Complex64 {
        let (lo, hi) = self.window.support();
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (lo.ceil() as u64)..=(hi.floor() as u64) {
            let r = self.reprs.get(n as usize);
            if r == 0 {
                continue;
            }
            let w = self.window.value(n as f64);
            if w != 0.0 {
                acc += e_frac(a as i128 * n as i128, q) * (r as f64 * w);
            }
        }
        acc
    }

    /// Both sides of the formula for one (a, q).
    pub fn check(&mut self, a: i64, q: i64) -> Result<VoronoiCheck> {
        check_residue(a, q)?;
        let ell = self.ell;
        let half = ell as f64 / 2.0;
        let lhs = self.direct_side(a, q);
        // (unit coefficient, main-term factor, dual prefactor, dual residue m, κ with v = √n/κ)
        let (unit, main_factor, dual_factor, m, kappa) = if q % 2 == 1 {
            let chi = if q == 1 { 1 } else { jacobi_symbol(a, q)? };
            let unit = (epsilon_unit(q)? * chi as f64).powu(ell);
            let main = PI.powf(half) * (q as f64).powf(-half) / gamma(half);
            let m = if q == 1 {
                0
            } else {
                mod_inverse(4 * a.rem_euclid(q), q)?
            };
            (
                unit,
                Complex64::new(main, 0.0),
                Complex64::new(PI / q as f64, 0.0),
                m,
                2.0 * q as f64,
            )
        } else if q % 4 == 0 {
            let d = mod_inverse(a, q)?;
            let unit =
                (Complex64::new(jacobi_symbol(q, d)? as f64, 0.0) / epsilon_unit(d)?).powu(ell);
            let i_half = Complex64::from_polar(1.0, PI * half / 2.0);
            let main = i_half * (2.0 * PI / q as f64).powf(half) / gamma(half);
            (unit, main, i_half * (2.0 * PI / q as f64), d, q as f64)
        } else {
            return Err(Error::Unsupported(format!(
                "q = {q} ≡ 2 (mod 4): no closed form for the theta multiplier is implemented"
            )));
        };
        let main_term = unit * main_factor * self.mellin;
        let scale = kappa.powf(-self.s);
        let threshold = DUAL_TOLERANCE * lhs.norm();
        let v_guess = 50.0 / self.edge_len;
        self.ensure_reprs(((v_guess * kappa).powi(2) as u64).min(MAX_DUAL_INDEX))?;
        let ell_reprs = self.ell;
        let ReprVoronoi { table, reprs, .. } = self;
        let dual = truncated_dual_sum(kappa, threshold, MAX_DUAL_INDEX, |n| {
            if n as usize > reprs.n_max() {
                let target = (n as usize).max(reprs.n_max() * 3 / 2);
                *reprs = repr_count(ell_reprs, target)?;
            }
            let r = reprs.get(n as usize);
            if r == 0 {
                return Ok(None);
            }
            let v = (n as f64).sqrt() / kappa;
            let g = table.reduced(v);
            let weight = r as f64 * scale;
            Ok(Some((
                e_frac(-(m as i128) * n as i128, q) * (weight * g),
                weight * table.reduced_noise(v),
            )))
        })?;
        Ok(VoronoiCheck::new(
            a,
            q,
            lhs,
            main_term,
            unit * dual_factor * dual.sum,
            dual.terms,
            dual.last_n,
        ))
    }

    /// Checks for every residue a coprime to q.
    pub fn check_all(&mut self, q: i64) -> Result<Vec<VoronoiCheck>> {
        coprime_residues(q)
            .into_iter()
            .map(|a| self.check(a, q))
            .collect()
    }

    /// 𝒲(y) from the dual-side table, for diagnostics.
    pub fn tabulated_w(&mut self, y: f64) -> f64 {
        self.table.value(y.sqrt())
    }
}

/// Both sides of the r_ℓ Voronoi formula for one (ℓ, a, q) and window.
pub fn verify_voronoi_r(ell: u32, a: i64, q: i64, window: &SmoothWindow) -> Result<VoronoiCheck> {
    ReprVoronoi::new(ell, *window)?.check(a, q)
}

/// Two-sided checker for the λ_f formula.
#[derive(Debug, Clone)]
pub struct FormVoronoi<'a> {
    coeffs: &'a CoefficientTable,
    window: SmoothWindow,
    chi: Option<DirichletCharacter>,
    table: Option<ChebyshevTable>,
}

impl<'a> FormVoronoi<'a> {
    /// A checker for a level-1 form (trivial nebentypus).
    pub fn new(coeffs: &'a CoefficientTable, window: SmoothWindow) -> Result<Self> {
        Self::with_character(coeffs, window, None)
    }

    /// A checker with an explicit nebentypus; required when the level exceeds 1.
    pub fn with_character(
        coeffs: &'a CoefficientTable,
        window: SmoothWindow,
        chi: Option<DirichletCharacter>,
    ) -> Result<Self> {
        let spec = &coeffs.spec;
        spec.validate()?;
        match &chi {
            None if spec.level > 1 => {
                return Err(Error::Unsupported(format!(
                    "level {} needs its nebentypus supplied as a character table",
                    spec.level
                )))
            }
            Some(c) if c.modulus != spec.level => {
                return invalid(format!(
                    "character modulus {} differs from level {}",
                    c.modulus, spec.level
                ))
            }
            _ => {}
        }
        let (lo, hi) = window.support();
        if lo < 1.0 {
            return invalid("window support must lie in x ≥ 1");
        }
        coeffs.require(hi.floor() as u64)?;
        let table = match spec.kind {
            FormKind::Holomorphic => {
                let order = spec.weight as f64 - 1.0;
                if order > MAX_ORDER {
                    return Err(Error::Unsupported(format!(
                        "weight {} too large",
                        spec.weight
                    )));
                }
                Some(ChebyshevTable::new(TrapezoidTransform::new(
                    window, 0.0, order,
                )))
            }
            FormKind::Maass => None,
        };
        Ok(FormVoronoi {
            coeffs,
            window,
            chi,
            table,
        })
    }

    /// Σ λ(n)e(an/q)v(n) over the support.
    pub fn direct_side(&self, a: i64, q: i64) -> Complex64 {
        let (lo, hi) = self.window.support();
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (lo.ceil() as u64)..=(hi.floor() as u64) {
            let w = self.window.value(n as f64);
            if w != 0.0 {
                acc += e_frac(a as i128 * n as i128, q) * (self.coeffs.lambda(n) * w);
            }
        }
        acc
    }

    /// Both sides for one (a, q). For a Maass form without ω_f only the ℋ⁺ part of the
    /// dual side is included, so the residual measures the ℋ⁻ contribution.
    pub fn check(&mut self, a: i64, q: i64) -> Result<VoronoiCheck> {
        check_residue(a, q)?;
        let spec = self.coeffs.spec;
        if !(q as u64).is_multiple_of(spec.level) {
            return invalid(format!(
                "q = {q} must be divisible by the level {}",
                spec.level
            ));
        }
        let d = mod_inverse(a, q)?;
        let chi_d = self
            .chi
            .as_ref()
            .map_or(Complex64::new(1.0, 0.0), |c| c.eval(d));
        let lhs = self.direct_side(a, q);
        let threshold = DUAL_TOLERANCE * lhs.norm();
        let kappa = q as f64;
        let coeffs = self.coeffs;
        let dual = match self.table.as_mut() {
            Some(table) => {
                let ik = Complex64::new(0.0, 1.0).powu(spec.weight);
                let order = spec.weight as f64 - 1.0;
                let sum = truncated_dual_sum(kappa, threshold, MAX_DUAL_INDEX, |n| {
                    let lam = coeffs.try_lambda(n)?;
                    if lam == 0.0 {
                        return Ok(None);
                    }
                    let v = (n as f64).sqrt() / kappa;
                    let vs = v.powf(order);
                    let t = table.reduced(v) * vs;
                    let weight = lam.abs() * 2.0 * PI;
                    Ok(Some((
                        e_frac(-(d as i128) * n as i128, q) * (lam * 2.0 * PI * t),
                        weight * table.reduced_noise(v) * vs,
                    )))
                })?;
                (ik * sum.sum, sum.terms, sum.last_n)
            }
            None => self.maass_dual(d, q, threshold)?,
        };
        Ok(VoronoiCheck::new(
            a,
            q,
            lhs,
            Complex64::new(0.0, 0.0),
            chi_d * dual.0 / q as f64,
            dual.1,
            dual.2,
        ))
    }

    fn maass_dual(&self, d: i64, q: i64, threshold: f64) -> Result<(Complex64, u64, u64)> {
        let spec = self.coeffs.spec;
        let kappa = q as f64;
        let plus = KernelSpec::new(spec, Branch::Plus);
        let minus = KernelSpec::new(spec, Branch::Minus);
        // Γ(1/2 + iμ − κ/2)/Γ(1/2 + iμ + κ/2) for weight 0 or 1.
        let ratio = if spec.weight == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, spec.spectral_mu).inv()
        };
        let omega = spec.omega;
        let coeffs = self.coeffs;
        let window = &self.window;
        let sum = truncated_dual_sum(kappa, threshold, MAASS_MAX_TERMS, |n| {
            let lam = coeffs.try_lambda(n)?;
            if lam == 0.0 {
                return Ok(None);
            }
            let y = n as f64 / (kappa * kappa);
            let mut t = e_frac(-(d as i128) * n as i128, q) * transform_v(window, 0.0, &plus, y)?;
            if let Some(w) = omega {
                t += w
                    * ratio
                    * e_frac(d as i128 * n as i128, q)
                    * transform_v(window, 0.0, &minus, y)?;
            }
            // Adaptive quadrature is accurate to about 1e-11 of the window mass.
            let noise = 1e-11 * lam.abs() * 2.0 * PI * window.mass();
            Ok(Some((t * lam, noise)))
        })?;
        Ok((sum.sum, sum.terms, sum.last_n))
    }

    pub fn check_all(&mut self, q: i64) -> Result<Vec<VoronoiCheck>> {
        coprime_residues(q)
            .into_iter()
            .map(|a| self.check(a, q))
            .collect()
    }
}

/// Both sides of the λ_f Voronoi formula for one (a, q) and window.
pub fn verify_voronoi_f(
    table: &CoefficientTable,
    a: i64,
    q: i64,
    window: &SmoothWindow,
) -> Result<VoronoiCheck> {
    FormVoronoi::new(table, *window)?.check(a, q)
}
