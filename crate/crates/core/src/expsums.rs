//! Complete exponential sums.
//!
//! Gauss sums G(a,b;q) = Σ_{x mod q} e((ax² + bx)/q), Kloosterman sums S(m,n;q),
//! Salié sums T(m,n;p), the twisted sums 𝒞(b₁,b₂,h,u;q) built from products of Gauss
//! sums, and the theta-multiplier character sums attached to moduli q = 4Dp.
//!
//! Phases are reduced exactly in integer arithmetic before the trigonometric call.
//! Direct summation is the ground truth; closed forms are checked against it.

use crate::arith::{
    divisor_count, epsilon_unit, factor_squarefull_squarefree, factorize, gcd, is_prime,
    jacobi_symbol, mod_inverse, modp, MAX_MODULUS,
};
use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// e(x) = exp(2πi x), with x reduced mod 1 first.
pub fn e(x: f64) -> Complex64 {
    let r = x - x.floor();
    Complex64::cis(2.0 * PI * r)
}

/// e(num/den) with the numerator reduced exactly modulo den.
pub fn e_frac(num: i128, den: i64) -> Complex64 {
    let r = num.rem_euclid(den as i128) as f64;
    Complex64::cis(2.0 * PI * r / den as f64)
}

fn check_modulus(q: i64) -> Result<()> {
    if !(1..=MAX_MODULUS).contains(&q) {
        return invalid(format!("modulus {q} out of range [1, 2^31]"));
    }
    Ok(())
}

/// A complete exponential sum together with its Weil-type bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumValue {
    pub value: Complex64,
    pub modulus: u64,
    pub bound: f64,
}

impl ExpSumValue {
    /// Builds the value, rejecting it if |value| exceeds a finite bound
    /// (with relative slack 10⁻⁹ for rounding).
    pub fn checked(value: Complex64, modulus: u64, bound: f64) -> Result<Self> {
        let mag = value.norm();
        if bound.is_finite() && mag > bound * (1.0 + 1e-9) + 1e-9 {
            return Err(Error::BoundViolation { value: mag, bound });
        }
        Ok(ExpSumValue {
            value,
            modulus,
            bound,
        })
    }
}

/// G(a,b;q) by direct summation.
pub fn gauss_sum(a: i64, b: i64, q: i64) -> Result<Complex64> {
    check_modulus(q)?;
    let (a, b, qq) = (modp(a, q) as i128, modp(b, q) as i128, q as i128);
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 0..qq {
        acc += e_frac((a * x % qq) * x + b * x, q);
    }
    Ok(acc)
}

/// Closed form e(−4̄ā b²/q)·(a/q)·ε_q·√q, valid for gcd(2a, q) = 1.
pub fn gauss_sum_closed(a: i64, b: i64, q: i64) -> Result<Complex64> {
    check_modulus(q)?;
    if q % 2 == 0 {
        return invalid(format!("closed form needs odd q, got {q}"));
    }
    if gcd(a, q) != 1 {
        return Err(Error::NotInvertible { a, q });
    }
    let inv4 = mod_inverse(4, q)? as i128;
    let inva = mod_inverse(a, q)? as i128;
    let b = modp(b, q) as i128;
    let phase = e_frac(-(inv4 * inva % q as i128) * (b * b % q as i128), q);
    let sym = jacobi_symbol(a, q)? as f64;
    Ok(phase * epsilon_unit(q)? * sym * (q as f64).sqrt())
}

/// G(a,b;q) for every a mod q at once, for fixed b and q.
///
/// With c_b[r] = Σ_{x² ≡ r} e(bx/q) one has G(a,b;q) = Σ_r c_b[r] e(ar/q), a length-q DFT.
#[derive(Debug, Clone)]
pub struct GaussTable {
    pub q: i64,
    pub b: i64,
    values: Vec<Complex64>,
}

impl GaussTable {
    pub fn new(b: i64, q: i64) -> Result<Self> {
        check_modulus(q)?;
        let n = q as usize;
        let qq = q as i128;
        let bb = modp(b, q) as i128;
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for x in 0..qq {
            buf[(x * x % qq) as usize] += e_frac(bb * x, q);
        }
        let mut planner = FftPlanner::<f64>::new();
        planner.plan_fft_inverse(n).process(&mut buf);
        Ok(GaussTable { q, b, values: buf })
    }

    /// The O(q²) construction, kept as an oracle.
    pub fn direct(b: i64, q: i64) -> Result<Self> {
        let values = (0..q)
            .map(|a| gauss_sum(a, b, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(GaussTable { q, b, values })
    }

    pub fn get(&self, a: i64) -> Complex64 {
        self.values[modp(a, self.q) as usize]
    }
}

/// S(m,n;q) = Σ*_{a mod q} e((ma + nā)/q) with bound d(q)·√q·√gcd(m,n,q).
pub fn kloosterman(m: i64, n: i64, q: i64) -> Result<ExpSumValue> {
    check_modulus(q)?;
    let (mm, nn) = (modp(m, q) as i128, modp(n, q) as i128);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        if gcd(a, q) != 1 {
            continue;
        }
        let inv = mod_inverse(a, q)? as i128;
        acc += e_frac(mm * a as i128 + nn * inv, q);
    }
    let g = gcd(gcd(m, n), q) as f64;
    let bound = divisor_count(q as u64) as f64 * (q as f64).sqrt() * g.sqrt();
    ExpSumValue::checked(Complex64::new(acc.re, 0.0), q as u64, bound)
}

/// The Ramanujan sum c_q(n) = Σ_{d | (q,n)} μ(q/d)·d (oracle for S(0,n;q)).
pub fn ramanujan_sum(q: i64, n: i64) -> i64 {
    let g = gcd(q, n) as u64;
    let mut total = 0i64;
    for d in 1..=g {
        if g.is_multiple_of(d) {
            total += crate::arith::mobius(q as u64 / d) * d as i64;
        }
    }
    total
}

fn require_odd_prime(p: i64) -> Result<()> {
    if p < 3 || p % 2 == 0 || !is_prime(p as u64) || p > MAX_MODULUS {
        return invalid(format!("{p} is not an odd prime"));
    }
    Ok(())
}

/// T(m,n;p) = Σ*_{a mod p} (a/p)·e((ma + nā)/p).
///
/// Bound: 2√p if p ∤ mn, √p if exactly one of m, n is divisible by p, 0 if both are.
pub fn salie(m: i64, n: i64, p: i64) -> Result<ExpSumValue> {
    require_odd_prime(p)?;
    let (mm, nn) = (modp(m, p) as i128, modp(n, p) as i128);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..p {
        let inv = mod_inverse(a, p)? as i128;
        let chi = jacobi_symbol(a, p)? as f64;
        acc += e_frac(mm * a as i128 + nn * inv, p) * chi;
    }
    let sp = (p as f64).sqrt();
    let bound = match (mm == 0, nn == 0) {
        (false, false) => 2.0 * sp,
        (true, true) => 0.0,
        _ => sp,
    };
    ExpSumValue::checked(acc, p as u64, bound)
}

/// Σ*_{b mod q} w(b)·e(m b̄/q)·e(nb/q) for every n mod q, as one length-q DFT.
fn inverse_twisted_row(
    m: i64,
    q: i64,
    weight: impl Fn(i64) -> Result<f64>,
) -> Result<Vec<Complex64>> {
    let mm = modp(m, q) as i128;
    let mut buf = vec![Complex64::new(0.0, 0.0); q as usize];
    for b in 1..=q {
        if gcd(b, q) != 1 {
            continue;
        }
        let inv = mod_inverse(b, q)? as i128;
        buf[(b % q) as usize] = e_frac(mm * inv, q) * weight(b)?;
    }
    FftPlanner::<f64>::new()
        .plan_fft_inverse(q as usize)
        .process(&mut buf);
    Ok(buf)
}

/// S(m,n;q) for all n mod q at once (index n). Matches [`kloosterman`] up to rounding.
pub fn kloosterman_row(m: i64, q: i64) -> Result<Vec<Complex64>> {
    check_modulus(q)?;
    inverse_twisted_row(m, q, |_| Ok(1.0))
}

/// T(m,n;p) for all n mod p at once (index n). Matches [`salie`] up to rounding.
pub fn salie_row(m: i64, p: i64) -> Result<Vec<Complex64>> {
    require_odd_prime(p)?;
    inverse_twisted_row(m, p, |b| Ok(jacobi_symbol(b, p)? as f64))
}

/// 𝒞(b₁,b₂,h,u;q) = Σ*_{a mod q} G(a,b₁;q)G(a,b₂;q)e((ah + āu)/q), using FFT-built Gauss tables.
pub fn twisted_sum_c(b1: i64, b2: i64, h: i64, u: i64, q: i64) -> Result<Complex64> {
    let t1 = GaussTable::new(b1, q)?;
    let t2 = if modp(b2, q) == modp(b1, q) {
        t1.clone()
    } else {
        GaussTable::new(b2, q)?
    };
    twisted_sum_with_tables(&t1, &t2, h, u)
}

/// 𝒞 from explicitly supplied Gauss tables (both for the same modulus).
pub fn twisted_sum_with_tables(
    t1: &GaussTable,
    t2: &GaussTable,
    h: i64,
    u: i64,
) -> Result<Complex64> {
    let q = t1.q;
    if t2.q != q {
        return invalid("Gauss tables for different moduli");
    }
    let (hh, uu) = (modp(h, q) as i128, modp(u, q) as i128);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        if gcd(a, q) != 1 {
            continue;
        }
        let inv = mod_inverse(a, q)? as i128;
        acc += t1.get(a) * t2.get(a) * e_frac(hh * a as i128 + uu * inv, q);
    }
    Ok(acc)
}

/// 𝒞 by the direct definition, with each Gauss sum summed from scratch.
pub fn twisted_sum_c_direct(b1: i64, b2: i64, h: i64, u: i64, q: i64) -> Result<Complex64> {
    twisted_sum_with_tables(
        &GaussTable::direct(b1, q)?,
        &GaussTable::direct(b2, q)?,
        h,
        u,
    )
}

/// The two sides of the multiplicative splitting 𝒞(q₁q₂) = 𝒞(q̄₂²h; q₁)·𝒞(q̄₁²h; q₂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistedFactorization {
    pub q1: i64,
    pub q2: i64,
    pub whole: Complex64,
    pub part1: Complex64,
    pub part2: Complex64,
}

impl TwistedFactorization {
    /// |whole − part1·part2| / max(|whole|, |part1·part2|, 1); the floor keeps vanishing sums
    /// from turning rounding noise into a large ratio.
    pub fn relative_defect(&self) -> f64 {
        let prod = self.part1 * self.part2;
        (self.whole - prod).norm() / self.whole.norm().max(prod.norm()).max(1.0)
    }
}

/// Evaluates both sides of the splitting for coprime q₁, q₂.
pub fn twisted_factorization(
    b1: i64,
    b2: i64,
    h: i64,
    u: i64,
    q1: i64,
    q2: i64,
) -> Result<TwistedFactorization> {
    if gcd(q1, q2) != 1 {
        return invalid(format!("moduli {q1} and {q2} are not coprime"));
    }
    let whole = twisted_sum_c(b1, b2, h, u, q1 * q2)?;
    let inv2 = mod_inverse(q2, q1)? as i128;
    let inv1 = mod_inverse(q1, q2)? as i128;
    let h1 = (inv2 * inv2 % q1 as i128 * h as i128).rem_euclid(q1 as i128) as i64;
    let h2 = (inv1 * inv1 % q2 as i128 * h as i128).rem_euclid(q2 as i128) as i64;
    Ok(TwistedFactorization {
        q1,
        q2,
        whole,
        part1: twisted_sum_c(b1, b2, h1, u, q1)?,
        part2: twisted_sum_c(b1, b2, h2, u, q2)?,
    })
}

/// The stated bound q₁²·q₂^{3/2}·gcd(h,q₂)^{1/2} (constant 1).
pub fn twisted_sum_bound(h: i64, q: i64) -> Result<f64> {
    let f = factor_squarefull_squarefree(q as u64)?;
    let (q1, q2) = (f.q1 as f64, f.q2 as f64);
    Ok(q1 * q1 * q2.powf(1.5) * (gcd(h, f.q2 as i64) as f64).sqrt())
}

/// The bound with Weil's constant made explicit: each prime p | q₂ with p ∤ h costs a factor 2,
/// so the constant is 2^{ω(q₂/(h,q₂))}.
pub fn twisted_sum_weil_bound(h: i64, q: i64) -> Result<f64> {
    let f = factor_squarefull_squarefree(q as u64)?;
    let g = gcd(h, f.q2 as i64) as u64;
    let omega = factorize(f.q2 / g).len() as i32;
    Ok(2f64.powi(omega) * twisted_sum_bound(h, q)?)
}

/// A Dirichlet character given by its values on residues 0..D−1.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub values: Vec<Complex64>,
}

impl DirichletCharacter {
    /// The principal character mod D (trivial for D = 1).
    pub fn principal(modulus: u64) -> Self {
        let values = (0..modulus)
            .map(|r| {
                if gcd(r as i64, modulus as i64) == 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        DirichletCharacter { modulus, values }
    }

    pub fn from_values(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return invalid("character table must be non-empty");
        }
        Ok(DirichletCharacter {
            modulus: values.len() as u64,
            values,
        })
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        self.values[modp(n, self.modulus as i64) as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimePartKind {
    Kloosterman,
    Salie,
}

/// The character sum Σ_{a mod q, ad ≡ 1} χ_D(−d)((q/d)ε_d⁻¹)^ℓ e((ha + Md)/q), q = 4Dp,
/// evaluated directly and through its CRT factorization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaCharSum {
    pub direct: Complex64,
    pub four_d_part: Complex64,
    pub p_part: Complex64,
    pub p: i64,
    pub p_part_kind: PrimePartKind,
    /// C(D)·√p with C(D) = 2φ(4D): the trivial 4D-part bound times Weil's bound for the p-part.
    pub bound: f64,
}

impl ThetaCharSum {
    pub fn factored(&self) -> Complex64 {
        self.four_d_part * self.p_part
    }
}

pub fn theta_char_sum(
    h: i64,
    m: i64,
    q: i64,
    ell: u32,
    level: i64,
    chi: Option<&DirichletCharacter>,
) -> Result<ThetaCharSum> {
    check_modulus(q)?;
    if level < 1 || q % (4 * level) != 0 {
        return invalid(format!(
            "modulus {q} is not of the form 4·D·p with D = {level}"
        ));
    }
    let p = q / (4 * level);
    if !is_prime(p as u64) || gcd(p, 2 * level * h) != 1 {
        return invalid(format!("q = {q}: p = {p} must be a prime not dividing 2Dh"));
    }
    let principal;
    let chi = match chi {
        Some(c) => {
            if c.modulus as i64 != level {
                return invalid("character modulus differs from the level");
            }
            c
        }
        None => {
            if level != 1 {
                return Err(Error::Unsupported(
                    "a nebentypus character table is required for level > 1".into(),
                ));
            }
            principal = DirichletCharacter::principal(1);
            &principal
        }
    };
    let unit_pow = |d: i64| -> Result<Complex64> {
        let sym = jacobi_symbol(q, d)? as f64;
        Ok((epsilon_unit(d)?.conj() * sym).powu(ell))
    };

    let (hh, mm) = (h as i128, m as i128);
    let mut direct = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        if gcd(a, q) != 1 {
            continue;
        }
        let d = mod_inverse(a, q)?;
        direct += chi.eval(-d) * unit_pow(d)? * e_frac(hh * a as i128 + mm * d as i128, q);
    }

    let fd = 4 * level;
    let u = mod_inverse(p, fd)? as i128;
    let v = mod_inverse(fd, p)? as i128;
    let mut four_d_part = Complex64::new(0.0, 0.0);
    for a1 in 1..=fd {
        if gcd(a1, fd) != 1 {
            continue;
        }
        let d1 = mod_inverse(a1, fd)?;
        let mut w = chi.eval(-d1) * e_frac((hh * a1 as i128 + mm * d1 as i128) * u, fd);
        if ell.is_multiple_of(2) {
            w *= crate::arith::chi4(a1).pow(ell / 2) as f64;
        } else {
            let recip = if ((p - 1) / 2) * ((d1 - 1) / 2) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            let sym = jacobi_symbol(level, d1)? as f64;
            w *= epsilon_unit(d1)?.conj().powu(ell) * sym * recip;
        }
        four_d_part += w;
    }
    let hv = (hh * v).rem_euclid(p as i128) as i64;
    let mv = (mm * v).rem_euclid(p as i128) as i64;
    let (p_part, kind) = if ell.is_multiple_of(2) {
        (kloosterman(hv, mv, p)?.value, PrimePartKind::Kloosterman)
    } else {
        (salie(hv, mv, p)?.value, PrimePartKind::Salie)
    };
    let phi4d = crate::arith::euler_phi(fd as u64) as f64;
    Ok(ThetaCharSum {
        direct,
        four_d_part,
        p_part,
        p,
        p_part_kind: kind,
        bound: 2.0 * phi4d * (p as f64).sqrt(),
    })
}
