//! Jutila's approximation to the indicator of [0, 1].
//!
//! Ĩ(x) = (2δL)⁻¹ Σ_{q∈𝒬} Σ_{(a,q)=1} 1[|x − a/q| ≤ δ], with the intervals taken modulo 1,
//! L = Σ_{q∈𝒬} φ(q) and 𝒬 = {4Dp : p prime in [Q/(8D), Q/(4D)], p ∤ 2Dh}.
//! Ĩ is piecewise constant, so ∫₀¹ |1 − Ĩ|² is computed exactly by a sweep over the
//! interval endpoints.

use crate::arith::{euler_phi, gcd, is_prime};
use crate::error::{invalid, Error, Result};

/// Upper limit on the number of intervals in an exact L² sweep.
pub const MAX_INTERVALS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ModuliSet {
    pub level: u64,
    pub q_cut: f64,
    pub h: u64,
    /// The moduli 4Dp in increasing order.
    pub moduli: Vec<u64>,
    /// L = Σ φ(q).
    pub l_sum: u64,
}

impl ModuliSet {
    /// L recomputed from the moduli.
    pub fn recompute_l(&self) -> u64 {
        self.moduli.iter().map(|&q| euler_phi(q)).sum()
    }

    /// The prime p of each modulus q = 4Dp.
    pub fn primes(&self) -> Vec<u64> {
        self.moduli.iter().map(|&q| q / (4 * self.level)).collect()
    }

    /// True when every modulus is 4D times a prime in range coprime to 2Dh.
    pub fn shape_ok(&self) -> bool {
        let lo = self.q_cut / (8.0 * self.level as f64);
        let hi = self.q_cut / (4.0 * self.level as f64);
        let guard = 2 * self.level * self.h;
        self.moduli.iter().all(|&q| {
            q % (4 * self.level) == 0 && {
                let p = q / (4 * self.level);
                is_prime(p)
                    && (p as f64) >= lo
                    && (p as f64) <= hi
                    && gcd(p as i64, guard as i64) == 1
            }
        })
    }

    /// L·log Q / Q², the constant c in L ≥ c·Q²/log Q.
    pub fn density(&self) -> f64 {
        self.l_sum as f64 * self.q_cut.ln() / (self.q_cut * self.q_cut)
    }
}

/// 𝒬 = {4Dp : p prime, Q/(8D) ≤ p ≤ Q/(4D), p ∤ 2Dh}; requires Q ≥ 16D.
pub fn build_moduli_set(level: u64, q_cut: f64, h: u64) -> Result<ModuliSet> {
    if level == 0 {
        return invalid("level must be positive");
    }
    if !(q_cut.is_finite() && q_cut >= 16.0 * level as f64) {
        return invalid(format!("Q = {q_cut} must be at least 16D = {}", 16 * level));
    }
    let lo = (q_cut / (8.0 * level as f64)).ceil() as u64;
    let hi = (q_cut / (4.0 * level as f64)).floor() as u64;
    let guard = (2 * level * h) as i64;
    let moduli: Vec<u64> = (lo.max(2)..=hi)
        .filter(|&p| is_prime(p) && gcd(p as i64, guard) == 1)
        .map(|p| 4 * level * p)
        .collect();
    if moduli.is_empty() {
        return invalid(format!(
            "no admissible primes in [{lo}, {hi}] for D = {level}, h = {h}"
        ));
    }
    let l_sum = moduli.iter().map(|&q| euler_phi(q)).sum();
    Ok(ModuliSet {
        level,
        q_cut,
        h,
        moduli,
        l_sum,
    })
}

fn check_delta(set: &ModuliSet, delta: f64) -> Result<()> {
    let q = set.q_cut;
    let (lo, hi) = (1.0 / (q * q), 1.0 / q);
    if !(delta >= lo * (1.0 - 1e-12) && delta <= hi * (1.0 + 1e-12)) {
        return invalid(format!("δ = {delta} outside [Q⁻², Q⁻¹] = [{lo}, {hi}]"));
    }
    Ok(())
}

/// Ĩ(x) for x in [0, 1).
pub fn jutila_indicator(set: &ModuliSet, delta: f64, x: f64) -> Result<f64> {
    check_delta(set, delta)?;
    if !(0.0..1.0).contains(&x) {
        return invalid(format!("x = {x} outside [0, 1)"));
    }
    let mut count = 0u64;
    for &q in &set.moduli {
        let qf = q as f64;
        let lo = (qf * (x - delta)).ceil() as i64;
        let hi = (qf * (x + delta)).floor() as i64;
        for a in lo..=hi {
            let c = a as f64 / qf;
            if (x - c).abs() <= delta && gcd(a.rem_euclid(q as i64), q as i64) == 1 {
                count += 1;
            }
        }
    }
    Ok(count as f64 / (2.0 * delta * set.l_sum as f64))
}

/// Sweep of the piecewise-constant Ĩ over [0, 1]: (∫|1 − Ĩ|², ∫Ĩ).
fn sweep(set: &ModuliSet, delta: f64) -> Result<(f64, f64)> {
    if set.l_sum > MAX_INTERVALS {
        return Err(Error::Unsupported(format!(
            "{} intervals exceed the sweep limit {MAX_INTERVALS}",
            set.l_sum
        )));
    }
    let mut events: Vec<(f64, i32)> = Vec::with_capacity(4 * set.l_sum as usize);
    for &q in &set.moduli {
        for a in 0..q {
            if gcd(a as i64, q as i64) != 1 {
                continue;
            }
            let c = a as f64 / q as f64;
            let (lo, hi) = (c - delta, c + delta);
            for shift in [-1.0, 0.0, 1.0] {
                let (l, r) = ((lo + shift).max(0.0), (hi + shift).min(1.0));
                if r > l {
                    events.push((l, 1));
                    events.push((r, -1));
                }
            }
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));
    let norm = 1.0 / (2.0 * delta * set.l_sum as f64);
    let (mut x, mut count, mut l2, mut mass) = (0.0, 0i64, 0.0, 0.0);
    for (t, d) in events {
        let len = t - x;
        let v = count as f64 * norm;
        l2 += len * (1.0 - v) * (1.0 - v);
        mass += len * v;
        x = t;
        count += d as i64;
    }
    l2 += 1.0 - x;
    Ok((l2, mass))
}

/// ∫₀¹ |1 − Ĩ(β)|² dβ, exact up to rounding.
pub fn jutila_l2_error(set: &ModuliSet, delta: f64) -> Result<f64> {
    check_delta(set, delta)?;
    Ok(sweep(set, delta)?.0)
}

/// ∫₀¹ Ĩ(β) dβ, which equals 1 under the mod-1 convention.
pub fn jutila_mass(set: &ModuliSet, delta: f64) -> Result<f64> {
    check_delta(set, delta)?;
    Ok(sweep(set, delta)?.1)
}

/// The L² error in units of Q²/(δL²).
pub fn jutila_constant(set: &ModuliSet, delta: f64) -> Result<f64> {
    let err = jutila_l2_error(set, delta)?;
    let l = set.l_sum as f64;
    Ok(err * delta * l * l / (set.q_cut * set.q_cut))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_examples() {
        assert_eq!(
            build_moduli_set(1, 80.0, 1).unwrap().moduli,
            vec![44, 52, 68, 76]
        );
        assert_eq!(
            build_moduli_set(1, 80.0, 11).unwrap().moduli,
            vec![52, 68, 76]
        );
        assert_eq!(build_moduli_set(1, 20.0, 1).unwrap().moduli, vec![12, 20]);
        assert!(build_moduli_set(1, 15.0, 1).is_err());
    }

    #[test]
    fn indicator_far_from_fractions() {
        let set = build_moduli_set(1, 20.0, 1).unwrap();
        // Fractions with denominators 12 and 20 near 0.04: 1/20 = 0.05 only.
        assert_eq!(jutila_indicator(&set, 1.0 / 400.0, 0.04).unwrap(), 0.0);
        assert!(jutila_indicator(&set, 1.0 / 400.0, 0.05).unwrap() > 0.0);
    }
}
