//! Farey dissection of order Q.
//!
//! Each a/q with 1 ≤ a ≤ q ≤ Q, (a, q) = 1 owns the arc 𝓜(a,q) = a/q + [−1/(q(q+q′)),
//! 1/(q(q+q″))], where q′ and q″ are the denominators of its neighbours in the Farey
//! sequence, so aq′ ≡ 1 and aq″ ≡ −1 (mod q). The fraction 1/1 is placed at 0; the arcs
//! then tile [−1/(Q+1), 1 − 1/(Q+1)]. Endpoints are exact rationals.

use crate::error::{invalid, Error, Result};
use crate::special::quad::{half_period_breakpoints, integrate, QuadConfig};
use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;

/// Largest order accepted by [`farey_dissect`].
pub const MAX_ORDER: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyArc {
    pub a: i64,
    pub q: i64,
    /// Neighbour denominators q′ (left) and q″ (right).
    pub q_left: i64,
    pub q_right: i64,
    /// The arc is a/q + [left, right].
    pub left: Ratio<i64>,
    pub right: Ratio<i64>,
}

impl FareyArc {
    /// The centre reduced to [0, 1): 1/1 maps to 0.
    pub fn centre(&self) -> Ratio<i64> {
        Ratio::new(self.a % self.q, self.q)
    }

    /// Absolute endpoints around [`Self::centre`].
    pub fn endpoints(&self) -> (Ratio<i64>, Ratio<i64>) {
        let c = self.centre();
        (c + self.left, c + self.right)
    }

    pub fn length(&self) -> Ratio<i64> {
        self.right - self.left
    }
}

/// The Farey fractions of order Q in (0, 1], with neighbour denominators.
pub fn farey_dissect(order: i64) -> Result<Vec<FareyArc>> {
    if !(1..=MAX_ORDER).contains(&order) {
        return invalid(format!("Farey order {order} outside [1, {MAX_ORDER}]"));
    }
    // Farey sequence from 0/1 to 1/1 by the next-term recurrence.
    let mut seq = vec![(0i64, 1i64)];
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, order);
    while c <= order {
        seq.push((c, d));
        let k = (order + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
        if seq.last() == Some(&(1, 1)) {
            break;
        }
    }
    let m = seq.len();
    let mut arcs = Vec::with_capacity(m - 1);
    for i in 1..m {
        let (a, q) = seq[i];
        let q_left = seq[i - 1].1;
        // The successor of 1/1 is 1 + 1/Q, whose denominator is that of seq[1].
        let q_right = if i + 1 < m { seq[i + 1].1 } else { seq[1].1 };
        arcs.push(FareyArc {
            a,
            q,
            q_left,
            q_right,
            left: -Ratio::new(1, q * (q + q_left)),
            right: Ratio::new(1, q * (q + q_right)),
        });
    }
    Ok(arcs)
}

/// Result of checking that arcs tile [−1/(Q+1), 1 − 1/(Q+1)].
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    /// Σ lengths − 1, exactly.
    pub measure_defect: Ratio<i128>,
    /// Adjacent pairs whose endpoints do not coincide.
    pub mismatches: usize,
    /// True when the outer endpoints are −1/(Q+1) and 1 − 1/(Q+1).
    pub endpoints_ok: bool,
}

impl PartitionReport {
    pub fn is_exact(&self) -> bool {
        self.measure_defect == Ratio::from_integer(0) && self.mismatches == 0 && self.endpoints_ok
    }
}

/// Checks the partition property in exact arithmetic.
pub fn check_partition(arcs: &[FareyArc], order: i64) -> PartitionReport {
    let mut sorted: Vec<(Ratio<i64>, Ratio<i64>)> = arcs.iter().map(|a| a.endpoints()).collect();
    sorted.sort();
    let mut total = Ratio::<i128>::from_integer(0);
    let mut mismatches = 0;
    for (i, &(l, r)) in sorted.iter().enumerate() {
        total += Ratio::new(*r.numer() as i128, *r.denom() as i128)
            - Ratio::new(*l.numer() as i128, *l.denom() as i128);
        if i + 1 < sorted.len() && sorted[i + 1].0 != r {
            mismatches += 1;
        }
    }
    let edge = Ratio::new(1, order + 1);
    let endpoints_ok = match (sorted.first(), sorted.last()) {
        (Some(f), Some(l)) => f.0 == -edge && l.1 == Ratio::from_integer(1) - edge,
        _ => false,
    };
    PartitionReport {
        measure_defect: total - Ratio::from_integer(1),
        mismatches,
        endpoints_ok,
    }
}

fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Σ over arcs of ∫_{𝓜(a,q)} f(a, q, β) dβ.
///
/// `rate` bounds the angular frequency of f in β and sets the initial panel width; the
/// arcs are integrated independently and summed in order.
pub fn major_arc_quadrature<F>(
    arcs: &[FareyArc],
    rate: f64,
    cfg: QuadConfig,
    f: F,
) -> Result<Complex64>
where
    F: Fn(i64, i64, f64) -> Complex64 + Sync,
{
    if !(rate >= 0.0 && rate.is_finite()) {
        return invalid("frequency bound must be finite and non-negative");
    }
    let parts: Vec<Result<Complex64>> = arcs
        .par_iter()
        .map(|arc| {
            let (l, r) = (to_f64(arc.left), to_f64(arc.right));
            let bp = half_period_breakpoints(l, r, |_| rate, 2);
            integrate(|b| f(arc.a, arc.q, b), &bp, cfg)
                .map(|res| res.value)
                .map_err(|e| match e {
                    Error::Quadrature(msg) => {
                        Error::Quadrature(format!("arc {}/{}: {msg}", arc.a, arc.q))
                    }
                    other => other,
                })
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for p in parts {
        total += p?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one() {
        let arcs = farey_dissect(1).unwrap();
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].endpoints(), (Ratio::new(-1, 2), Ratio::new(1, 2)));
    }

    #[test]
    fn order_two() {
        let arcs = farey_dissect(2).unwrap();
        assert_eq!(arcs.len(), 2);
        let total: Ratio<i64> = arcs.iter().map(|a| a.length()).sum();
        assert_eq!(total, Ratio::from_integer(1));
        assert!(check_partition(&arcs, 2).is_exact());
    }

    #[test]
    fn congruences_hold() {
        for arc in farey_dissect(30).unwrap() {
            if arc.q > 1 {
                assert_eq!((arc.a * arc.q_left).rem_euclid(arc.q), 1);
                assert_eq!((arc.a * arc.q_right).rem_euclid(arc.q), arc.q - 1);
            }
            assert!(arc.q + arc.q_left > 30 && arc.q + arc.q_right > 30);
        }
    }
}
