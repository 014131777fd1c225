//! Exact integer arithmetic.
//!
//! Representation counts r_ℓ(n), Jacobi symbols, the theta-multiplier unit ε_d,
//! modular inverses and the squarefull/squarefree splitting of a modulus.
//! All arithmetic is 64-bit with checked overflow; moduli are capped at 2³¹.

use crate::error::{invalid, Error, Result};
use num_complex::Complex64;

/// Largest modulus accepted by the modular routines.
pub const MAX_MODULUS: i64 = 1 << 31;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Least non-negative residue of `a` modulo `q`.
pub fn modp(a: i64, q: i64) -> i64 {
    a.rem_euclid(q)
}

/// The unique d in [1, q] with a·d ≡ 1 (mod q).
pub fn mod_inverse(a: i64, q: i64) -> Result<i64> {
    if !(1..=MAX_MODULUS).contains(&q) {
        return invalid(format!("modulus {q} out of range [1, 2^31]"));
    }
    if q == 1 {
        return Ok(1);
    }
    let (mut r0, mut r1) = (q, modp(a, q));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { a, q });
    }
    let d = modp(t0, q);
    Ok(if d == 0 { q } else { d })
}

/// Modular exponentiation with 128-bit intermediates.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Jacobi symbol (a/n) for odd positive n, by binary reciprocity.
pub fn jacobi_symbol(a: i64, n: i64) -> Result<i8> {
    if n < 1 || n % 2 == 0 {
        return invalid(format!("Jacobi symbol needs odd positive n, got {n}"));
    }
    let mut a = modp(a, n) as u64;
    let mut n = n as u64;
    let mut t = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// The non-principal character modulo 4.
pub fn chi4(n: i64) -> i8 {
    match modp(n, 4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// ε_d = 1 if d ≡ 1 (mod 4) and i if d ≡ −1 (mod 4); d is reduced mod 4 first.
pub fn epsilon_unit(d: i64) -> Result<Complex64> {
    match modp(d, 4) {
        1 => Ok(Complex64::new(1.0, 0.0)),
        3 => Ok(Complex64::new(0.0, 1.0)),
        _ => invalid(format!("ε_d needs odd d, got {d}")),
    }
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `n` (sieve of Eratosthenes).
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// d(n) for n = 0..=n_max (entry 0 is 0).
pub fn divisor_counts(n_max: usize) -> Vec<u32> {
    let mut d = vec![0u32; n_max + 1];
    for k in 1..=n_max {
        let mut m = k;
        while m <= n_max {
            d[m] += 1;
            m += k;
        }
    }
    d
}

/// Representation counts r_ℓ(n) for n = 0..=n_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReprTable {
    pub ell: u32,
    pub values: Vec<u64>,
}

impl ReprTable {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> u64 {
        self.values[n]
    }
}

/// r_ℓ(n) for 0 ≤ n ≤ n_max by ℓ-fold convolution with the theta coefficients
/// (1 at 0, 2 at each positive square).
pub fn repr_count(ell: u32, n_max: usize) -> Result<ReprTable> {
    if ell == 0 {
        return invalid("repr_count needs ell >= 1");
    }
    let squares: Vec<usize> = (1..)
        .map(|k: usize| k * k)
        .take_while(|&s| s <= n_max)
        .collect();
    let mut cur = vec![0u64; n_max + 1];
    cur[0] = 1;
    for _ in 0..ell {
        let mut next = cur.clone();
        for &s in &squares {
            for n in s..=n_max {
                let add = cur[n - s]
                    .checked_mul(2)
                    .ok_or(Error::Overflow("repr_count"))?;
                next[n] = next[n]
                    .checked_add(add)
                    .ok_or(Error::Overflow("repr_count"))?;
            }
        }
        cur = next;
    }
    Ok(ReprTable { ell, values: cur })
}

/// The split q = q1·q2 with 4·q1 squarefull and q2 odd, squarefree, coprime to 2·q1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModulusFactorization {
    pub q: u64,
    pub q1: u64,
    pub q2: u64,
}

pub fn factor_squarefull_squarefree(q: u64) -> Result<ModulusFactorization> {
    if q == 0 {
        return invalid("modulus must be positive");
    }
    let mut q1 = 1u64;
    let mut q2 = 1u64;
    for (p, e) in factorize(q) {
        let pe = p.pow(e);
        if p == 2 || e >= 2 {
            q1 *= pe;
        } else {
            q2 *= pe;
        }
    }
    Ok(ModulusFactorization { q, q1, q2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_representation_counts() {
        assert_eq!(repr_count(2, 1).unwrap().get(1), 4);
        assert_eq!(repr_count(3, 2).unwrap().get(2), 12);
        assert_eq!(repr_count(2, 25).unwrap().get(25), 12);
        assert_eq!(repr_count(4, 0).unwrap().get(0), 1);
        assert!(repr_count(0, 5).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(1, 3).unwrap(), 1);
        assert_eq!(jacobi_symbol(3, 7).unwrap(), -1);
        assert_eq!(jacobi_symbol(2, 7).unwrap(), 1);
        assert_eq!(jacobi_symbol(6, 9).unwrap(), 0);
        assert!(jacobi_symbol(3, 8).is_err());
        assert!(jacobi_symbol(3, -7).is_err());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_unit(5).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(epsilon_unit(3).unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(epsilon_unit(-1).unwrap(), Complex64::new(0.0, 1.0));
        assert!(epsilon_unit(4).is_err());
    }

    #[test]
    fn factorization_examples() {
        let f = |q| {
            let m = factor_squarefull_squarefree(q).unwrap();
            (m.q1, m.q2)
        };
        assert_eq!(f(1), (1, 1));
        assert_eq!(f(12), (4, 3));
        assert_eq!(f(45), (9, 5));
        assert_eq!(f(2), (2, 1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap(), 1);
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(-3, 7).unwrap(), 2);
        assert_eq!(mod_inverse(5, 1).unwrap(), 1);
        assert_eq!(mod_inverse(2, 4), Err(Error::NotInvertible { a: 2, q: 4 }));
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let ps = primes_up_to(10_000);
        let from_test: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, from_test);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }

    #[test]
    fn multiplicative_helpers() {
        assert_eq!(divisor_count(12), 6);
        assert_eq!(euler_phi(44), 20);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(divisor_counts(12)[12], 6);
    }
}
