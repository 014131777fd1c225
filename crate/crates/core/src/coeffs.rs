//! Normalized Hecke eigenvalues.
//!
//! The native path expands the discriminant form Δ(z) = q·Π(1 − q^m)^24 exactly in
//! 128-bit integers and normalizes λ(n) = τ(n)/n^{11/2}. Arbitrary forms, including
//! Maass forms, enter through a plain-text coefficient file. Tables can be checked
//! against the Hecke relations and the divisor bound |λ(n)| ≤ d(n)·n^θ.

use crate::arith::{divisor_counts, gcd, primes_up_to};
use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use std::io::{BufRead, Write};
use std::path::Path;

/// Best known individual-coefficient exponent, used when none is given.
pub const DEFAULT_THETA: f64 = 7.0 / 64.0;

/// Tolerance used by the Hecke-relation checker.
pub const HECKE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Holomorphic,
    Maass,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormSpec {
    pub kind: FormKind,
    pub weight: u32,
    pub level: u64,
    /// Spectral parameter μ (Maass only; 0 for holomorphic forms).
    pub spectral_mu: f64,
    /// Assumed exponent θ in λ(n) ≪ n^{θ+ε}.
    pub theta: f64,
    /// The constant ω_f multiplying the Minus branch of the Voronoi formula, if known.
    pub omega: Option<Complex64>,
}

impl FormSpec {
    /// The weight-12 level-1 discriminant form.
    pub fn delta() -> Self {
        FormSpec {
            kind: FormKind::Holomorphic,
            weight: 12,
            level: 1,
            spectral_mu: 0.0,
            theta: DEFAULT_THETA,
            omega: None,
        }
    }

    pub fn maass(weight: u32, level: u64, mu: f64) -> Self {
        FormSpec {
            kind: FormKind::Maass,
            weight,
            level,
            spectral_mu: mu,
            theta: DEFAULT_THETA,
            omega: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.level == 0 {
            return invalid("level must be positive");
        }
        if !(0.0..=0.5).contains(&self.theta) {
            return invalid(format!("theta {} outside [0, 1/2]", self.theta));
        }
        match self.kind {
            FormKind::Holomorphic => {
                if self.spectral_mu != 0.0 {
                    return invalid("holomorphic forms have spectral parameter 0");
                }
                if self.weight < 1 {
                    return invalid("holomorphic weight must be at least 1");
                }
            }
            FormKind::Maass => {
                if !self.spectral_mu.is_finite() {
                    return invalid("spectral parameter must be finite");
                }
                if self.weight > 1 {
                    return invalid("Maass forms here have weight 0 or 1");
                }
            }
        }
        Ok(())
    }
}

/// λ_f(n) for n = 1..=N_max together with the form it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub spec: FormSpec,
    lambda: Vec<f64>,
}

impl CoefficientTable {
    pub fn new(spec: FormSpec, lambda: Vec<f64>) -> Result<Self> {
        spec.validate()?;
        if lambda.is_empty() {
            return invalid("coefficient table must be non-empty");
        }
        Ok(CoefficientTable { spec, lambda })
    }

    pub fn n_max(&self) -> u64 {
        self.lambda.len() as u64
    }

    /// λ(n) for 1 ≤ n ≤ N_max.
    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[(n - 1) as usize]
    }

    /// λ(n), or an error if the table does not reach n.
    pub fn try_lambda(&self, n: u64) -> Result<f64> {
        if n == 0 || n > self.n_max() {
            return Err(Error::TableTooShort {
                needed: n,
                available: self.n_max(),
            });
        }
        Ok(self.lambda(n))
    }

    pub fn values(&self) -> &[f64] {
        &self.lambda
    }

    pub fn require(&self, n: u64) -> Result<()> {
        if n > self.n_max() {
            return Err(Error::TableTooShort {
                needed: n,
                available: self.n_max(),
            });
        }
        Ok(())
    }
}

/// Largest index accepted by [`ramanujan_tau_integers`].
pub const TAU_MAX_INDEX: usize = 2_000_000;

/// τ(n) for n = 0..=n_max (entry 0 is 0) from Δ = q·J(q)^8 with
/// J(q) = Π(1 − q^m)^3 = Σ_{k≥0} (−1)^k (2k+1) q^{k(k+1)/2}.
///
/// Arithmetic wraps modulo 2¹²⁸. That is exact for the final coefficients because
/// |τ(n)| ≤ d(n)n^{11/2} < 2¹²⁶ for n ≤ [`TAU_MAX_INDEX`].
pub fn ramanujan_tau_integers(n_max: usize) -> Result<Vec<i128>> {
    if !(1..=TAU_MAX_INDEX).contains(&n_max) {
        return invalid(format!("n_max {n_max} outside [1, {TAU_MAX_INDEX}]"));
    }
    let len = n_max; // coefficients of J^8 at exponents 0..n_max-1
    let jac: Vec<(usize, i128)> = (0usize..)
        .map(|k| {
            (
                k * (k + 1) / 2,
                if k % 2 == 0 {
                    2 * k as i128 + 1
                } else {
                    -(2 * k as i128 + 1)
                },
            )
        })
        .take_while(|&(t, _)| t < len)
        .collect();
    let mut cur = vec![0i128; len];
    for &(t, c) in &jac {
        cur[t] = c;
    }
    let mut next = vec![0i128; len];
    for _ in 1..8 {
        next.iter_mut().for_each(|v| *v = 0);
        for &(t, c) in &jac {
            let (dst, src) = (&mut next[t..], &cur[..len - t]);
            for (d, s) in dst.iter_mut().zip(src) {
                *d = d.wrapping_add(s.wrapping_mul(c));
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let mut tau = vec![0i128; n_max + 1];
    tau[1..].copy_from_slice(&cur);
    Ok(tau)
}

/// Normalized coefficients λ(n) = τ(n)/n^{11/2} of the discriminant form.
pub fn ramanujan_tau(n_max: usize) -> Result<CoefficientTable> {
    let tau = ramanujan_tau_integers(n_max)?;
    let lambda = (1..=n_max)
        .map(|n| tau[n] as f64 / (n as f64).powf(5.5))
        .collect();
    CoefficientTable::new(FormSpec::delta(), lambda)
}

/// One failed relation found by [`check_hecke_relations`].
#[derive(Debug, Clone, PartialEq)]
pub enum HeckeViolation {
    /// λ(1) ≠ 1.
    Normalization,
    /// λ(p)λ(p^k) ≠ λ(p^{k+1}) + λ(p^{k−1}) (or λ(p)λ(p^k) ≠ λ(p^{k+1}) for p | D).
    PrimePower { p: u64, k: u32, residual: f64 },
    /// λ(mn) ≠ λ(m)λ(n) for coprime m, n ≥ 2.
    Multiplicative { m: u64, n: u64, residual: f64 },
}

impl HeckeViolation {
    /// Indices of coefficients entering the violated relation.
    pub fn indices(&self) -> Vec<u64> {
        match *self {
            HeckeViolation::Normalization => vec![1],
            HeckeViolation::PrimePower { p, k, .. } => {
                let pk = p.pow(k);
                vec![p, pk, pk * p, pk / p]
            }
            HeckeViolation::Multiplicative { m, n, .. } => vec![m, n, m * n],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct HeckeReport {
    pub violations: Vec<HeckeViolation>,
    pub relations_checked: usize,
}

impl HeckeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every Hecke relation that can be formed inside the table, with absolute tolerance 10⁻⁹.
pub fn check_hecke_relations(table: &CoefficientTable) -> HeckeReport {
    let n_max = table.n_max();
    let lam = |n: u64| table.lambda(n);
    let level = table.spec.level;
    let mut report = HeckeReport::default();
    report.relations_checked += 1;
    if (lam(1) - 1.0).abs() > HECKE_TOLERANCE {
        report.violations.push(HeckeViolation::Normalization);
    }
    for p in primes_up_to(n_max as usize) {
        let mut k = 1u32;
        let mut pk = p;
        while let Some(pk1) = pk.checked_mul(p).filter(|&v| v <= n_max) {
            let rhs = if level.is_multiple_of(p) {
                lam(pk1)
            } else {
                lam(pk1) + lam(pk / p)
            };
            let residual = lam(p) * lam(pk) - rhs;
            report.relations_checked += 1;
            if residual.abs() > HECKE_TOLERANCE {
                report
                    .violations
                    .push(HeckeViolation::PrimePower { p, k, residual });
            }
            k += 1;
            pk = pk1;
        }
    }
    for m in 2..=n_max {
        if m * m > n_max {
            break;
        }
        for n in (m + 1)..=(n_max / m) {
            if gcd(m as i64, n as i64) != 1 {
                continue;
            }
            let residual = lam(m * n) - lam(m) * lam(n);
            report.relations_checked += 1;
            if residual.abs() > HECKE_TOLERANCE {
                report
                    .violations
                    .push(HeckeViolation::Multiplicative { m, n, residual });
            }
        }
    }
    report
}

/// Indices n with |λ(n)| > d(n)·n^θ (θ = 0 for holomorphic forms, the form's θ otherwise).
pub fn check_divisor_bound(table: &CoefficientTable) -> Vec<u64> {
    let theta = match table.spec.kind {
        FormKind::Holomorphic => 0.0,
        FormKind::Maass => table.spec.theta,
    };
    let d = divisor_counts(table.n_max() as usize);
    (1..=table.n_max())
        .filter(|&n| {
            let bound = d[n as usize] as f64 * (n as f64).powf(theta);
            table.lambda(n).abs() > bound * (1.0 + 1e-12) + 1e-12
        })
        .collect()
}

/// Non-fatal validation attached to loaded tables.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub hecke: HeckeReport,
    pub bound_violations: Vec<u64>,
}

pub fn validate_table(table: &CoefficientTable) -> ValidationReport {
    ValidationReport {
        hecke: check_hecke_relations(table),
        bound_violations: check_divisor_bound(table),
    }
}

/// Reads a coefficient file.
///
/// Lines starting with `#` are comments; `# key = value` (or `# key: value`) lines with keys
/// `kind`, `weight`, `level`, `mu`, `theta`, `omega` override fields of `spec`.
/// Every other non-blank line is `n λ(n)` with n = 1, 2, 3, ... in order.
pub fn load_coefficients(
    path: impl AsRef<Path>,
    spec: FormSpec,
) -> Result<(CoefficientTable, ValidationReport)> {
    let file = std::fs::File::open(path.as_ref())?;
    read_coefficients(std::io::BufReader::new(file), spec)
}

pub fn read_coefficients(
    reader: impl BufRead,
    mut spec: FormSpec,
) -> Result<(CoefficientTable, ValidationReport)> {
    let mut lambda = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(meta) = trimmed.strip_prefix('#') {
            apply_metadata(&mut spec, meta, line_no)?;
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let mut fields = trimmed.split_whitespace();
        let (Some(n_str), Some(v_str), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected `n value`, got `{trimmed}`")));
        };
        let n: u64 = n_str
            .parse()
            .map_err(|_| parse_err(format!("bad index `{n_str}`")))?;
        let v: f64 = v_str
            .parse()
            .map_err(|_| parse_err(format!("bad value `{v_str}`")))?;
        if !v.is_finite() {
            return Err(parse_err(format!("non-finite value `{v_str}`")));
        }
        let expected = lambda.len() as u64 + 1;
        if n != expected {
            if n > expected {
                return Err(Error::Gap { expected, found: n });
            }
            return Err(parse_err(format!(
                "index {n} out of order, expected {expected}"
            )));
        }
        lambda.push(v);
    }
    if lambda.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no coefficient records".into(),
        });
    }
    let table = CoefficientTable::new(spec, lambda)?;
    let report = validate_table(&table);
    Ok((table, report))
}

fn apply_metadata(spec: &mut FormSpec, meta: &str, line: usize) -> Result<()> {
    let Some((key, value)) = meta.split_once(['=', ':']) else {
        return Ok(());
    };
    let (key, value) = (key.trim(), value.trim());
    let bad = |what: &str| Error::Parse {
        line,
        message: format!("bad {what} `{value}`"),
    };
    match key {
        "kind" => {
            spec.kind = match value.to_ascii_lowercase().as_str() {
                "holomorphic" => FormKind::Holomorphic,
                "maass" => FormKind::Maass,
                _ => return Err(bad("kind")),
            }
        }
        "weight" => spec.weight = value.parse().map_err(|_| bad("weight"))?,
        "level" => spec.level = value.parse().map_err(|_| bad("level"))?,
        "mu" => spec.spectral_mu = value.parse().map_err(|_| bad("mu"))?,
        "theta" => spec.theta = value.parse().map_err(|_| bad("theta"))?,
        "omega" => {
            let parts: Vec<&str> = value.split_whitespace().collect();
            let re: f64 = parts
                .first()
                .ok_or_else(|| bad("omega"))?
                .parse()
                .map_err(|_| bad("omega"))?;
            let im: f64 = match parts.get(1) {
                Some(s) => s.parse().map_err(|_| bad("omega"))?,
                None => 0.0,
            };
            spec.omega = Some(Complex64::new(re, im));
        }
        _ => {}
    }
    Ok(())
}

/// Writes a table in the format read by [`load_coefficients`]; values round-trip exactly.
pub fn write_coefficients(table: &CoefficientTable, mut out: impl Write) -> Result<()> {
    let s = &table.spec;
    let kind = match s.kind {
        FormKind::Holomorphic => "holomorphic",
        FormKind::Maass => "maass",
    };
    writeln!(out, "# kind = {kind}")?;
    writeln!(out, "# weight = {}", s.weight)?;
    writeln!(out, "# level = {}", s.level)?;
    writeln!(out, "# mu = {:?}", s.spectral_mu)?;
    writeln!(out, "# theta = {:?}", s.theta)?;
    if let Some(w) = s.omega {
        writeln!(out, "# omega = {:?} {:?}", w.re, w.im)?;
    }
    for (i, v) in table.lambda.iter().enumerate() {
        writeln!(out, "{} {:?}", i + 1, v)?;
    }
    Ok(())
}
