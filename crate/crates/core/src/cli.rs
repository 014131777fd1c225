//! Command-line surface.
//!
//! Every subcommand writes RFC-4180 CSV, preceded by `#` metadata lines that echo the
//! configuration, to standard output or `--out`. Failures print a single CSV line
//! `error,<kind>,<exit code>,<message>` on standard error; bad input exits with 2 and
//! failed computations or checks exit with 1.

use crate::arith::repr_count;
use crate::circle::{
    build_moduli_set, check_partition, farey_dissect, jutila_constant, jutila_l2_error, jutila_mass,
};
use crate::coeffs::{
    check_divisor_bound, check_hecke_relations, load_coefficients, ramanujan_tau,
    ramanujan_tau_integers, CoefficientTable, FormSpec, TAU_MAX_INDEX,
};
use crate::error::{Error, Result};
use crate::expsums::{
    gauss_sum, gauss_sum_closed, kloosterman, salie, twisted_sum_bound, twisted_sum_c,
    twisted_sum_c_direct, twisted_sum_weil_bound,
};
use crate::shifted::{
    circle_reconstruction, exponent_fit, theorem_exponent, two_squares_exponent, ExperimentGrid,
    ShiftedSums,
};
use crate::special::theta_major_arc;
use crate::voronoi::{coprime_residues, FormVoronoi, ReprVoronoi, SmoothWindow, VoronoiCheck};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

/// Largest table length accepted by `rl`.
pub const MAX_RL_INDEX: usize = 10_000_000;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "shiftconv",
    version,
    about = "Shifted convolution sums: tables, identity checks and experiments"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Write CSV to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Pass threshold for checking subcommands (each has its own default).
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tolerance: Option<f64>,
}

fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpSumKind {
    Gauss,
    Kloosterman,
    Salie,
    Twisted,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// r_ℓ(n), the number of representations as a sum of ℓ squares, for 0 ≤ n ≤ N.
    Rl {
        #[arg(long)]
        ell: u32,
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Ramanujan τ(n) and λ(n) = τ(n)/n^{11/2} for 1 ≤ n ≤ N.
    Tau {
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Hecke relations and the divisor bound for a coefficient table.
    CoeffsCheck {
        /// Coefficient file; τ is used when absent.
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Length of the τ table when no file is given.
        #[arg(long = "n-max", default_value_t = 100_000)]
        n_max: usize,
    },
    /// Gauss, Kloosterman, Salié or twisted sums.
    Expsum {
        #[arg(long, value_enum)]
        kind: ExpSumKind,
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 1)]
        n: i64,
        /// Linear coefficient b of G(a, b; q).
        #[arg(long, default_value_t = 0)]
        b: i64,
        #[arg(long, default_value_t = 1)]
        b1: i64,
        #[arg(long, default_value_t = 1)]
        b2: i64,
        #[arg(long, default_value_t = 1)]
        h: i64,
        #[arg(long, default_value_t = 0)]
        u: i64,
    },
    /// Both sides of the Voronoi identity for r_ℓ (with --ell) or a cusp form.
    VoronoiCheck {
        #[arg(long)]
        ell: Option<u32>,
        /// Coefficient file for the form side; τ is used when absent.
        #[arg(long)]
        coeffs: Option<PathBuf>,
        #[arg(long)]
        q: i64,
        /// A single residue; all residues coprime to q when absent.
        #[arg(long)]
        a: Option<i64>,
        #[arg(long = "X", value_parser = parse_real, default_value = "1000")]
        x: f64,
        #[arg(long = "Delta", value_parser = parse_real, default_value = "16")]
        delta: f64,
    },
    /// Exact L² error of Jutila's approximation for a list of Q.
    JutilaCheck {
        /// Level D.
        #[arg(long = "D", default_value_t = 1)]
        level: u64,
        #[arg(long = "Q", value_parser = parse_real, value_delimiter = ',', required = true)]
        q_values: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        h: u64,
        /// δ = Q^(−p) with 1 ≤ p ≤ 2.
        #[arg(long = "delta-power", value_parser = parse_real, default_value = "1")]
        delta_power: f64,
    },
    /// The arcs of the Farey dissection of order Q.
    Farey {
        #[arg(long = "Q")]
        order: i64,
    },
    /// The theta sum against its major-arc approximation on arcs with small q.
    ThetaArc {
        #[arg(long = "X", value_parser = parse_real, default_value = "10000")]
        x: f64,
        #[arg(long = "q-max", default_value_t = 50)]
        q_max: i64,
        /// Sample points per arc.
        #[arg(long, default_value_t = 3)]
        points: usize,
    },
    /// Sharp and smoothed shifted sums at one point.
    ShiftedSum {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        h: u64,
        #[arg(long = "X", value_parser = parse_real)]
        x: f64,
        #[arg(long = "Delta", value_parser = parse_real, default_value = "16")]
        delta: f64,
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
    /// The ℓ = 2 smoothed sum rebuilt by integrating over Farey arcs.
    CircleRecon {
        #[arg(long = "X", value_parser = parse_real)]
        x: f64,
        #[arg(long, default_value_t = 1)]
        h: u64,
        #[arg(long = "Delta", value_parser = parse_real, default_value = "16")]
        delta: f64,
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
    /// Growth exponents of S_h(X) over a grid of X and h.
    ExponentFit {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<u64>,
        #[arg(long = "X", value_parser = parse_real, value_delimiter = ',', required = true)]
        x: Vec<f64>,
        #[arg(long = "Delta", value_parser = parse_real, default_value = "16")]
        delta: f64,
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
}

/// A finished table: metadata lines, a header and rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub metadata: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    fn meta(&mut self, line: impl Into<String>) {
        self.metadata.push(line.into());
    }

    fn row(&mut self, fields: Vec<String>) {
        self.rows.push(fields);
    }

    /// The CSV text.
    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        for m in &self.metadata {
            out.push_str("# ");
            out.push_str(m);
            out.push_str("\r\n");
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?);
        Ok(out)
    }
}

/// Shortest round-trip formatting, switching to exponent form for very large or small values.
pub fn fmt_f(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn s<T: ToString>(v: T) -> String {
    v.to_string()
}

fn load_table(path: &Option<PathBuf>, needed: u64) -> Result<CoefficientTable> {
    let table = match path {
        Some(p) => load_coefficients(p, FormSpec::delta())?.0,
        None => ramanujan_tau(needed.max(1) as usize)?,
    };
    table.require(needed)?;
    Ok(table)
}

fn source_label(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!("coefficients = {}", p.display()),
        None => "coefficients = Ramanujan tau (weight 12, level 1)".to_string(),
    }
}

fn validate(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.into()))
    }
}

fn fail_if(failures: usize, what: &str, tol: f64) -> Result<()> {
    if failures > 0 {
        return Err(Error::CheckFailed(format!(
            "{failures} {what} beyond tolerance {tol:e}"
        )));
    }
    Ok(())
}

fn tolerance(global: &GlobalOpts, default: f64) -> Result<f64> {
    let t = global.tolerance.unwrap_or(default);
    validate(
        t > 0.0 && t.is_finite(),
        format!("tolerance {t} must be positive"),
    )?;
    Ok(t)
}

fn voronoi_row(t: &mut Table, object: &str, c: &VoronoiCheck, tol: f64) -> bool {
    let pass = c.relerr <= tol;
    t.row(vec![
        s(object),
        s(c.q),
        s(c.a),
        fmt_f(c.lhs.re),
        fmt_f(c.lhs.im),
        fmt_f(c.rhs.re),
        fmt_f(c.rhs.im),
        fmt_f(c.relerr),
        s(c.dual_terms),
        s(c.last_n),
        s(pass),
    ]);
    pass
}

/// Runs one subcommand. The returned table is complete; a check failure is reported as an
/// error after the table so callers may still emit it.
pub fn execute(cli: &Cli) -> (Option<Table>, Result<()>) {
    match build(cli) {
        Ok((t, status)) => (Some(t), status),
        Err(e) => (None, Err(e)),
    }
}

fn build(cli: &Cli) -> Result<(Table, Result<()>)> {
    let g = &cli.global;
    if let Some(n) = g.threads {
        validate(n >= 1, "--threads must be at least 1")?;
    }
    let mut status = Ok(());
    let table = match &cli.command {
        Command::Rl { ell, n_max } => {
            validate((1..=64).contains(ell), "ell must lie in [1, 64]")?;
            validate(
                *n_max <= MAX_RL_INDEX,
                format!("n-max exceeds {MAX_RL_INDEX}"),
            )?;
            let r = repr_count(*ell, *n_max)?;
            let mut t = Table::new(&["n", "r_ell"]);
            t.meta(format!("subcommand = rl; ell = {ell}; n_max = {n_max}"));
            t.meta(
                "columns: n [integer]; r_ell [count of representations as ell squares, r(0) = 1]",
            );
            for (n, v) in r.values.iter().enumerate() {
                t.row(vec![s(n), s(v)]);
            }
            t
        }
        Command::Tau { n_max } => {
            validate(*n_max >= 1, "n-max must be at least 1")?;
            let tau = ramanujan_tau_integers(*n_max)?;
            let mut t = Table::new(&["n", "tau", "lambda"]);
            t.meta(format!("subcommand = tau; n_max = {n_max}"));
            t.meta("columns: n [integer]; tau [exact integer]; lambda [tau(n)/n^(11/2)]");
            for (n, v) in tau.iter().enumerate().skip(1) {
                t.row(vec![s(n), s(v), fmt_f(*v as f64 / (n as f64).powf(5.5))]);
            }
            t
        }
        Command::CoeffsCheck { coeffs, n_max } => {
            validate(coeffs.is_some() || *n_max >= 1, "n-max must be at least 1")?;
            let table = match coeffs {
                Some(p) => load_coefficients(p, FormSpec::delta())?.0,
                None => ramanujan_tau(*n_max)?,
            };
            let hecke = check_hecke_relations(&table);
            let bound = check_divisor_bound(&table);
            let mut t = Table::new(&[
                "check",
                "relations_checked",
                "violations",
                "first_violation",
            ]);
            t.meta(format!(
                "subcommand = coeffs-check; {}; n_max = {}",
                source_label(coeffs),
                table.n_max()
            ));
            t.meta("columns: check [name]; relations_checked [count]; violations [count]; first_violation [indices]");
            let first_h = hecke
                .violations
                .first()
                .map(|v| {
                    v.indices()
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            t.row(vec![
                s("hecke"),
                s(hecke.relations_checked),
                s(hecke.violations.len()),
                first_h,
            ]);
            t.row(vec![
                s("divisor_bound"),
                s(table.n_max()),
                s(bound.len()),
                bound.first().map(|n| n.to_string()).unwrap_or_default(),
            ]);
            let bad = hecke.violations.len() + bound.len();
            if bad > 0 {
                status = Err(Error::CheckFailed(format!(
                    "{bad} coefficient checks violated"
                )));
            }
            t
        }
        Command::Expsum {
            kind,
            q,
            m,
            n,
            b,
            b1,
            b2,
            h,
            u,
        } => {
            validate(*q >= 1, "q must be positive")?;
            match kind {
                ExpSumKind::Gauss => {
                    let tol = tolerance(g, 1e-8)?;
                    let mut t = Table::new(&[
                        "a",
                        "b",
                        "q",
                        "direct_re",
                        "direct_im",
                        "closed_re",
                        "closed_im",
                        "abs_err",
                    ]);
                    t.meta(format!(
                        "subcommand = expsum; kind = gauss; q = {q}; b = {b}; tolerance = {tol:e}"
                    ));
                    t.meta("columns: G(a,b;q) by direct summation and by the closed form; abs_err [absolute]");
                    let mut bad = 0;
                    for a in coprime_residues(*q) {
                        let d = gauss_sum(a, *b, *q)?;
                        let c = gauss_sum_closed(a, *b, *q)?;
                        let err = (d - c).norm();
                        bad += usize::from(err > tol);
                        t.row(vec![
                            s(a),
                            s(b),
                            s(q),
                            fmt_f(d.re),
                            fmt_f(d.im),
                            fmt_f(c.re),
                            fmt_f(c.im),
                            fmt_f(err),
                        ]);
                    }
                    status = fail_if(bad, "Gauss sums", tol);
                    t
                }
                ExpSumKind::Kloosterman | ExpSumKind::Salie => {
                    let (name, v) = if *kind == ExpSumKind::Kloosterman {
                        ("kloosterman", kloosterman(*m, *n, *q)?)
                    } else {
                        ("salie", salie(*m, *n, *q)?)
                    };
                    let mut t = Table::new(&["m", "n", "q", "re", "im", "abs", "bound"]);
                    t.meta(format!(
                        "subcommand = expsum; kind = {name}; m = {m}; n = {n}; q = {q}"
                    ));
                    t.meta("columns: the complete sum; abs [modulus]; bound [Weil-type bound]");
                    t.row(vec![
                        s(m),
                        s(n),
                        s(q),
                        fmt_f(v.value.re),
                        fmt_f(v.value.im),
                        fmt_f(v.value.norm()),
                        fmt_f(v.bound),
                    ]);
                    t
                }
                ExpSumKind::Twisted => {
                    let v = twisted_sum_c(*b1, *b2, *h, *u, *q)?;
                    let d = twisted_sum_c_direct(*b1, *b2, *h, *u, *q)?;
                    let mut t = Table::new(&[
                        "b1",
                        "b2",
                        "h",
                        "u",
                        "q",
                        "re",
                        "im",
                        "direct_re",
                        "direct_im",
                        "abs",
                        "bound",
                        "weil_bound",
                    ]);
                    t.meta(format!("subcommand = expsum; kind = twisted; b1 = {b1}; b2 = {b2}; h = {h}; u = {u}; q = {q}"));
                    t.meta("columns: C(b1,b2,h,u;q) via Gauss tables and directly; bound [q1^2 q2^(3/2) (h,q2)^(1/2)]; weil_bound [with constant 2^omega]");
                    t.row(vec![
                        s(b1),
                        s(b2),
                        s(h),
                        s(u),
                        s(q),
                        fmt_f(v.re),
                        fmt_f(v.im),
                        fmt_f(d.re),
                        fmt_f(d.im),
                        fmt_f(v.norm()),
                        fmt_f(twisted_sum_bound(*h, *q)?),
                        fmt_f(twisted_sum_weil_bound(*h, *q)?),
                    ]);
                    t
                }
            }
        }
        Command::VoronoiCheck {
            ell,
            coeffs,
            q,
            a,
            x,
            delta,
        } => {
            let tol = tolerance(g, 1e-5)?;
            validate(*q >= 1, "q must be positive")?;
            let window = SmoothWindow::theta_bump(*x, *delta)?;
            let residues = match a {
                Some(a) => vec![*a],
                None => coprime_residues(*q),
            };
            let mut t = Table::new(&[
                "object",
                "q",
                "a",
                "lhs_re",
                "lhs_im",
                "rhs_re",
                "rhs_im",
                "relerr",
                "dual_terms",
                "last_n",
                "pass",
            ]);
            let mut bad = 0;
            match ell {
                Some(ell) => {
                    t.meta(format!("subcommand = voronoi-check; ell = {ell}; q = {q}; X = {x}; Delta = {delta}; tolerance = {tol:e}"));
                    t.meta("columns: lhs [direct sum of r(n)e(an/q)w(n)]; rhs [main term plus dual sum]; relerr [relative]; dual_terms [count]; last_n [largest dual index]");
                    let mut v = ReprVoronoi::new(*ell, window)?;
                    for a in residues {
                        let c = v.check(a, *q)?;
                        bad += usize::from(!voronoi_row(&mut t, &format!("r_{ell}"), &c, tol));
                    }
                }
                None => {
                    t.meta(format!("subcommand = voronoi-check; {}; q = {q}; X = {x}; Delta = {delta}; tolerance = {tol:e}", source_label(coeffs)));
                    t.meta("columns: lhs [direct sum of lambda(n)e(an/q)w(n)]; rhs [dual sum]; relerr [relative]; dual_terms [count]; last_n [largest dual index]");
                    // The dual side reaches far beyond X; a computed τ table grows on demand.
                    let mut len = (x.floor() as u64 + 1).max(50_000);
                    let checks = loop {
                        let table = load_table(coeffs, len)?;
                        let mut v = FormVoronoi::new(&table, window)?;
                        match residues
                            .iter()
                            .map(|&a| v.check(a, *q))
                            .collect::<Result<Vec<_>>>()
                        {
                            Err(Error::TableTooShort { .. })
                                if coeffs.is_none() && len < TAU_MAX_INDEX as u64 =>
                            {
                                len = (4 * len).min(TAU_MAX_INDEX as u64);
                            }
                            other => break other?,
                        }
                    };
                    for c in &checks {
                        bad += usize::from(!voronoi_row(&mut t, "form", c, tol));
                    }
                }
            }
            status = fail_if(bad, "identity checks", tol);
            t
        }
        Command::JutilaCheck {
            level,
            q_values,
            h,
            delta_power,
        } => {
            validate(
                (1.0..=2.0).contains(delta_power),
                "delta-power must lie in [1, 2]",
            )?;
            let mut t = Table::new(&["Q", "delta", "L", "l2_error", "fitted_constant", "mass"]);
            t.meta(format!(
                "subcommand = jutila-check; D = {level}; h = {h}; delta = Q^-{delta_power}"
            ));
            t.meta("columns: Q [cutoff]; delta [half-width]; L [sum of phi(q)]; l2_error [exact integral of |1 - I|^2]; fitted_constant [l2_error delta L^2 / Q^2]; mass [integral of I]");
            for &qc in q_values {
                let set = build_moduli_set(*level, qc, *h)?;
                let delta = qc.powf(-delta_power);
                let err = jutila_l2_error(&set, delta)?;
                t.row(vec![
                    fmt_f(qc),
                    fmt_f(delta),
                    s(set.l_sum),
                    fmt_f(err),
                    fmt_f(jutila_constant(&set, delta)?),
                    fmt_f(jutila_mass(&set, delta)?),
                ]);
            }
            t
        }
        Command::Farey { order } => {
            let arcs = farey_dissect(*order)?;
            let report = check_partition(&arcs, *order);
            let mut t = Table::new(&["a", "q", "q_left", "q_right", "left", "right"]);
            t.meta(format!(
                "subcommand = farey; Q = {order}; arcs = {}",
                arcs.len()
            ));
            t.meta(format!(
                "measure_defect = {}; mismatches = {}; endpoints_ok = {}",
                report.measure_defect, report.mismatches, report.endpoints_ok
            ));
            t.meta("columns: a/q [centre, 1/1 placed at 0]; q_left q_right [neighbour denominators]; left right [exact offsets from a/q]");
            for arc in &arcs {
                t.row(vec![
                    s(arc.a),
                    s(arc.q),
                    s(arc.q_left),
                    s(arc.q_right),
                    s(arc.left),
                    s(arc.right),
                ]);
            }
            if !report.is_exact() {
                status = Err(Error::CheckFailed(
                    "arcs do not partition the circle".into(),
                ));
            }
            t
        }
        Command::ThetaArc { x, q_max, points } => {
            validate(*x >= 1.0 && *x <= 1e8, "X must lie in [1, 1e8]")?;
            validate(*q_max >= 1, "q-max must be positive")?;
            validate((1..=100).contains(points), "points must lie in [1, 100]")?;
            let order = (5.0 * x.sqrt()).floor() as i64;
            let arcs = farey_dissect(order)?;
            let mut t = Table::new(&[
                "a",
                "q",
                "beta",
                "actual_re",
                "actual_im",
                "approx_re",
                "approx_im",
                "residual",
                "bound",
                "pass",
            ]);
            t.meta(format!(
                "subcommand = theta-arc; X = {x}; Q = {order}; q_max = {q_max}; points = {points}"
            ));
            t.meta("columns: actual [theta sum F(a/q + beta)]; approx [2 G(a,0;q) Phi0(beta) / q]; residual [absolute]; bound [10 sqrt(q) log(q + 2)]");
            let mut bad = 0;
            for arc in arcs.iter().filter(|a| a.q <= *q_max) {
                let (l, r) = (
                    *arc.left.numer() as f64 / *arc.left.denom() as f64,
                    *arc.right.numer() as f64 / *arc.right.denom() as f64,
                );
                for k in 0..*points {
                    let beta = if *points == 1 {
                        0.0
                    } else {
                        l + (r - l) * k as f64 / (*points - 1) as f64
                    };
                    let m = theta_major_arc(arc.a, arc.q, beta, *x)?;
                    let qf = arc.q as f64;
                    let bound = 10.0 * qf.sqrt() * (qf + 2.0).ln();
                    let pass = m.residual <= bound;
                    bad += usize::from(!pass);
                    t.row(vec![
                        s(arc.a),
                        s(arc.q),
                        fmt_f(beta),
                        fmt_f(m.actual.re),
                        fmt_f(m.actual.im),
                        fmt_f(m.approx.re),
                        fmt_f(m.approx.im),
                        fmt_f(m.residual),
                        fmt_f(bound),
                        s(pass),
                    ]);
                }
            }
            if bad > 0 {
                status = Err(Error::CheckFailed(format!(
                    "{bad} sample points exceed the residual bound"
                )));
            }
            t
        }
        Command::ShiftedSum {
            ell,
            h,
            x,
            delta,
            coeffs,
        } => {
            validate(*x >= 1.0 && *x <= 1e7, "X must lie in [1, 1e7]")?;
            let table = load_table(coeffs, x.floor() as u64 + h)?;
            let sums = ShiftedSums::new(*ell, x.floor() as usize, &table)?;
            let direct = sums.direct(*h, *x)?;
            let sm = sums.smoothed(*h, *x, *delta)?;
            let mut t = Table::new(&[
                "ell",
                "h",
                "X",
                "Delta",
                "S_direct",
                "S_smoothed",
                "gap",
                "fitted_slope",
                "theorem_exponent",
                "edge_bound",
                "trivial_bound",
            ]);
            t.meta(format!(
                "subcommand = shifted-sum; {}; ell = {ell}; h = {h}; X = {x}; Delta = {delta}",
                source_label(coeffs)
            ));
            t.meta("columns: S_direct [sum over 1 <= n <= X]; S_smoothed [weighted by phi(n/X)]; gap [sum over X/2 < n <= X minus S_smoothed]; theorem_exponent [l/2 - (l-1-2 theta)/12]; edge_bound [edge-band count times max term]; trivial_bound [sum of |terms|]");
            t.row(vec![
                s(ell),
                s(h),
                fmt_f(*x),
                fmt_f(*delta),
                fmt_f(direct),
                fmt_f(sm.smoothed),
                fmt_f(sm.gap),
                String::new(),
                fmt_f(theorem_exponent(*ell, table.spec.theta)),
                fmt_f(sm.edge_bound),
                fmt_f(sums.trivial_bound(*h, *x)?),
            ]);
            t
        }
        Command::CircleRecon {
            x,
            h,
            delta,
            coeffs,
        } => {
            let tol = tolerance(g, 1e-4)?;
            let table = load_table(coeffs, x.floor() as u64 + h)?;
            let r = circle_reconstruction(*h, *x, *delta, &table)?;
            let mut t = Table::new(&[
                "X",
                "h",
                "Delta",
                "Q",
                "arcs",
                "direct",
                "reconstructed_re",
                "reconstructed_im",
                "relerr",
                "pass",
            ]);
            t.meta(format!("subcommand = circle-recon; {}; X = {x}; h = {h}; Delta = {delta}; tolerance = {tol:e}", source_label(coeffs)));
            t.meta("columns: direct [smoothed sum, ell = 2]; reconstructed [sum over Farey arcs of the integral of F^2 G]; relerr [relative]");
            let pass = r.relerr <= tol;
            t.row(vec![
                fmt_f(*x),
                s(h),
                fmt_f(*delta),
                s(r.order),
                s(r.arcs),
                fmt_f(r.direct),
                fmt_f(r.reconstructed.re),
                fmt_f(r.reconstructed.im),
                fmt_f(r.relerr),
                s(pass),
            ]);
            status = fail_if(usize::from(!pass), "reconstructions", tol);
            t
        }
        Command::ExponentFit {
            ell,
            h,
            x,
            delta,
            coeffs,
        } => {
            validate(x.iter().all(|v| *v <= 1e7), "X values must not exceed 1e7")?;
            let x_max = x.iter().cloned().fold(0.0, f64::max);
            let h_max = h.iter().cloned().max().unwrap_or(0);
            let table = load_table(coeffs, x_max.floor() as u64 + h_max)?;
            let grid = ExperimentGrid {
                ell: *ell,
                x_values: x.clone(),
                h_values: h.clone(),
                delta: *delta,
                table: &table,
            };
            let (points, fits) = exponent_fit(&grid)?;
            let mut t = Table::new(&[
                "ell",
                "h",
                "X",
                "Delta",
                "S_direct",
                "S_smoothed",
                "gap",
                "fitted_slope",
                "theorem_exponent",
                "dyadic_rms",
            ]);
            let theta = table.spec.theta;
            t.meta(format!(
                "subcommand = exponent-fit; {}; ell = {ell}; theta = {theta}; Delta = {delta}",
                source_label(coeffs)
            ));
            t.meta("columns: S_direct [sum over 1 <= n <= X]; S_smoothed [weighted by phi(n/X)]; gap [dyadic sharp minus smoothed]; fitted_slope [least squares of log dyadic_rms on log X, per h]; theorem_exponent [l/2 - (l-1-2 theta)/12]; dyadic_rms [RMS of S_h(x) over X/2 < x <= X]");
            if *ell == 2 {
                t.meta(format!(
                    "two_squares_exponent = {}",
                    two_squares_exponent(theta)
                ));
            }
            for f in &fits {
                t.meta(format!(
                    "fit h = {}: slope = {}; intercept = {}; residual = {}; constant = {}",
                    f.h, f.slope, f.intercept, f.residual, f.constant
                ));
            }
            for p in &points {
                let f = fits.iter().find(|f| f.h == p.h).expect("fit for every h");
                t.row(vec![
                    s(ell),
                    s(p.h),
                    fmt_f(p.x),
                    fmt_f(*delta),
                    fmt_f(p.direct),
                    fmt_f(p.smoothed),
                    fmt_f(p.gap),
                    fmt_f(f.slope),
                    fmt_f(f.theorem_exponent),
                    fmt_f(p.dyadic_rms),
                ]);
            }
            t
        }
    };
    Ok((table, status))
}

/// The machine-readable error line and its exit code.
pub fn error_line(e: &Error) -> (String, i32) {
    let code = if e.is_validation() { 2 } else { 1 };
    (
        csv_line(&["error", e.kind(), &code.to_string(), &e.to_string()]),
        code,
    )
}

fn csv_line(fields: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    // Writing to memory cannot fail.
    let _ = w.write_record(fields);
    String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
}

/// Parses arguments, runs the subcommand and writes its output; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("usage error")
                .trim_start_matches("error: ");
            let _ = stderr.write_all(csv_line(&["error", "usage", "2", first]).as_bytes());
            return 2;
        }
    };
    if let Some(n) = cli.global.threads {
        if n >= 1 {
            // A second initialization in the same process keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let (table, status) = execute(&cli);
    if let Some(t) = table {
        let text = match t.render() {
            Ok(text) => text,
            Err(e) => return report(&e, stderr),
        };
        let written = match &cli.global.out {
            Some(p) => std::fs::write(p, text.as_bytes()).map_err(Error::from),
            None => stdout.write_all(text.as_bytes()).map_err(Error::from),
        };
        if let Err(e) = written {
            return report(&e, stderr);
        }
    }
    match status {
        Ok(()) => 0,
        Err(e) => report(&e, stderr),
    }
}

fn report(e: &Error, stderr: &mut dyn Write) -> i32 {
    let (line, code) = error_line(e);
    let _ = stderr.write_all(line.as_bytes());
    code
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
