//! Gauss, Kloosterman and Salié sums, and the twisted sums built from Gauss sums.
//!
//! Run with `cargo run --release --example exponential_sums`.

use shiftconv::arith::factor_squarefull_squarefree;
use shiftconv::expsums::{
    gauss_sum, gauss_sum_closed, kloosterman, salie, theta_char_sum, twisted_factorization,
    twisted_sum_bound, twisted_sum_c, twisted_sum_weil_bound,
};

fn main() -> shiftconv::Result<()> {
    println!("Gauss sums: direct vs closed form");
    for (a, b, q) in [(1, 0, 3), (2, 1, 7), (5, 1, 9), (11, 2, 49)] {
        let g = gauss_sum(a, b, q)?;
        let c = gauss_sum_closed(a, b, q)?;
        println!("  G({a},{b};{q}) = {g:.10}, closed form {c:.10}");
    }

    println!("Kloosterman and Salié sums with their bounds");
    for (m, n, p) in [(1, 1, 7), (2, 3, 11), (4, 7, 97)] {
        let s = kloosterman(m, n, p)?;
        let t = salie(m, n, p)?;
        println!(
            "  S = {:+.6} (bound {:.3}), T = {:.6} (bound {:.3})",
            s.value.re, s.bound, t.value, t.bound
        );
    }

    println!("Twisted sums: size against q1^2 q2^(3/2) (h,q2)^(1/2)");
    for (b1, b2, h, u, q) in [
        (1, 2, 3, 1, 60),
        (0, 1, 1, 5, 105),
        (3, 1, 2, 7, 231),
        (1, 1, 5, 2, 900),
    ] {
        let c = twisted_sum_c(b1, b2, h, u, q)?;
        let f = factor_squarefull_squarefree(q as u64)?;
        println!(
            "  q = {q} = {}·{}: |C| = {:.4}, bound {:.4}, bound with 2^omega {:.4}",
            f.q1,
            f.q2,
            c.norm(),
            twisted_sum_bound(h, q)?,
            twisted_sum_weil_bound(h, q)?
        );
        if f.q1 > 1 && f.q2 > 1 {
            let split = twisted_factorization(b1, b2, h, u, f.q1 as i64, f.q2 as i64)?;
            println!("    CRT splitting defect {:.2e}", split.relative_defect());
        }
    }

    println!("Theta-multiplier character sums for q = 4p");
    for (h, m, q, ell) in [(1, 1, 28, 2), (1, 3, 44, 3), (2, 5, 76, 4)] {
        let s = theta_char_sum(h, m, q, ell, 1, None)?;
        println!(
            "  q = {q}, ℓ = {ell}: direct {:.6}, factored {:.6}, |·| ≤ {:.3}",
            s.direct,
            s.factored(),
            s.bound
        );
    }
    Ok(())
}
