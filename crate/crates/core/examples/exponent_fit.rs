//! Fits growth exponents of the dyadic RMS of S_h(X) and compares them with the bound.
//!
//! Run with `cargo run --release --example exponent_fit`. Set `EXPONENT_FIT_MAX=1e6` for the
//! full range (needs a τ table to 10⁶, about a quarter of a minute).

use shiftconv::coeffs::ramanujan_tau;
use shiftconv::shifted::{exponent_fit, ExperimentGrid};

fn main() -> shiftconv::Result<()> {
    let x_max: f64 = std::env::var("EXPONENT_FIT_MAX")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1e5);
    let x_values: Vec<f64> = [1e-2, 3e-2, 1e-1, 3e-1, 1.0]
        .iter()
        .map(|f| f * x_max)
        .collect();
    let h_values = vec![1, 5, 101];
    let tau = ramanujan_tau(x_max as usize + 101)?;
    println!("ell,h,slope,intercept,residual,theorem_exponent,constant");
    for ell in [2, 3, 4] {
        let grid = ExperimentGrid {
            ell,
            x_values: x_values.clone(),
            h_values: h_values.clone(),
            delta: 16.0,
            table: &tau,
        };
        let (_, fits) = exponent_fit(&grid)?;
        for f in fits {
            println!(
                "{ell},{},{:.4},{:.4},{:.4},{:.6},{:.4}",
                f.h, f.slope, f.intercept, f.residual, f.theorem_exponent, f.constant
            );
        }
    }
    Ok(())
}
