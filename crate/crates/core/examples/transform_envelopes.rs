//! Decay envelopes of the Voronoi transforms and their fitted constants at two scales.
//!
//! Run with `cargo run --release --example transform_envelopes`.

use shiftconv::coeffs::FormSpec;
use shiftconv::special::{Branch, KernelSpec};
use shiftconv::voronoi::{
    v_envelope_fits, w_beta_envelope_fit, w_beta_split, w_envelope_fits, SmoothWindow,
};

fn main() -> shiftconv::Result<()> {
    let spec = KernelSpec::new(FormSpec::delta(), Branch::Plus);
    for big_y in [1e3, 1e4] {
        let v = v_envelope_fits(&spec, big_y, 16.0, 30)?;
        println!(
            "Y = {big_y:e}: V constants j=0,1,2: {:.4} {:.4} {:.4}",
            v[0].constant, v[1].constant, v[2].constant
        );
        for ell in [2, 3, 4] {
            let w = w_envelope_fits(ell, big_y, 16.0, 30)?;
            let b = w_beta_envelope_fit(ell, big_y, 16.0, 1.0, 30)?;
            println!(
                "  ℓ = {ell}: W constants j=0,1: {:.4} {:.4}; W_beta (βX = 1): {:.4}",
                w[0].constant, w[1].constant, b.constant
            );
        }
    }

    println!("Integration-by-parts split of W_beta");
    let window = SmoothWindow::theta_bump(500.0, 8.0)?;
    for (ell, beta, y) in [(2, 1e-3, 0.01), (3, -2e-3, 0.2), (4, 5e-4, 1.0)] {
        let s = w_beta_split(&window, beta, ell, y)?;
        println!(
            "  ℓ = {ell}: E1 {:.4e} + E2 {:.4e} vs {:.4e}, defect {:.1e}",
            s.e1,
            s.e2,
            s.direct,
            s.relative_defect()
        );
    }
    Ok(())
}
