//! Rebuilds the smoothed ℓ = 2 shifted sum from ∫ ℱ(α)²𝒢(α) dα over the Farey arcs.
//!
//! Run with `cargo run --release --example circle_reconstruction`.

use shiftconv::coeffs::ramanujan_tau;
use shiftconv::shifted::circle_reconstruction;
use std::time::Instant;

fn main() -> shiftconv::Result<()> {
    let tau = ramanujan_tau(5000)?;
    println!("X,h,Delta,order,arcs,direct,reconstructed,relerr,seconds");
    for (x, h, delta) in [
        (100.0, 1, 8.0),
        (100.0, 7, 8.0),
        (400.0, 1, 16.0),
        (400.0, 7, 16.0),
        (1600.0, 3, 16.0),
    ] {
        let start = Instant::now();
        let r = circle_reconstruction(h, x, delta, &tau)?;
        println!(
            "{x},{h},{delta},{},{},{:.10e},{:.10e},{:.2e},{:.2}",
            r.order,
            r.arcs,
            r.direct,
            r.reconstructed.re,
            r.relerr,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
