//! Sharp and smoothed shifted convolution sums Σ λ(n+h) r_ℓ(n).
//!
//! Run with `cargo run --release --example shifted_sums`.

use shiftconv::coeffs::ramanujan_tau;
use shiftconv::shifted::ShiftedSums;

fn main() -> shiftconv::Result<()> {
    let tau = ramanujan_tau(100_200)?;
    println!("ell,h,X,direct,smoothed,dyadic,gap,edge_bound,trivial_bound");
    for ell in [2, 3, 4] {
        let sums = ShiftedSums::new(ell, 100_000, &tau)?;
        for h in [1, 5, 101] {
            for x in [1e3, 1e4, 1e5] {
                let s = sums.smoothed(h, x, 16.0)?;
                println!(
                    "{ell},{h},{x},{:.6e},{:.6e},{:.6e},{:.3e},{:.3e},{:.3e}",
                    sums.direct(h, x)?,
                    s.smoothed,
                    s.dyadic,
                    s.gap,
                    s.edge_bound,
                    sums.trivial_bound(h, x)?
                );
            }
        }
    }
    Ok(())
}
