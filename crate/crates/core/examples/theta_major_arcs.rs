//! The theta sum ℱ on major arcs against 2G(a,0;q)Φ₀(β)/q.
//!
//! Run with `cargo run --release --example theta_major_arcs`.

use shiftconv::circle::farey_dissect;
use shiftconv::special::theta_major_arc;

fn main() -> shiftconv::Result<()> {
    let x: f64 = 1e4;
    let order = (5.0 * x.sqrt()) as i64;
    println!("a,q,beta,|F|,|approx|,residual,10*sqrt(q)*log(q+2)");
    for arc in farey_dissect(order)?.iter().filter(|a| a.q <= 12) {
        let right = *arc.right.numer() as f64 / *arc.right.denom() as f64;
        for beta in [0.0, 0.5 * right, right] {
            let m = theta_major_arc(arc.a % arc.q, arc.q, beta, x)?;
            let q = arc.q as f64;
            println!(
                "{},{},{beta:.3e},{:.4},{:.4},{:.4},{:.2}",
                arc.a,
                arc.q,
                m.actual.norm(),
                m.approx.norm(),
                m.residual,
                10.0 * q.sqrt() * (q + 2.0).ln()
            );
        }
    }
    Ok(())
}
