//! The Farey dissection of order Q with exact rational arc endpoints.
//!
//! Run with `cargo run --release --example farey_arcs`.

use shiftconv::circle::{check_partition, farey_dissect, major_arc_quadrature};
use shiftconv::expsums::e;
use shiftconv::special::quad::QuadConfig;

fn main() -> shiftconv::Result<()> {
    let arcs = farey_dissect(7)?;
    println!("a/q,left,right,length");
    for arc in &arcs {
        let (l, r) = arc.endpoints();
        println!("{}/{},{l},{r},{}", arc.a, arc.q, arc.length());
    }
    println!("partition: {:?}", check_partition(&arcs, 7));

    for order in [50, 200, 1000] {
        let arcs = farey_dissect(order)?;
        println!(
            "Q = {order}: {} arcs, exact = {}",
            arcs.len(),
            check_partition(&arcs, order).is_exact()
        );
    }

    // ∫₀¹ e(3α) dα = 0, assembled arc by arc.
    let total = major_arc_quadrature(
        &farey_dissect(40)?,
        6.0 * std::f64::consts::PI,
        QuadConfig::new(1e-12, 1e-15),
        |a, q, b| e(3.0 * (a as f64 / q as f64 + b)),
    )?;
    println!("sum over arcs of the integral of e(3α): {total:.3e}");
    Ok(())
}
