//! Both sides of the Voronoi formulas for sums of squares and for the discriminant form.
//!
//! Run with `cargo run --release --example voronoi_identity`.

use shiftconv::coeffs::ramanujan_tau;
use shiftconv::voronoi::{FormVoronoi, ReprVoronoi, SmoothWindow};
use std::time::Instant;

fn main() -> shiftconv::Result<()> {
    let window = SmoothWindow::theta_bump(1e3, 16.0)?;
    println!("ell,q,a,relerr,dual_terms,last_n");
    let start = Instant::now();
    for ell in [2, 3, 4] {
        let mut checker = ReprVoronoi::new(ell, window)?;
        for q in [1, 3, 5, 7] {
            for r in checker.check_all(q)? {
                println!(
                    "{ell},{q},{},{:.3e},{},{}",
                    r.a, r.relerr, r.dual_terms, r.last_n
                );
            }
        }
    }
    eprintln!("sums of squares: {:.1?}", start.elapsed());

    let start = Instant::now();
    let tau = ramanujan_tau(200_000)?;
    let window = SmoothWindow::theta_bump(2e3, 16.0)?;
    let mut checker = FormVoronoi::new(&tau, window)?;
    println!("form,q,a,relerr,dual_terms,last_n");
    for q in [1, 2, 4] {
        for r in checker.check_all(q)? {
            println!(
                "delta,{q},{},{:.3e},{},{}",
                r.a, r.relerr, r.dual_terms, r.last_n
            );
        }
    }
    eprintln!("discriminant form: {:.1?}", start.elapsed());
    Ok(())
}
