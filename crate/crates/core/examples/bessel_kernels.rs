//! Bessel functions of real and imaginary order and the Voronoi kernels built from them.
//!
//! Run with `cargo run --release --example bessel_kernels`.

use shiftconv::coeffs::FormSpec;
use shiftconv::special::{
    bessel_j, bessel_k_imag, bessel_y, bessel_y_imag, kernel_h, kernel_h_asymptotic, Branch,
    KernelSpec,
};

fn main() -> shiftconv::Result<()> {
    println!("x,J_0,J_11,Y_0,K_i,Re Y_2i");
    for x in [1.0, 2.5, 5.0, 20.0, 50.0] {
        println!(
            "{x},{:.12},{:.12},{:.12},{:.6e},{:.6e}",
            bessel_j(0.0, x)?,
            bessel_j(11.0, x)?,
            bessel_y(0.0, x)?,
            bessel_k_imag(1.0, x)?,
            bessel_y_imag(2.0, x)?.re
        );
    }

    println!();
    println!("Discriminant form kernel against its large-x expansion");
    let spec = KernelSpec::new(FormSpec::delta(), Branch::Plus);
    for x in [100.0, 1000.0, 10_000.0] {
        let exact = kernel_h(&spec, x)?;
        let approx = kernel_h_asymptotic(12, x);
        println!("  x = {x}: {:.8}, expansion {:.8}", exact.re, approx.re);
    }

    let maass = FormSpec::maass(0, 1, 9.533_695_261_353_557);
    for branch in [Branch::Plus, Branch::Minus] {
        let k = kernel_h(&KernelSpec::new(maass, branch), 30.0)?;
        println!("Maass kernel {branch:?} at x = 30: {k:.6e}");
    }
    Ok(())
}
