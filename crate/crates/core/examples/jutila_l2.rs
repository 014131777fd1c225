//! Jutila's averaged-interval approximation to the unit indicator: exact L² errors.
//!
//! Run with `cargo run --release --example jutila_l2`.

use shiftconv::circle::{
    build_moduli_set, jutila_constant, jutila_indicator, jutila_l2_error, jutila_mass,
};

fn main() -> shiftconv::Result<()> {
    println!("Q,delta,L,moduli,l2_error,constant,mass");
    for q in [40.0, 80.0, 160.0, 320.0, 640.0, 1280.0] {
        let set = build_moduli_set(1, q, 1)?;
        for delta in [1.0 / q, f64::powf(q, -1.5)] {
            println!(
                "{q},{delta:.3e},{},{},{:.6e},{:.4e},{:.15}",
                set.l_sum,
                set.moduli.len(),
                jutila_l2_error(&set, delta)?,
                jutila_constant(&set, delta)?,
                jutila_mass(&set, delta)?
            );
        }
    }

    let set = build_moduli_set(1, 80.0, 1)?;
    let profile: Vec<String> = (0..20)
        .map(|i| jutila_indicator(&set, 1.0 / 80.0, i as f64 / 20.0).map(|v| format!("{v:.2}")))
        .collect::<shiftconv::Result<_>>()?;
    println!("indicator at k/20, Q = 80: {}", profile.join(" "));
    Ok(())
}
