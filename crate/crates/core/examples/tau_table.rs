//! Builds the τ table, checks it, writes it in the coefficient-file format and reads it back.
//!
//! Run with `cargo run --release --example tau_table`.

use shiftconv::coeffs::{
    check_divisor_bound, check_hecke_relations, ramanujan_tau, ramanujan_tau_integers,
    read_coefficients, write_coefficients, FormSpec,
};

fn main() -> shiftconv::Result<()> {
    let tau = ramanujan_tau_integers(12)?;
    for (n, t) in tau.iter().enumerate().skip(1) {
        println!("tau({n}) = {t}");
    }

    let table = ramanujan_tau(20_000)?;
    let hecke = check_hecke_relations(&table);
    println!(
        "n_max = {}: {} Hecke relations checked, {} violations, {} divisor-bound violations",
        table.n_max(),
        hecke.relations_checked,
        hecke.violations.len(),
        check_divisor_bound(&table).len()
    );

    // Corrupt λ(6) and watch the checker point at it.
    let mut values = table.values()[..2000].to_vec();
    values[5] *= 1.001;
    let bad = shiftconv::coeffs::CoefficientTable::new(table.spec, values)?;
    let report = check_hecke_relations(&bad);
    println!(
        "corrupted λ(6): {} violations, first {:?}",
        report.violations.len(),
        report.violations.first()
    );

    let mut buf = Vec::new();
    write_coefficients(&ramanujan_tau(50)?, &mut buf)?;
    let (back, _) = read_coefficients(buf.as_slice(), FormSpec::delta())?;
    println!("round trip of 50 entries: λ(2) = {:.12}", back.lambda(2));
    Ok(())
}
