//! Representation counts r_ℓ(n) for a few ℓ, with the two-squares divisor formula alongside.
//!
//! Run with `cargo run --release --example repr_counts`.

use shiftconv::arith::{chi4, factor_squarefull_squarefree, jacobi_symbol, repr_count};

fn main() -> shiftconv::Result<()> {
    let n_max = 30;
    let tables = (2..=5)
        .map(|ell| repr_count(ell, n_max))
        .collect::<shiftconv::Result<Vec<_>>>()?;
    println!("n,r_2,r_3,r_4,r_5,4*sum_chi4");
    for n in 0..=n_max {
        let divisor_sum: i64 = (1..=n as i64)
            .filter(|d| n as i64 % d == 0)
            .map(|d| chi4(d) as i64)
            .sum();
        let counts: Vec<String> = tables.iter().map(|t| t.get(n).to_string()).collect();
        println!("{n},{},{}", counts.join(","), 4 * divisor_sum);
    }

    println!();
    println!("q,q1,q2,(3/q)");
    for q in [15u64, 45, 72, 99, 1001] {
        let f = factor_squarefull_squarefree(q)?;
        let sym = if q % 2 == 1 {
            jacobi_symbol(3, q as i64)?.to_string()
        } else {
            "-".into()
        };
        println!("{q},{},{},{sym}", f.q1, f.q2);
    }
    Ok(())
}
