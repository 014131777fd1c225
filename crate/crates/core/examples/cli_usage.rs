//! Drives the command-line interface in-process, as a script would.
//!
//! Run with `cargo run --release --example cli_usage`. The same commands work with the
//! `shiftconv` binary.

use shiftconv::cli::run;

fn main() {
    let commands: &[&[&str]] = &[
        &["rl", "--ell", "2", "--n-max", "10"],
        &[
            "expsum", "--kind", "salie", "--q", "13", "--m", "2", "--n", "5",
        ],
        &["voronoi-check", "--ell", "2", "--q", "5", "--X", "1000"],
        &["jutila-check", "--Q", "40,80,160"],
        &["shifted-sum", "--ell", "3", "--h", "5", "--X", "1e4"],
        &["farey", "--Q", "0"],
    ];
    for args in commands {
        println!("$ shiftconv {}", args.join(" "));
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("shiftconv").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        print!("{}", String::from_utf8_lossy(&out));
        eprint!("{}", String::from_utf8_lossy(&err));
        println!("(exit {code})\n");
    }
}
