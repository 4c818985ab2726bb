//! Evaluates the three main congruences over a range, then every registry
//! row over a small sweep.
//!
//!     cargo run --release --example verify_theorems -- 200

use lucas_congruences::congruences::{evaluate, evaluate_range, CongruenceId, RangeSpec, REGISTRY};

fn main() {
    let p_max: u64 = std::env::args()
        .nth(1)
        .map_or(200, |s| s.parse().expect("p_max"));

    let r = evaluate(CongruenceId::THM1, 5, 1, &[]).unwrap();
    println!("THM1 at p=5: lhs={} rhs={} mod {}", r.lhs, r.rhs, r.modulus);

    for id in [CongruenceId::THM1, CongruenceId::THM2, CongruenceId::THM3] {
        let out = evaluate_range(id, &RangeSpec::new(3, p_max, 2)).unwrap();
        println!(
            "{id}: {} tuples hold, {} fail, {} skipped",
            out.results.iter().filter(|r| r.holds).count(),
            out.failures().count(),
            out.skipped
        );
    }

    println!();
    for row in REGISTRY {
        let out = evaluate_range(row.id, &RangeSpec::new(3, 60, 3).q_max(10_000)).unwrap();
        let status = if out.all_hold() { "ok" } else { "FAILS" };
        println!(
            "{:<6} {:>5} tuples {:<5} {}",
            row.name,
            out.results.len(),
            status,
            row.statement
        );
    }
}
