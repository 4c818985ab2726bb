//! An exact alternating identity between central binomial coefficients and
//! even-index Fibonacci numbers, with a modular cross-check.
//!
//!     cargo run --example e45_exact -- 49

use lucas_congruences::congruences::{e45_exact, e45_mod};
use lucas_congruences::modmath::is_prime;
use num_bigint::BigInt;

fn main() {
    let q: u64 = std::env::args()
        .nth(1)
        .map_or(49, |s| s.parse().expect("q"));
    let sides = e45_exact(q);
    println!("sum (-1)^k C(2k,k)             = {}", sides.lhs);
    println!("sum (-1)^k C(2q,k) F_(2(q-k)) = {}", sides.rhs);
    assert_eq!(sides.lhs, sides.rhs);

    let m = 4_611_686_018_427_387_847u64;
    assert!(is_prime(m) && m < 1 << 62);
    let (l, r) = e45_mod(q, m).unwrap();
    let reduced = ((&sides.lhs % BigInt::from(m)) + BigInt::from(m)) % BigInt::from(m);
    println!(
        "mod {m}: {} {} (exact reduces to {reduced})",
        l.value(),
        r.value()
    );
}
