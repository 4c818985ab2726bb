//! Fermat-style quotients (X - Y)/p reduced mod p, using fixed-precision
//! p-adic numbers.
//!
//!     cargo run --example padic_quotients -- 101

use lucas_congruences::lucas::{named_sequence_mod, Sequence};
use lucas_congruences::modmath::{powmod, Residue};
use lucas_congruences::padic::PadicRational;

fn quotient(r: Residue, p: u64) -> Residue {
    PadicRational::from_residue(r, p, 2)
        .and_then(|x| x.shift(-1).to_residue(1))
        .expect("divisible by p")
}

fn main() {
    let p: u64 = std::env::args()
        .nth(1)
        .map_or(101, |s| s.parse().expect("prime"));
    let m = p * p;

    let fermat = quotient(powmod(2, p - 1, m) - Residue::one(m), p);
    println!("(2^(p-1) - 1)/p = {} (mod {p})", fermat.value());

    let lucas = quotient(named_sequence_mod(Sequence::Luc, p, m) - Residue::one(m), p);
    println!("(L_p - 1)/p     = {} (mod {p})", lucas.value());

    // 1/3 at precision 4 and a sum that cancels to p-adic zero
    let third = PadicRational::from_fraction(1, 3, p, 4).unwrap();
    println!("1/3 = {third:?}");
    let x = PadicRational::from_integer(p as i128 * 7, p, 3).unwrap();
    match x.sub(&x) {
        Ok(v) => println!("x - x = {v:?}"),
        Err(e) => println!("x - x: {e}"),
    }
}
