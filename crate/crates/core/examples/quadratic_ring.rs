//! Arithmetic in Z[w]/(w^2 - Aw + B) modulo m, where the roots of
//! x^2 - Ax + B are alpha = w and beta = A - w.
//!
//!     cargo run --example quadratic_ring

use lucas_congruences::lucas::{lucas_pair_mod, LucasParams};
use lucas_congruences::modmath::{jacobi, Residue};
use lucas_congruences::quadring::QuadRing;

fn main() {
    let params = LucasParams::FIBONACCI;
    let m = 1_000_003;
    let ring = QuadRing::new(params, m);
    let (alpha, beta) = ring.roots();

    println!("alpha + beta = {}", alpha + beta);
    println!("alpha * beta = {}", alpha * beta);

    // alpha^n = u_n alpha - B u_{n-1}
    for n in [10u64, 100, 12345] {
        let u = lucas_pair_mod(&params, n, m).u;
        let u_prev = lucas_pair_mod(&params, n - 1, m).u;
        let expected = alpha.scale(u) - ring.scalar(Residue::new(params.b() as i128, m) * u_prev);
        assert_eq!(alpha.qpow(n), expected);
        println!(
            "alpha^{n} = {}   trace = v_{n} = {}",
            alpha.qpow(n),
            alpha.qpow(n).trace()
        );
    }

    // Frobenius: alpha^p is alpha or beta according to (5/p)
    for p in [7u64, 11, 13, 29, 31] {
        let (a, b) = QuadRing::new(params, p).roots();
        let image = if a.qpow(p) == a {
            "alpha"
        } else if a.qpow(p) == b {
            "beta"
        } else {
            "?"
        };
        println!(
            "p = {p:>2}: (5/p) = {:>2}, alpha^p = {image}",
            jacobi(5, p).unwrap()
        );
    }
}
