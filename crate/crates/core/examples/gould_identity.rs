//! sum_{k=0}^n x^k / C(n,k) against its closed form, in exact rationals.
//!
//!     cargo run --example gould_identity

use lucas_congruences::congruences::gould_identity_exact;
use num_rational::BigRational;

fn main() {
    let xs = ["1", "2", "-2", "3/7", "-5/3"];
    for x in xs {
        let x: BigRational = x.parse().unwrap();
        for n in [1u64, 2, 5, 12] {
            let g = gould_identity_exact(n, &x).unwrap();
            assert!(g.equal());
            println!("n={n:>2} x={x:>5}: {}", g.lhs);
        }
    }
    let zero = BigRational::from_integer(0.into());
    println!("x=0: {}", gould_identity_exact(3, &zero).unwrap_err());
}
