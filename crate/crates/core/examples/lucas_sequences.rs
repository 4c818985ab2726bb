//! Lucas sequences by fast doubling, checked against the plain recurrence.
//!
//!     cargo run --example lucas_sequences -- 1000 1000000007

use lucas_congruences::lucas::{lucas_by_recurrence, lucas_pair_mod, named_sequence_mod, Sequence};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(1000, |s| s.parse().expect("n"));
    let m: u64 = args
        .next()
        .map_or(1_000_000_007, |s| s.parse().expect("modulus"));

    for seq in Sequence::ALL {
        let params = seq.params();
        let pair = lucas_pair_mod(&params, n, m);
        let (u, v) = lucas_by_recurrence(&params, n, m);
        assert_eq!((pair.u, pair.v), (u, v));
        assert!(pair.is_consistent(&params));
        println!(
            "{:<9} (A,B)=({},{})  term {n} = {} (mod {m})",
            seq.name(),
            params.a(),
            params.b(),
            named_sequence_mod(seq, n, m).value()
        );
    }

    let f: Vec<u64> = (0..15)
        .map(|k| named_sequence_mod(Sequence::Fib, k, m).value())
        .collect();
    println!("F_0..F_14 = {f:?}");
}
