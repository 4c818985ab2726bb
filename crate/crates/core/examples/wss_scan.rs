//! Wall-Sun-Sun search with a resumable checkpoint.
//!
//!     cargo run --release --example wss_scan -- 10000000

use lucas_congruences::wss::{fib_quotient, scan_range, ScanOptions};

fn main() {
    let hi: u64 = std::env::args()
        .nth(1)
        .map_or(10_000_000, |s| s.parse().expect("hi"));
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());

    for p in [3, 7, 11, 13] {
        println!(
            "F_(p-(p/5))/p mod p at p={p}: {}",
            fib_quotient(p).unwrap().value()
        );
    }

    let dir = std::env::temp_dir().join(format!("wss-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let checkpoint = dir.join("scan.json");
    let opts = ScanOptions::new(workers).checkpoint(&checkpoint);

    // stop after two blocks, then resume from the file
    let first = scan_range(3, hi, &opts.clone().max_blocks(2)).unwrap();
    println!(
        "first leg: {} primes, cursor at {}",
        first.scanned, first.cursor
    );
    println!(
        "checkpoint: {}",
        std::fs::read_to_string(&checkpoint).unwrap().trim()
    );
    let done = scan_range(3, hi, &opts).unwrap();
    println!(
        "[3, {hi}]: {} primes, hits {:?}, {:.0} primes/s on {workers} threads",
        done.scanned,
        done.hit_primes(),
        done.throughput()
    );
    std::fs::remove_dir_all(&dir).ok();
}
