//! Writes results as JSONL and CSV, then reads the JSONL back.
//!
//!     cargo run --example jsonl_report

use lucas_congruences::congruences::{evaluate_range, CongruenceId, RangeSpec};
use lucas_congruences::report::{read_jsonl, write_csv, write_jsonl};

fn main() {
    let spec = RangeSpec::new(7, 40, 1).abs(vec![(1, -1), (3, 2)]);
    let results = evaluate_range(CongruenceId::P31B, &spec).unwrap().results;

    let mut jsonl = Vec::new();
    write_jsonl(&mut jsonl, &results).unwrap();
    print!("{}", String::from_utf8_lossy(&jsonl));

    let back = read_jsonl(&jsonl[..]).unwrap();
    assert_eq!(back, results);
    println!("round trip: {} records", back.len());

    write_csv(std::io::stdout().lock(), &results[..3]).unwrap();
}
