use std::process::{Command, Output};

use lucas_congruences::congruences::{evaluate_range, CongruenceId, RangeSpec};
use lucas_congruences::report::read_jsonl;

fn lucascheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucascheck"))
        .args(args)
        .env_remove("LUCASCHECK_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn thm2_lines_for_primes_seven_to_hundred() {
    let o = lucascheck(&["verify", "THM2", "--p-min", "7", "--p-max", "100"]);
    assert_eq!(o.status.code(), Some(0));
    // primes 7..=97
    assert_eq!(stdout(&o).lines().count(), 22);
}

#[test]
fn ineligible_tuple_is_skipped() {
    let o = lucascheck(&[
        "verify", "THM1", "--p-min", "3", "--p-max", "3", "--a-max", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("skipped: 1"));
}

#[test]
fn unknown_id_lists_the_registry() {
    let o = lucascheck(&["verify", "NOSUCH"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("THM1") && err.contains("UDIV"));
}

#[test]
fn failing_row_exits_one() {
    // the literal shifted-index divisibility fails at p^2
    let o = lucascheck(&[
        "verify", "UDIV", "--p-max", "7", "--a-max", "2", "--ab", "1:-1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("failures: "));
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(
        lucascheck(&["verify", "THM2", "--p-min", "50", "--p-max", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lucascheck(&["verify", "THM2", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lucascheck(&["scan", "--from", "10", "--to", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lucascheck(&["identity", "gould", "--x", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lucascheck(&["identity", "gould", "--x", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(lucascheck(&[]).status.code(), Some(2));
}

#[test]
fn jsonl_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p31.jsonl");
    let o = lucascheck(&[
        "verify",
        "P31B",
        "--p-max",
        "40",
        "--ab",
        "1:-1,3:2",
        "--jobs",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let file = std::io::BufReader::new(std::fs::File::open(&path).unwrap());
    let mut parsed = read_jsonl(file).unwrap();
    let spec = RangeSpec::new(3, 40, 1).abs(vec![(1, -1), (3, 2)]);
    let mut direct = evaluate_range(CongruenceId::P31B, &spec).unwrap().results;
    assert!(!direct.is_empty());
    for r in parsed.iter_mut().chain(direct.iter_mut()) {
        r.micros = 0;
    }
    assert_eq!(parsed, direct);
}

#[test]
fn csv_has_fixed_header() {
    let o = lucascheck(&["verify", "HARM", "--p-max", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines().next(),
        Some("id,p,a,extra,modulus,lhs,rhs,holds,micros")
    );
    assert_eq!(out.lines().count(), 1 + 4);
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_lucascheck"))
        .args(["verify", "THM2", "--p-max", "50"])
        .env("LUCASCHECK_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_lucascheck"))
        .args(["verify", "THM2", "--p-max", "50"])
        .env("LUCASCHECK_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_reports_no_hits() {
    let o = lucascheck(&["scan", "--from", "3", "--to", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    assert!(err.contains("hits: none"));
    assert!(err.contains("throughput:"));
}

#[test]
fn scan_emits_quotients() {
    let o = lucascheck(&["scan", "--from", "3", "--to", "11", "--emit-quotients"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3 1\n7 3\n11 5\n");
}

#[test]
fn scan_checkpoint_resume_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("scan.json");
    let cp_s = cp.to_str().unwrap();
    let o = lucascheck(&[
        "scan",
        "--from",
        "3",
        "--to",
        "3000000",
        "--checkpoint",
        cp_s,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let saved = std::fs::read_to_string(&cp).unwrap();
    assert_eq!(saved.lines().count(), 1);
    assert!(saved.contains("\"cursor\":3000001"));
    // completed checkpoint: resuming scans nothing new but reports the same total
    let again = lucascheck(&[
        "scan",
        "--from",
        "3",
        "--to",
        "3000000",
        "--checkpoint",
        cp_s,
    ]);
    assert_eq!(again.status.code(), Some(0));
    let line = |s: &str| {
        s.lines()
            .find(|l| l.starts_with("scanned:"))
            .unwrap()
            .to_string()
    };
    assert_eq!(line(&stderr(&o)), line(&stderr(&again)));

    let other = lucascheck(&["scan", "--from", "3", "--to", "1000", "--checkpoint", cp_s]);
    assert_eq!(other.status.code(), Some(2));

    std::fs::write(&cp, "not json").unwrap();
    let broken = lucascheck(&[
        "scan",
        "--from",
        "3",
        "--to",
        "3000000",
        "--checkpoint",
        cp_s,
    ]);
    assert_eq!(broken.status.code(), Some(2));
}

#[test]
fn gould_identity_subcommand() {
    let o = lucascheck(&["identity", "gould", "--n-max", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "n=1 x=1 lhs=2 rhs=2 equal=true");
    let o = lucascheck(&[
        "identity",
        "gould",
        "--n-max",
        "25",
        "--x",
        "1,2,3,-2,5,-3/7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 150);
}
