//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lucas_congruences::congruences::{
    e45_exact, e45_mod, evaluate, evaluate_range, evaluate_range_with, gould_identity_exact,
    CongruenceId, Mutation, RangeSpec, Value,
};
use lucas_congruences::lucas::{lucas_by_recurrence, lucas_pair_mod, LucasParams};
use lucas_congruences::modmath::{is_prime, primes_in, Residue};
use lucas_congruences::padic::PadicRational;
use lucas_congruences::quadring::QuadRing;
use lucas_congruences::wss::{scan_prime, scan_range, ScanOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

// Time budgets. Exceeding one is reported but does not fail the criterion.
const THM2_BUDGET: Duration = Duration::from_secs(10);
const THM1_BUDGET: Duration = Duration::from_secs(60);

// Ranges.
const THM2_P_MAX: u64 = 10_000;
const THM1_P_MAX: u64 = 2_000;
const THM1_Q_MAX: u64 = 200_000;
const THM3_P_MAX: u64 = 2_000;
const THM3_Q_MAX: u64 = 100_000;
const SWEEP_P_MAX: u64 = 500;
const SWEEP_A_MAX: u32 = 3;
const SWEEP_Q_MAX: u64 = 100_000;
const E45_QS: [u64; 4] = [9, 25, 27, 49];
const GOULD_N_MAX: u64 = 25;
const GOULD_XS: [i64; 5] = [1, 2, 3, -2, 5];
const WSS_HI: u64 = 1_000_000;
const ORACLE_N_MAX: u64 = 2048;
const ORACLE_PARAM_SETS: usize = 100;
const PADIC_CASES: usize = 1_000;
const NU1_P_MAX: u64 = 200;

const SWEEP_IDS: [CongruenceId; 22] = [
    CongruenceId::S1SUM,
    CongruenceId::E23,
    CongruenceId::E24,
    CongruenceId::L21,
    CongruenceId::L22,
    CongruenceId::CB1,
    CongruenceId::CB2,
    CongruenceId::NU1,
    CongruenceId::L31,
    CongruenceId::P31A,
    CongruenceId::P31B,
    CongruenceId::E34,
    CongruenceId::E35,
    CongruenceId::E38,
    CongruenceId::L41,
    CongruenceId::HARM,
    CongruenceId::P41,
    CongruenceId::L42,
    CongruenceId::E44,
    CongruenceId::VP,
    CongruenceId::UP,
    CongruenceId::UDIV,
];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

struct Xorshift(u64);

impl Xorshift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool")
        .install(f)
}

fn criterion_1() -> Verdict {
    let spot = evaluate(CongruenceId::THM2, 7, 1, &[]).map_err(|e| e.to_string())?;
    check(spot.lhs == Value::int(0), || {
        format!("p=7 lhs {}", spot.lhs)
    })?;
    let start = Instant::now();
    let spec = RangeSpec::new(7, THM2_P_MAX, 1);
    let out =
        single_threaded(|| evaluate_range(CongruenceId::THM2, &spec)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected = primes_in(7, THM2_P_MAX).count();
    check(out.results.len() == expected, || {
        format!(
            "{} primes evaluated, expected {expected}",
            out.results.len()
        )
    })?;
    let bad = out
        .results
        .iter()
        .find(|r| !r.holds || r.lhs != Value::int(0));
    check(bad.is_none(), || format!("fails at p={}", bad.unwrap().p))?;
    Ok(format!(
        "{} primes in {:.2?} single-threaded{}",
        expected,
        elapsed,
        budget_note(elapsed, THM2_BUDGET)
    ))
}

fn budget_note(elapsed: Duration, budget: Duration) -> String {
    if elapsed > budget {
        format!(" (over the {budget:?} budget)")
    } else {
        String::new()
    }
}

fn criterion_2() -> Verdict {
    let spot = evaluate(CongruenceId::THM1, 5, 1, &[]).map_err(|e| e.to_string())?;
    check(
        (spot.lhs.clone(), spot.rhs.clone()) == (Value::int(24), Value::int(24)),
        || format!("(5,1) gives {} / {}", spot.lhs, spot.rhs),
    )?;
    let start = Instant::now();
    let one = evaluate_range(CongruenceId::THM1, &RangeSpec::new(3, THM1_P_MAX, 1))
        .map_err(|e| e.to_string())?;
    let want_one = primes_in(3, THM1_P_MAX).filter(|p| p % 4 == 1).count();
    check(one.results.len() == want_one, || {
        format!("{} tuples with a=1, expected {want_one}", one.results.len())
    })?;
    let higher = evaluate_range(
        CongruenceId::THM1,
        &RangeSpec::new(3, THM1_P_MAX, 3).q_max(THM1_Q_MAX),
    )
    .map_err(|e| e.to_string())?;
    let mut want_higher = 0;
    for p in primes_in(3, THM1_P_MAX).filter(|p| p % 4 == 3) {
        for a in 2..=3 {
            if p.checked_pow(a).is_some_and(|q| q <= THM1_Q_MAX) {
                want_higher += 1;
            }
        }
    }
    let got_higher = higher.results.iter().filter(|r| r.p % 4 == 3).count();
    check(got_higher == want_higher, || {
        format!("{got_higher} tuples with p=3 (mod 4), expected {want_higher}")
    })?;
    let bad: Vec<_> = one
        .failures()
        .chain(higher.failures())
        .map(|r| (r.p, r.a))
        .collect();
    check(bad.is_empty(), || format!("failures at {bad:?}"))?;
    let elapsed = start.elapsed();
    Ok(format!(
        "{want_one} tuples with p=1 (mod 4), {want_higher} with p=3 (mod 4), {elapsed:.2?}{}",
        budget_note(elapsed, THM1_BUDGET)
    ))
}

fn criterion_3() -> Verdict {
    let spot = evaluate(CongruenceId::THM3, 3, 1, &[]).map_err(|e| e.to_string())?;
    check(
        (spot.lhs.clone(), spot.rhs.clone()) == (Value::int(5), Value::int(5)),
        || format!("(3,1) gives {} / {}", spot.lhs, spot.rhs),
    )?;
    let one = evaluate_range(CongruenceId::THM3, &RangeSpec::new(3, THM3_P_MAX, 1))
        .map_err(|e| e.to_string())?;
    let want_one = primes_in(3, THM3_P_MAX).filter(|&p| p != 5).count();
    check(one.results.len() == want_one, || {
        format!("{} primes, expected {want_one}", one.results.len())
    })?;
    let powers = evaluate_range(
        CongruenceId::THM3,
        &RangeSpec::new(3, THM3_Q_MAX, 20).q_max(THM3_Q_MAX),
    )
    .map_err(|e| e.to_string())?;
    let mut want = 0;
    for p in primes_in(3, THM3_Q_MAX).filter(|&p| p != 5) {
        let mut q = p;
        while q <= THM3_Q_MAX {
            want += 1;
            q *= p;
        }
    }
    check(powers.results.len() == want, || {
        format!("{} prime powers, expected {want}", powers.results.len())
    })?;
    let bad: Vec<_> = one
        .failures()
        .chain(powers.failures())
        .map(|r| (r.p, r.a))
        .collect();
    check(bad.is_empty(), || format!("failures at {bad:?}"))?;
    Ok(format!(
        "{want_one} primes with a=1, {want} prime powers up to {THM3_Q_MAX}"
    ))
}

fn sweep_spec() -> RangeSpec {
    RangeSpec::new(3, SWEEP_P_MAX, SWEEP_A_MAX).q_max(SWEEP_Q_MAX)
}

fn criterion_4() -> Verdict {
    let mut failing = Vec::new();
    let mut total = 0;
    for id in SWEEP_IDS {
        let out = evaluate_range(id, &sweep_spec()).map_err(|e| format!("{id}: {e}"))?;
        if out.results.is_empty() {
            failing.push(format!("{id}: nothing evaluated"));
            continue;
        }
        total += out.results.len();
        let fails: Vec<_> = out.failures().collect();
        if !fails.is_empty() {
            let a_values: BTreeMap<u32, usize> = fails.iter().fold(BTreeMap::new(), |mut m, r| {
                *m.entry(r.a).or_default() += 1;
                m
            });
            let first = fails[0];
            failing.push(format!(
                "{id}: {}/{} fail (by a: {a_values:?}; first p={} a={} extra={:?} lhs={} rhs={})",
                fails.len(),
                out.results.len(),
                first.p,
                first.a,
                first.extra,
                first.lhs,
                first.rhs
            ));
        }
    }
    check(failing.is_empty(), || failing.join("; "))?;
    Ok(format!(
        "{} rows, {total} tuples, zero failures",
        SWEEP_IDS.len()
    ))
}

fn criterion_4b() -> Verdict {
    let out = evaluate_range(CongruenceId::UDIVP, &sweep_spec()).map_err(|e| e.to_string())?;
    let fails: Vec<_> = out
        .failures()
        .map(|r| (r.p, r.a, r.extra.clone()))
        .collect();
    check(!out.results.is_empty() && fails.is_empty(), || {
        format!("failures {fails:?}")
    })?;
    Ok(format!("{} tuples, zero failures", out.results.len()))
}

fn primes_below_2_62(count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

fn criterion_5() -> Verdict {
    let moduli = primes_below_2_62(3);
    for q in E45_QS {
        let sides = e45_exact(q);
        check(sides.lhs == sides.rhs, || {
            format!("q={q}: {} != {}", sides.lhs, sides.rhs)
        })?;
        for &m in &moduli {
            let (l, r) = e45_mod(q, m).map_err(|e| e.to_string())?;
            let exact = Residue::new((&sides.lhs % BigInt::from(m)).to_i128().expect("fits"), m);
            check(l == exact && r == exact, || {
                format!(
                    "q={q} mod {m}: exact {} vs {} / {}",
                    exact.value(),
                    l.value(),
                    r.value()
                )
            })?;
        }
    }
    Ok(format!("q in {E45_QS:?}, three moduli below 2^62"))
}

fn criterion_6() -> Verdict {
    let mut count = 0;
    for x in GOULD_XS {
        let x = BigRational::from_integer(x.into());
        for n in 1..=GOULD_N_MAX {
            let g = gould_identity_exact(n, &x).map_err(|e| e.to_string())?;
            check(g.equal(), || format!("n={n} x={x}: {} != {}", g.lhs, g.rhs))?;
            count += 1;
        }
    }
    Ok(format!("{count} exact equalities"))
}

fn criterion_7() -> Verdict {
    let workers = std::thread::available_parallelism()
        .map_or(2, |n| n.get())
        .max(2);
    let full = scan_range(3, WSS_HI, &ScanOptions::new(workers).emit_quotients(true))
        .map_err(|e| e.to_string())?;
    check(full.hits.is_empty(), || {
        format!("hits {:?}", full.hit_primes())
    })?;
    let expected = (3..=WSS_HI).filter(|&n| n != 5 && is_prime(n)).count() as u64;
    check(full.scanned == expected, || {
        format!("scanned {} primes, expected {expected}", full.scanned)
    })?;
    for p in primes_in(3, WSS_HI).filter(|&p| p != 5) {
        let rec = scan_prime(p).map_err(|e| e.to_string())?;
        check(rec.f_mod_p2.value() % p == 0, || {
            format!("p={p} does not divide F")
        })?;
    }

    let serial = scan_range(3, WSS_HI, &ScanOptions::new(1).emit_quotients(true))
        .map_err(|e| e.to_string())?;
    check(
        serial.scanned == full.scanned && serial.quotients == full.quotients,
        || "worker count changed the output".into(),
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("wss.json");
    let opts = ScanOptions::new(workers)
        .emit_quotients(true)
        .checkpoint(&path)
        .block(1 << 18);
    let first = scan_range(3, WSS_HI, &opts.clone().max_blocks(2)).map_err(|e| e.to_string())?;
    check(!first.complete(), || {
        "first leg already covered the range".into()
    })?;
    let rest = scan_range(3, WSS_HI, &opts).map_err(|e| e.to_string())?;
    let mut joined = first.quotients.clone().unwrap_or_default();
    joined.extend(rest.quotients.clone().unwrap_or_default());
    check(
        rest.complete()
            && rest.scanned == full.scanned
            && rest.hit_primes() == full.hit_primes()
            && Some(joined) == full.quotients,
        || {
            format!(
                "resume gave {} primes, full scan {}",
                rest.scanned, full.scanned
            )
        },
    )?;
    Ok(format!(
        "{} primes, zero hits, {:.0} primes/s, resume after {} primes matches",
        full.scanned,
        full.throughput(),
        first.scanned
    ))
}

fn mutation_spec(id: CongruenceId) -> RangeSpec {
    match id {
        CongruenceId::THM2 => RangeSpec::new(7, 200, 1),
        CongruenceId::E45 => RangeSpec::new(3, 50, 2),
        _ => RangeSpec::new(3, 60, 3).q_max(5_000),
    }
}

fn criterion_8() -> Verdict {
    let mut vacuous = Vec::new();
    let mut rows = 0;
    for id in CongruenceId::all() {
        rows += 1;
        let out = evaluate_range_with(id, &mutation_spec(id), Mutation::RhsPlusOne)
            .map_err(|e| format!("{id}: {e}"))?;
        if out.failures().next().is_none() {
            vacuous.push(id.to_string());
        }
    }
    check(vacuous.is_empty(), || {
        format!("mutation undetected for {vacuous:?}")
    })?;
    Ok(format!("RHS+1 detected for all {rows} rows"))
}

fn criterion_9() -> Verdict {
    let mut rng = Xorshift(0x9e37_79b9_7f4a_7c15);
    for _ in 0..ORACLE_PARAM_SETS {
        let params = LucasParams::new(rng.range(-100, 100), rng.range(-100, 100));
        let m = rng.range(2, 1 << 40) as u64;
        for n in 0..=ORACLE_N_MAX {
            let pair = lucas_pair_mod(&params, n, m);
            let (u, v) = lucas_by_recurrence(&params, n, m);
            check((pair.u, pair.v) == (u, v), || {
                format!("{params:?} n={n} mod {m}")
            })?;
        }

        let m = (rng.range(1, 1 << 40) as u64) * 2 + 1;
        let ring = QuadRing::new(params, m);
        let (alpha, _) = ring.roots();
        let b = Residue::new(params.b() as i128, m);
        let mut prev_u = Residue::zero(m);
        for n in 1..=ORACLE_N_MAX {
            let u = lucas_pair_mod(&params, n, m).u;
            let expected = alpha.scale(u) - ring.scalar(b * prev_u);
            check(alpha.qpow(n) == expected, || {
                format!("alpha^{n} for {params:?} mod {m}")
            })?;
            prev_u = u;
        }
    }

    let primes = [3u64, 5, 7, 11, 13];
    let mut done = 0;
    while done < PADIC_CASES {
        let p = primes[(rng.next() % primes.len() as u64) as usize];
        let n = 1 + (rng.next() % 8) as u32;
        let num = rng.range(-1_000_000_000, 1_000_000_000);
        let den = rng.range(1, 1_000_000_000);
        if den % p as i64 == 0 {
            continue;
        }
        let image = PadicRational::from_fraction(num as i128, den as i128, p, n)
            .map_err(|e| e.to_string())?;
        let r = BigRational::new(num.into(), den.into());
        let m = BigInt::from(p).pow(n);
        // numerator * denominator^(phi(p^n) - 1) mod p^n
        let phi = BigInt::from(p).pow(n - 1) * (p - 1);
        let mut want = (r.numer() * r.denom().modpow(&(phi - 1u32), &m)) % &m;
        if want < BigInt::zero() {
            want += &m;
        }
        let got = image.to_residue(n).map_err(|e| e.to_string())?.value();
        check(BigInt::from(got) == want, || {
            format!("{num}/{den} mod {p}^{n}: {got} vs {want}")
        })?;
        done += 1;
    }
    Ok(format!(
        "{ORACLE_PARAM_SETS} parameter sets to n={ORACLE_N_MAX} in both oracles, {PADIC_CASES} p-adic fractions"
    ))
}

fn consistency_chain() -> Verdict {
    let spec = sweep_spec();
    let key = |r: &lucas_congruences::congruences::CongruenceResult| (r.p, r.a);
    let run = |id| -> Result<BTreeMap<(u64, u32), bool>, String> {
        Ok(evaluate_range(id, &spec)
            .map_err(|e| e.to_string())?
            .results
            .iter()
            .map(|r| (key(r), r.holds))
            .collect())
    };
    let (s1, e23, thm1) = (
        run(CongruenceId::S1SUM)?,
        run(CongruenceId::E23)?,
        run(CongruenceId::THM1)?,
    );
    let mut joint = 0;
    for (k, &t) in &thm1 {
        let (Some(&a), Some(&b)) = (s1.get(k), e23.get(k)) else {
            return Err(format!("{k:?} evaluated for THM1 only"));
        };
        check(!(a && b) || t, || {
            format!("S1SUM and E23 hold but THM1 fails at {k:?}")
        })?;
        joint += (a && b) as usize;
    }
    Ok(format!(
        "{joint} tuples where S1SUM and E23 jointly imply THM1"
    ))
}

fn nu1_check() -> Verdict {
    let mut count = 0;
    for p in primes_in(3, NU1_P_MAX) {
        for a in [3u32, 5] {
            let q = p.pow(a);
            if q % 4 != 3 {
                continue;
            }
            let r = evaluate(CongruenceId::NU1, p, a, &[]).map_err(|e| e.to_string())?;
            check(r.holds, || {
                format!("valuation not below a-1 at p={p} a={a}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} tuples"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 THM2 for 5 < p <= 10^4", criterion_1),
        ("2 THM1 ranges", criterion_2),
        ("3 THM3 ranges", criterion_3),
        (
            "4 registry sweep p <= 500, a <= 3, p^a <= 10^5",
            criterion_4,
        ),
        ("4b UDIVP, index p^(a-1)(p-(D/p)), same sweep", criterion_4b),
        ("5 E45 exact vs modular", criterion_5),
        ("6 Gould identity n <= 25", criterion_6),
        ("7 Wall-Sun-Sun scan to 10^6", criterion_7),
        ("8 mutation controls", criterion_8),
        ("9 cross-module oracles", criterion_9),
        ("chain S1SUM and E23 imply THM1", consistency_chain),
        ("NU1 valuation bound a in {3,5}, p <= 200", nu1_check),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match verdict {
            Ok(detail) => println!("[PASS] {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
