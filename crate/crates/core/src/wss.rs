//! Wall-Sun-Sun prime search: primes `p` with `F_{p-(p/5)} = 0 (mod p^2)`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lucas::{fibonacci_epsilon, lucas_pair_mod, LucasParams};
use crate::modmath::{isqrt, primes_in, Residue, MODULUS_LIMIT};
use crate::padic::PadicRational;

/// Integers of range covered between checkpoint writes.
pub const CHECKPOINT_EVERY: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum WssError {
    #[error("invalid range [{lo}, {hi}]: need 3 <= lo <= hi and hi^2 < 2^63")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("checkpoint covers [{found_lo}, {found_hi}], not [{lo}, {hi}]")]
    CheckpointMismatch {
        lo: u64,
        hi: u64,
        found_lo: u64,
        found_hi: u64,
    },
    #[error("malformed checkpoint {path}: {reason}")]
    BadCheckpoint { path: PathBuf, reason: String },
    #[error("checkpoint i/o: {0}")]
    Io(#[from] io::Error),
    #[error("p = {0} does not divide F_(p-(p/5)); kernel fault")]
    NotDivisible(u64),
    #[error("p = {0} is excluded (p must be an odd prime other than 5)")]
    Excluded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRecord {
    pub p: u64,
    pub eps: i8,
    pub f_index: u64,
    pub f_mod_p2: Residue,
    pub fib_quotient: Residue,
    pub is_hit: bool,
}

/// Evaluates one prime. `NotDivisible` would mean the Lucas kernel is broken.
pub fn scan_prime(p: u64) -> Result<ScanRecord, WssError> {
    if p < 3 || p == 5 || p > isqrt(MODULUS_LIMIT - 1) {
        return Err(WssError::Excluded(p));
    }
    let eps = fibonacci_epsilon(p);
    let f_index = (p as i64 - eps as i64) as u64;
    let m = p * p;
    let f_mod_p2 = lucas_pair_mod(&LucasParams::FIBONACCI, f_index, m).u;
    let fib_quotient = PadicRational::from_residue(f_mod_p2, p, 2)
        .and_then(|f| f.shift(-1).to_residue(1))
        .map_err(|_| WssError::NotDivisible(p))?;
    Ok(ScanRecord {
        p,
        eps,
        f_index,
        f_mod_p2,
        fib_quotient,
        is_hit: f_mod_p2.is_zero(),
    })
}

/// `F_{p-(p/5)}/p mod p`.
pub fn fib_quotient(p: u64) -> Result<Residue, WssError> {
    scan_prime(p).map(|r| r.fib_quotient)
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub emit_quotients: bool,
    /// Range width per checkpoint block.
    pub block: u64,
    /// Stop after this many blocks, leaving the checkpoint behind.
    pub max_blocks: Option<u64>,
}

impl ScanOptions {
    pub fn new(workers: usize) -> Self {
        ScanOptions {
            workers: workers.max(1),
            checkpoint: None,
            emit_quotients: false,
            block: CHECKPOINT_EVERY,
            max_blocks: None,
        }
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    pub fn emit_quotients(mut self, yes: bool) -> Self {
        self.emit_quotients = yes;
        self
    }

    pub fn block(mut self, block: u64) -> Self {
        self.block = block.max(1);
        self
    }

    pub fn max_blocks(mut self, n: u64) -> Self {
        self.max_blocks = Some(n);
        self
    }
}

#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub lo: u64,
    pub hi: u64,
    /// Next integer to examine; `hi + 1` once the range is done.
    pub cursor: u64,
    pub scanned: u64,
    pub hits: Vec<ScanRecord>,
    /// Primes scanned by this call, not by earlier runs of a resumed scan.
    pub scanned_this_run: u64,
    pub elapsed: Duration,
    /// `(p, F_{p-eps}/p mod p)` for primes scanned by this call.
    pub quotients: Option<Vec<(u64, u64)>>,
}

impl ScanSummary {
    pub fn complete(&self) -> bool {
        self.cursor > self.hi
    }

    /// Primes per second over this call.
    pub fn throughput(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs == 0.0 {
            return self.scanned_this_run as f64;
        }
        self.scanned_this_run as f64 / secs
    }

    pub fn hit_primes(&self) -> Vec<u64> {
        self.hits.iter().map(|r| r.p).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub lo: u64,
    pub hi: u64,
    pub cursor: u64,
    pub scanned: u64,
    pub hits: Vec<String>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>, WssError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let bad = |reason: String| WssError::BadCheckpoint {
            path: path.to_path_buf(),
            reason,
        };
        let cp: Checkpoint = serde_json::from_str(text.trim()).map_err(|e| bad(e.to_string()))?;
        if cp.cursor < cp.lo || cp.cursor > cp.hi.saturating_add(1) {
            return Err(bad(format!("cursor {} outside range", cp.cursor)));
        }
        for h in &cp.hits {
            h.parse::<u64>()
                .map_err(|e| bad(format!("hit {h:?}: {e}")))?;
        }
        Ok(Some(cp))
    }

    /// Writes to a sibling temp file, then renames over `path`.
    pub fn store(&self, path: &Path) -> Result<(), WssError> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        let mut line = serde_json::to_string(self).expect("checkpoint serializes");
        line.push('\n');
        fs::write(&tmp, line)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

struct Chunk {
    scanned: u64,
    hits: Vec<ScanRecord>,
    quotients: Vec<(u64, u64)>,
}

fn scan_chunk(lo: u64, hi: u64, keep_quotients: bool) -> Result<Chunk, WssError> {
    let mut chunk = Chunk {
        scanned: 0,
        hits: Vec::new(),
        quotients: Vec::new(),
    };
    for p in primes_in(lo, hi).filter(|&p| p != 5 && p != 2) {
        let rec = scan_prime(p)?;
        chunk.scanned += 1;
        if rec.is_hit {
            chunk.hits.push(rec);
        }
        if keep_quotients {
            chunk.quotients.push((p, rec.fib_quotient.value()));
        }
    }
    Ok(chunk)
}

/// Splits `[lo, hi]` into `workers` contiguous pieces, scans them on scoped
/// threads and concatenates the results in ascending order.
fn scan_block(lo: u64, hi: u64, workers: usize, keep_quotients: bool) -> Result<Chunk, WssError> {
    let width = hi - lo + 1;
    let workers = (workers as u64).clamp(1, width);
    let step = width.div_ceil(workers);
    let bounds: Vec<(u64, u64)> = (0..workers)
        .map(|i| lo + i * step)
        .take_while(|&s| s <= hi)
        .map(|s| (s, (s + step - 1).min(hi)))
        .collect();
    let parts: Vec<Result<Chunk, WssError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(s, e)| scope.spawn(move || scan_chunk(s, e, keep_quotients)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    let mut merged = Chunk {
        scanned: 0,
        hits: Vec::new(),
        quotients: Vec::new(),
    };
    for part in parts {
        let part = part?;
        merged.scanned += part.scanned;
        merged.hits.extend(part.hits);
        merged.quotients.extend(part.quotients);
    }
    Ok(merged)
}

pub fn scan_range(lo: u64, hi: u64, opts: &ScanOptions) -> Result<ScanSummary, WssError> {
    if lo < 3 || lo > hi || (hi as u128) * (hi as u128) >= MODULUS_LIMIT as u128 {
        return Err(WssError::InvalidRange { lo, hi });
    }
    let mut cursor = lo;
    let mut scanned = 0;
    let mut hits = Vec::new();
    if let Some(path) = &opts.checkpoint {
        if let Some(cp) = Checkpoint::load(path)? {
            if (cp.lo, cp.hi) != (lo, hi) {
                return Err(WssError::CheckpointMismatch {
                    lo,
                    hi,
                    found_lo: cp.lo,
                    found_hi: cp.hi,
                });
            }
            cursor = cp.cursor;
            scanned = cp.scanned;
            for h in &cp.hits {
                hits.push(scan_prime(h.parse().expect("validated on load"))?);
            }
        }
    }

    let start = Instant::now();
    let mut scanned_this_run = 0;
    let mut quotients = opts.emit_quotients.then(Vec::new);
    let mut blocks = 0;
    while cursor <= hi && opts.max_blocks.is_none_or(|m| blocks < m) {
        let end = cursor.saturating_add(opts.block - 1).min(hi);
        let chunk = scan_block(cursor, end, opts.workers, opts.emit_quotients)?;
        scanned += chunk.scanned;
        scanned_this_run += chunk.scanned;
        hits.extend(chunk.hits);
        if let Some(q) = quotients.as_mut() {
            q.extend(chunk.quotients);
        }
        cursor = end + 1;
        blocks += 1;
        if let Some(path) = &opts.checkpoint {
            Checkpoint {
                lo,
                hi,
                cursor,
                scanned,
                hits: hits.iter().map(|r| r.p.to_string()).collect(),
            }
            .store(path)?;
        }
    }
    Ok(ScanSummary {
        lo,
        hi,
        cursor,
        scanned,
        hits,
        scanned_this_run,
        elapsed: start.elapsed(),
        quotients,
    })
}
