//! Registry of congruences and identities, each evaluated numerically.
//!
//! Every row computes its left side by direct summation (p-adic where
//! divisions by multiples of `p` occur) and its right side from Lucas or
//! Jacobi closed forms, then reports whether the two residues agree.
//! Nothing here assumes a congruence holds.

mod background;
mod binomial;
mod central;
mod exact;
mod fibonacci;
mod granville;
mod registry;
mod support;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modmath::{ModError, PrimePower};
use crate::padic::PadicError;

pub use binomial::{binomial_padic, central_binomial_stream, CentralBinomials};
pub use exact::{
    e45_exact, e45_mod, gould_identity_exact, E45Sides, GouldError, GouldOutcome, E45_Q_CAP,
    GOULD_N_CAP,
};
pub use registry::{row, ExtraKind, ModulusExponent, RegistryRow, REGISTRY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CongruenceId {
    THM1,
    THM2,
    THM3,
    S1SUM,
    E23,
    E24,
    L21,
    L22,
    CB1,
    CB2,
    NU1,
    L31,
    P31A,
    P31B,
    E34,
    E35,
    E36,
    E37,
    E38,
    L41,
    HARM,
    P41,
    L42,
    E44,
    E45,
    VP,
    UP,
    UDIV,
    UDIVP,
}

impl CongruenceId {
    pub fn all() -> impl Iterator<Item = CongruenceId> {
        REGISTRY.iter().map(|r| r.id)
    }

    pub fn name(self) -> &'static str {
        row(self).name
    }
}

impl fmt::Display for CongruenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown congruence id {0:?}")]
pub struct UnknownId(pub String);

impl FromStr for CongruenceId {
    type Err = UnknownId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        REGISTRY
            .iter()
            .find(|r| r.name.eq_ignore_ascii_case(s))
            .map(|r| r.id)
            .ok_or_else(|| UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("{id} is not defined for p={p}, a={a}, extra={extra:?}: {reason}")]
    IneligibleParameters {
        id: CongruenceId,
        p: u64,
        a: u32,
        extra: Vec<i64>,
        reason: String,
    },
    #[error("{id} needs {p}^{n} which does not fit below 2^63")]
    PrecisionOverflow { id: CongruenceId, p: u64, n: u32 },
    #[error("internal error evaluating {id} at p={p}, a={a}: {source}")]
    Padic {
        id: CongruenceId,
        p: u64,
        a: u32,
        source: PadicError,
    },
    #[error(transparent)]
    Modular(#[from] ModError),
}

/// What a congruence is compared modulo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulus {
    Mod(u64),
    /// Exact equality of integers.
    Exact,
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Mod(m) => write!(f, "{m}"),
            Modulus::Exact => f.write_str("exact"),
        }
    }
}

impl FromStr for Modulus {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exact" {
            Ok(Modulus::Exact)
        } else {
            s.parse().map(Modulus::Mod)
        }
    }
}

/// One side of a congruence: an integer (residue or exact) or an element
/// `a + bω` of a quadratic ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    Quad(u64, u64),
}

impl Value {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Value::Int(v.into())
    }

    fn plus_one(&self, modulus: Modulus) -> Value {
        match (self, modulus) {
            (Value::Int(v), Modulus::Mod(m)) => Value::Int((v + 1u32) % m),
            (Value::Int(v), Modulus::Exact) => Value::Int(v + BigInt::one()),
            (Value::Quad(a, b), Modulus::Mod(m)) => Value::Quad((a + 1) % m, *b),
            (Value::Quad(a, b), Modulus::Exact) => Value::Quad(a + 1, *b),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Quad(a, b) => write!(f, "{a}+{b}w"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse value {0:?}")]
pub struct BadValue(pub String);

impl FromStr for Value {
    type Err = BadValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BadValue(s.to_string());
        if let Some(body) = s.strip_suffix('w') {
            let (a, b) = body.split_once('+').ok_or_else(bad)?;
            Ok(Value::Quad(
                a.parse().map_err(|_| bad())?,
                b.parse().map_err(|_| bad())?,
            ))
        } else {
            s.parse().map(Value::Int).map_err(|_| bad())
        }
    }
}

/// Outcome of evaluating one registry row at one parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceResult {
    pub id: CongruenceId,
    pub p: u64,
    pub a: u32,
    pub extra: Vec<i64>,
    pub modulus: Modulus,
    pub lhs: Value,
    pub rhs: Value,
    pub holds: bool,
    pub micros: u64,
}

/// Deliberate corruption used to prove the harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    RhsPlusOne,
}

/// Everything an evaluator may read.
pub(crate) struct Ctx<'a> {
    pub id: CongruenceId,
    pub pp: PrimePower,
    pub extra: &'a [i64],
    /// Working precision `N`.
    pub n: u32,
}

impl Ctx<'_> {
    pub fn p(&self) -> u64 {
        self.pp.p()
    }

    pub fn a(&self) -> u32 {
        self.pp.a()
    }

    pub fn q(&self) -> u64 {
        self.pp.q()
    }

    /// `p^k`, guaranteed to fit by the precision check.
    pub fn pk(&self, k: u32) -> u64 {
        self.p().pow(k)
    }

    pub fn padic<T>(&self, r: Result<T, PadicError>) -> Result<T, CongruenceError> {
        r.map_err(|source| CongruenceError::Padic {
            id: self.id,
            p: self.p(),
            a: self.a(),
            source,
        })
    }
}

pub(crate) type Sides = (Value, Value);

pub fn evaluate(
    id: CongruenceId,
    p: u64,
    a: u32,
    extra: &[i64],
) -> Result<CongruenceResult, CongruenceError> {
    evaluate_with(id, p, a, extra, Mutation::None)
}

pub fn evaluate_with(
    id: CongruenceId,
    p: u64,
    a: u32,
    extra: &[i64],
    mutation: Mutation,
) -> Result<CongruenceResult, CongruenceError> {
    let row = row(id);
    let ineligible = |reason: String| CongruenceError::IneligibleParameters {
        id,
        p,
        a,
        extra: extra.to_vec(),
        reason,
    };
    let pp = PrimePower::new(p, a).map_err(|e| ineligible(e.to_string()))?;
    row.check_extra(extra).map_err(ineligible)?;
    (row.eligible)(&pp, extra).map_err(ineligible)?;
    let n = row.precision(a);
    if pp.modulus(n).is_err() || pp.modulus(row.modulus_exponent.exponent(a).max(1)).is_err() {
        return Err(CongruenceError::PrecisionOverflow { id, p, n });
    }
    let modulus = match row.modulus_exponent {
        ModulusExponent::Exact => Modulus::Exact,
        e => Modulus::Mod(p.pow(e.exponent(a))),
    };

    let ctx = Ctx { id, pp, extra, n };
    let start = Instant::now();
    let (lhs, mut rhs) = (row.eval)(&ctx)?;
    let micros = start.elapsed().as_micros() as u64;
    if mutation == Mutation::RhsPlusOne {
        rhs = rhs.plus_one(modulus);
    }
    Ok(CongruenceResult {
        id,
        p,
        a,
        extra: extra.to_vec(),
        modulus,
        holds: lhs == rhs,
        lhs,
        rhs,
        micros,
    })
}

/// The parameter space swept by [`evaluate_range`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeSpec {
    pub p_min: u64,
    pub p_max: u64,
    pub a_max: u32,
    /// Skip tuples with `p^a` above this bound.
    pub q_max: Option<u64>,
    /// `x` samples for rows taking `x`; `None` uses the default sample.
    pub xs: Option<Vec<i64>>,
    /// `(A, B)` samples for rows taking them.
    pub abs: Option<Vec<(i64, i64)>>,
    /// `l` samples for CB2.
    pub ls: Option<Vec<i64>>,
}

impl RangeSpec {
    pub fn new(p_min: u64, p_max: u64, a_max: u32) -> Self {
        RangeSpec {
            p_min,
            p_max,
            a_max,
            q_max: None,
            xs: None,
            abs: None,
            ls: None,
        }
    }

    pub fn q_max(mut self, q_max: u64) -> Self {
        self.q_max = Some(q_max);
        self
    }

    pub fn xs(mut self, xs: Vec<i64>) -> Self {
        self.xs = Some(xs);
        self
    }

    pub fn abs(mut self, abs: Vec<(i64, i64)>) -> Self {
        self.abs = Some(abs);
        self
    }

    pub fn ls(mut self, ls: Vec<i64>) -> Self {
        self.ls = Some(ls);
        self
    }
}

/// Default `x` sample: `{2, 3, 5, -1, p - 2}`.
pub fn default_xs(p: u64) -> Vec<i64> {
    vec![2, 3, 5, -1, p as i64 - 2]
}

/// Default `(A, B)` sample for the Lucas-parameter rows.
pub const DEFAULT_ABS: [(i64, i64); 7] =
    [(1, -1), (2, -1), (-6, 1), (3, 2), (5, -3), (4, 4), (-2, 7)];

/// Default `l` sample for CB2: `{1, 2, 3, p, (q-1)/2}`.
pub fn default_ls(p: u64, q: u64) -> Vec<i64> {
    vec![1, 2, 3, p as i64, (q as i64 - 1) / 2]
}

#[derive(Debug, Clone, Default)]
pub struct RangeOutcome {
    pub results: Vec<CongruenceResult>,
    /// Tuples outside the row's domain or precision bounds.
    pub skipped: usize,
}

impl RangeOutcome {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CongruenceResult> {
        self.results.iter().filter(|r| !r.holds)
    }
}

fn tuples(id: CongruenceId, spec: &RangeSpec) -> Vec<(u64, u32, Vec<i64>)> {
    let row = row(id);
    let mut out = Vec::new();
    if spec.p_min > spec.p_max {
        return out;
    }
    for p in crate::modmath::primes_in(spec.p_min, spec.p_max) {
        for a in 1..=spec.a_max {
            let q = match crate::modmath::checked_pow(p, a) {
                Some(q) => q,
                None => {
                    out.push((p, a, Vec::new()));
                    continue;
                }
            };
            if spec.q_max.is_some_and(|m| q > m) {
                continue;
            }
            let mut extras: Vec<Vec<i64>> = match row.extra {
                ExtraKind::None => vec![Vec::new()],
                ExtraKind::X => spec
                    .xs
                    .clone()
                    .unwrap_or_else(|| default_xs(p))
                    .into_iter()
                    .map(|x| vec![x])
                    .collect(),
                ExtraKind::AB => spec
                    .abs
                    .clone()
                    .unwrap_or_else(|| DEFAULT_ABS.to_vec())
                    .into_iter()
                    .map(|(x, y)| vec![x, y])
                    .collect(),
                ExtraKind::L => spec
                    .ls
                    .clone()
                    .unwrap_or_else(|| default_ls(p, q))
                    .into_iter()
                    .map(|l| vec![l])
                    .collect(),
            };
            extras.sort();
            extras.dedup();
            out.extend(extras.into_iter().map(|e| (p, a, e)));
        }
    }
    out
}

/// Evaluates `id` over every tuple of `spec`, in ascending `(p, a, extra)`
/// order. Runs on the current rayon pool.
pub fn evaluate_range(id: CongruenceId, spec: &RangeSpec) -> Result<RangeOutcome, CongruenceError> {
    evaluate_range_with(id, spec, Mutation::None)
}

pub fn evaluate_range_with(
    id: CongruenceId,
    spec: &RangeSpec,
    mutation: Mutation,
) -> Result<RangeOutcome, CongruenceError> {
    let evaluated: Vec<Result<Option<CongruenceResult>, CongruenceError>> = tuples(id, spec)
        .into_par_iter()
        .map(
            |(p, a, extra)| match evaluate_with(id, p, a, &extra, mutation) {
                Ok(r) => Ok(Some(r)),
                Err(
                    CongruenceError::IneligibleParameters { .. }
                    | CongruenceError::PrecisionOverflow { .. },
                ) => Ok(None),
                Err(e) => Err(e),
            },
        )
        .collect();
    let mut outcome = RangeOutcome::default();
    for r in evaluated {
        match r? {
            Some(res) => outcome.results.push(res),
            None => outcome.skipped += 1,
        }
    }
    Ok(outcome)
}
