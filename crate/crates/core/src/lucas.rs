//! Lucas sequences `u_n(A, B)` and `v_n(A, B)` modulo `m`.
//!
//! `u_0 = 0, u_1 = 1, v_0 = 2, v_1 = A` and both satisfy
//! `s_{n+1} = A s_n - B s_{n-1}`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::modmath::{self, PrimePower, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LucasError {
    #[error("p = {p} divides the discriminant {delta}; the symbol is 0")]
    ZeroSymbol { p: u64, delta: i128 },
    #[error("unknown sequence name {0:?}")]
    UnknownSequence(String),
}

/// The parameters `(A, B)` with cached discriminant `A^2 - 4B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LucasParams {
    a: i64,
    b: i64,
    delta: i128,
}

impl LucasParams {
    pub const FIBONACCI: LucasParams = LucasParams::new(1, -1);
    pub const PELL: LucasParams = LucasParams::new(2, -1);
    /// Roots `-3 ± 2√2` of `x^2 + 6x + 1`.
    pub const NEG6_1: LucasParams = LucasParams::new(-6, 1);

    pub const fn new(a: i64, b: i64) -> Self {
        LucasParams {
            a,
            b,
            delta: (a as i128) * (a as i128) - 4 * (b as i128),
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn discriminant(&self) -> i128 {
        self.delta
    }
}

impl fmt::Display for LucasParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(A={}, B={})", self.a, self.b)
    }
}

/// `(u_n, v_n, B^n)` modulo a common modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LucasPair {
    pub u: Residue,
    pub v: Residue,
    pub bn: Residue,
}

impl LucasPair {
    /// `v^2 - Δu^2 == 4B^n`.
    pub fn is_consistent(&self, params: &LucasParams) -> bool {
        let m = self.u.modulus();
        let delta = Residue::new(params.delta, m);
        self.v * self.v - delta * self.u * self.u == Residue::new(4, m) * self.bn
    }
}

/// `(u_n mod m, v_n mod m, B^n mod m)` in `O(log n)` steps.
pub fn lucas_pair_mod(params: &LucasParams, n: u64, m: u64) -> LucasPair {
    if m % 2 == 1 {
        ladder_odd(params, n, m)
    } else {
        ladder_any(params, n, m)
    }
}

// Doubling on (u, v, B^n); the odd step divides by 2, so m must be odd.
fn ladder_odd(params: &LucasParams, n: u64, m: u64) -> LucasPair {
    let a = Residue::new(params.a as i128, m);
    let b = Residue::new(params.b as i128, m);
    let delta = Residue::new(params.delta, m);
    let two = Residue::new(2, m);
    let half = Residue::new((m as i128 + 1) / 2, m);
    let (mut u, mut v, mut bn) = (Residue::zero(m), two, Residue::one(m));
    for bit in (0..64 - n.leading_zeros()).rev() {
        // n -> 2n
        (u, v, bn) = (u * v, v * v - two * bn, bn * bn);
        if (n >> bit) & 1 == 1 {
            // n -> n + 1
            (u, v, bn) = ((a * u + v) * half, (delta * u + a * v) * half, bn * b);
        }
    }
    LucasPair { u, v, bn }
}

// Doubling on (u_n, u_{n+1}, B^n); no division, any modulus.
fn ladder_any(params: &LucasParams, n: u64, m: u64) -> LucasPair {
    let a = Residue::new(params.a as i128, m);
    let b = Residue::new(params.b as i128, m);
    let two = Residue::new(2, m);
    let (mut u0, mut u1, mut bn) = (Residue::zero(m), Residue::one(m), Residue::one(m));
    for bit in (0..64 - n.leading_zeros()).rev() {
        // u_{2n} = u_n (2u_{n+1} - A u_n), u_{2n+1} = u_{n+1}^2 - B u_n^2
        (u0, u1, bn) = (u0 * (two * u1 - a * u0), u1 * u1 - b * u0 * u0, bn * bn);
        if (n >> bit) & 1 == 1 {
            (u0, u1, bn) = (u1, a * u1 - b * u0, bn * b);
        }
    }
    LucasPair {
        u: u0,
        v: two * u1 - a * u0,
        bn,
    }
}

/// Named instances used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sequence {
    /// `F_n = u_n(1, -1)`
    Fib,
    /// `L_n = v_n(1, -1)`
    Luc,
    /// `P_n = u_n(2, -1)`
    PellP,
    /// `Q_n = v_n(2, -1)`
    PellQ,
    /// `u_n(-6, 1)`
    UNeg6,
}

impl Sequence {
    pub const ALL: [Sequence; 5] = [
        Sequence::Fib,
        Sequence::Luc,
        Sequence::PellP,
        Sequence::PellQ,
        Sequence::UNeg6,
    ];

    pub fn params(self) -> LucasParams {
        match self {
            Sequence::Fib | Sequence::Luc => LucasParams::FIBONACCI,
            Sequence::PellP | Sequence::PellQ => LucasParams::PELL,
            Sequence::UNeg6 => LucasParams::NEG6_1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sequence::Fib => "FIB",
            Sequence::Luc => "LUC",
            Sequence::PellP => "PELL_P",
            Sequence::PellQ => "PELL_Q",
            Sequence::UNeg6 => "U_NEG6_1",
        }
    }
}

impl FromStr for Sequence {
    type Err = LucasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Sequence::ALL
            .into_iter()
            .find(|seq| seq.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LucasError::UnknownSequence(s.to_string()))
    }
}

pub fn named_sequence_mod(seq: Sequence, n: u64, m: u64) -> Residue {
    let pair = lucas_pair_mod(&seq.params(), n, m);
    match seq {
        Sequence::Fib | Sequence::PellP | Sequence::UNeg6 => pair.u,
        Sequence::Luc | Sequence::PellQ => pair.v,
    }
}

/// `ε = (Δ/p^a)` and the index `p^a - ε`.
pub fn sign_index(pp: &PrimePower, delta: i128) -> Result<(i8, u64), LucasError> {
    let eps = pp.symbol(delta);
    if eps == 0 {
        return Err(LucasError::ZeroSymbol { p: pp.p(), delta });
    }
    let index = if eps == 1 { pp.q() - 1 } else { pp.q() + 1 };
    Ok((eps, index))
}

/// Direct iteration of the recurrence; `O(n)`, for cross-checks.
pub fn lucas_by_recurrence(params: &LucasParams, n: u64, m: u64) -> (Residue, Residue) {
    let a = Residue::new(params.a as i128, m);
    let b = Residue::new(params.b as i128, m);
    let (mut u0, mut u1) = (Residue::zero(m), Residue::one(m));
    let (mut v0, mut v1) = (Residue::new(2, m), a);
    for _ in 0..n {
        (u0, u1) = (u1, a * u1 - b * u0);
        (v0, v1) = (v1, a * v1 - b * v0);
    }
    (u0, v0)
}

/// Residues `s_0, s_1, ...` of a sequence with the Lucas recurrence, for
/// summations that need every term.
pub struct LucasTerms {
    a: Residue,
    b: Residue,
    cur: Residue,
    next: Residue,
}

impl LucasTerms {
    pub fn u(params: &LucasParams, m: u64) -> Self {
        Self::with_start(params, Residue::zero(m), Residue::one(m))
    }

    pub fn v(params: &LucasParams, m: u64) -> Self {
        Self::with_start(
            params,
            Residue::new(2, m),
            Residue::new(params.a as i128, m),
        )
    }

    fn with_start(params: &LucasParams, s0: Residue, s1: Residue) -> Self {
        let m = s0.modulus();
        LucasTerms {
            a: Residue::new(params.a as i128, m),
            b: Residue::new(params.b as i128, m),
            cur: s0,
            next: s1,
        }
    }
}

impl Iterator for LucasTerms {
    type Item = Residue;

    fn next(&mut self) -> Option<Residue> {
        let out = self.cur;
        (self.cur, self.next) = (self.next, self.a * self.next - self.b * self.cur);
        Some(out)
    }
}

/// `p | F_{p - (p/5)}` gives a quotient; `(p/5)` for odd `p != 5`.
pub fn fibonacci_epsilon(p: u64) -> i8 {
    modmath::jacobi(p as i128, 5).expect("5 is odd")
}
