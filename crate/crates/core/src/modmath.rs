//! Residue arithmetic on 64-bit moduli.
//!
//! Products go through `u128`, so any modulus below 2^63 is safe (the
//! cap leaves headroom for the signed reductions in [`Residue::new`]).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use thiserror::Error;

/// Largest supported modulus (exclusive).
pub const MODULUS_LIMIT: u64 = 1 << 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("{value} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotInvertible { value: i128, modulus: u64, gcd: u64 },
    #[error("Jacobi symbol needs an odd modulus, got {0}")]
    EvenModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 is not permitted here")]
    EvenPrime,
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("{p}^{a} does not fit below 2^63")]
    PowerOverflow { p: u64, a: u32 },
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// An element of Z/mZ. Binary operators panic if the moduli differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(
            (2..MODULUS_LIMIT).contains(&modulus),
            "modulus {modulus} outside [2, 2^63)"
        );
        Residue {
            value: reduce(value, modulus),
            modulus,
        }
    }

    /// Builds a residue from an already reduced value.
    #[inline]
    pub(crate) fn from_reduced(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Residue { value, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Residue::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Residue::new(1, modulus)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Symmetric representative in `(-m/2, m/2]`.
    pub fn signed(self) -> i128 {
        if self.value > self.modulus / 2 {
            self.value as i128 - self.modulus as i128
        } else {
            self.value as i128
        }
    }

    pub fn pow(self, exponent: u64) -> Self {
        powmod(self.value as i128, exponent, self.modulus)
    }

    pub fn inv(self) -> Result<Self, ModError> {
        invmod(self.value as i128, self.modulus)
    }

    /// Reduces into a smaller modulus that divides this one.
    pub fn reduce_to(self, modulus: u64) -> Self {
        assert_eq!(
            self.modulus % modulus,
            0,
            "{modulus} does not divide {}",
            self.modulus
        );
        Residue::from_reduced(self.value % modulus, modulus)
    }

    fn check(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "residues with different moduli"
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue::from_reduced(addmod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue::from_reduced(submod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue::from_reduced(mulmod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::from_reduced(submod(0, self.value, self.modulus), self.modulus)
    }
}

impl AddAssign for Residue {
    fn add_assign(&mut self, rhs: Residue) {
        *self = *self + rhs;
    }
}

impl SubAssign for Residue {
    fn sub_assign(&mut self, rhs: Residue) {
        *self = *self - rhs;
    }
}

impl MulAssign for Residue {
    fn mul_assign(&mut self, rhs: Residue) {
        *self = *self * rhs;
    }
}

/// `base^exponent mod m`.
pub fn powmod(base: i128, mut exponent: u64, m: u64) -> Residue {
    let mut b = reduce(base, m);
    let mut acc = 1 % m;
    while exponent > 0 {
        if exponent & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        exponent >>= 1;
    }
    Residue::new(acc as i128, m)
}

/// Inverse of `x` modulo `m` by the extended Euclidean algorithm.
pub fn invmod(x: i128, m: u64) -> Result<Residue, ModError> {
    let (mut r0, mut r1) = (m as i128, reduce(x, m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(ModError::NotInvertible {
            value: x,
            modulus: m,
            gcd: r0 as u64,
        });
    }
    Ok(Residue::new(s0, m))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The Jacobi symbol `(a/n)` for odd positive `n`, by the binary algorithm.
pub fn jacobi(a: i128, n: u64) -> Result<i8, ModError> {
    if n.is_multiple_of(2) {
        return Err(ModError::EvenModulus(n));
    }
    let mut a = reduce(a, n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n = 3, 5 (mod 8)
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        (a, n) = (n % a, a);
    }
    Ok(if n == 1 { sign } else { 0 })
}

// Bases that make Miller-Rabin deterministic below 3.3 * 10^24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &MR_BASES {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// `p^a`, or `None` if it reaches 2^63.
pub fn checked_pow(p: u64, a: u32) -> Option<u64> {
    p.checked_pow(a).filter(|&q| q < MODULUS_LIMIT)
}

/// `ν_p(n)` for `n > 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `ν_p(n!)` by Legendre's formula.
pub fn nu_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut m = n;
    while m > 0 {
        m /= p;
        total += m;
    }
    total
}

/// `C(n, k) mod p` by Lucas' theorem (product of binomials of base-p digits).
pub fn binom_mod_lucas(mut n: u64, mut k: u64, p: u64) -> Residue {
    assert!(k <= n, "binom_mod_lucas needs k <= n");
    let mut acc = Residue::one(p);
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Residue::zero(p);
        }
        acc *= small_binom_mod(nd, kd, p);
        n /= p;
        k /= p;
    }
    acc
}

// C(n, k) mod p with n < p, so k! is a unit.
fn small_binom_mod(n: u64, k: u64, p: u64) -> Residue {
    let k = k.min(n - k);
    let mut num = Residue::one(p);
    let mut den = Residue::one(p);
    for i in 0..k {
        num *= Residue::new((n - i) as i128, p);
        den *= Residue::new((i + 1) as i128, p);
    }
    num * den.inv().expect("k! is a unit below p")
}

/// An odd prime power `q = p^a` together with the data every congruence
/// needs about it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    a: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, a: u32) -> Result<Self, ModError> {
        if p == 2 {
            return Err(ModError::EvenPrime);
        }
        Self::new_allow_two(p, a)
    }

    pub fn new_allow_two(p: u64, a: u32) -> Result<Self, ModError> {
        if a == 0 {
            return Err(ModError::ZeroExponent);
        }
        if !is_prime(p) {
            return Err(ModError::NotPrime(p));
        }
        let q = checked_pow(p, a).ok_or(ModError::PowerOverflow { p, a })?;
        Ok(PrimePower { p, a, q })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn a(&self) -> u32 {
        self.a
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_mod4(&self) -> u64 {
        self.q % 4
    }

    /// `p^k`, the modulus of a congruence "mod p^k".
    pub fn modulus(&self, k: u32) -> Result<u64, ModError> {
        checked_pow(self.p, k).ok_or(ModError::PowerOverflow { p: self.p, a: k })
    }

    /// The Jacobi symbol `(d/p^a)`.
    pub fn symbol(&self, d: i128) -> i8 {
        jacobi(d, self.p)
            .map(|s| if self.a.is_multiple_of(2) { s * s } else { s })
            .expect("p is odd")
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.a)
        }
    }
}

/// Segmented sieve over a closed range, yielding primes in ascending order.
pub struct PrimeIter {
    next_start: u64,
    hi: u64,
    segment_len: u64,
    base: Vec<u64>,
    buffer: Vec<u64>,
    pos: usize,
}

pub const DEFAULT_SEGMENT: u64 = 1 << 16;

pub fn primes_in(lo: u64, hi: u64) -> PrimeIter {
    primes_in_with_segment(lo, hi, DEFAULT_SEGMENT)
}

pub fn primes_in_with_segment(lo: u64, hi: u64, segment_len: u64) -> PrimeIter {
    assert!(segment_len > 0);
    let lo = lo.max(2);
    let root = if hi < 4 { 1 } else { isqrt(hi) };
    PrimeIter {
        next_start: lo,
        hi,
        segment_len,
        base: simple_sieve(root),
        buffer: Vec::new(),
        pos: 0,
    }
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

impl PrimeIter {
    fn fill(&mut self) -> bool {
        self.buffer.clear();
        self.pos = 0;
        while self.buffer.is_empty() {
            if self.next_start > self.hi {
                return false;
            }
            let start = self.next_start;
            let end = start.saturating_add(self.segment_len - 1).min(self.hi);
            let mut composite = vec![false; (end - start + 1) as usize];
            for &p in &self.base {
                if p * p > end {
                    break;
                }
                let first = (p * p).max(start.div_ceil(p) * p);
                let mut j = first;
                while j <= end {
                    composite[(j - start) as usize] = true;
                    j += p;
                }
            }
            self.buffer.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| start + i as u64),
            );
            self.next_start = match end.checked_add(1) {
                Some(s) => s,
                None => {
                    self.hi = 0;
                    u64::MAX
                }
            };
        }
        true
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos >= self.buffer.len() && !self.fill() {
            return None;
        }
        let p = self.buffer[self.pos];
        self.pos += 1;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powmod_examples() {
        assert_eq!(powmod(2, 10, 1000).value(), 24);
        assert_eq!(powmod(3, 5, 7).value(), 5);
        for m in [2, 9, 1000] {
            assert_eq!(powmod(12345, 0, m).value(), 1);
        }
        assert_eq!(powmod(-1, 3, 7).value(), 6);
    }

    #[test]
    fn invmod_examples() {
        assert_eq!(invmod(16, 25).unwrap().value(), 11);
        assert_eq!(invmod(1, 97).unwrap().value(), 1);
        assert_eq!(
            invmod(3, 9),
            Err(ModError::NotInvertible {
                value: 3,
                modulus: 9,
                gcd: 3
            })
        );
        assert_eq!(invmod(-2, 125).unwrap().value(), 62);
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(1, 9), Ok(1));
        assert_eq!(jacobi(2, 7), Ok(1));
        assert_eq!(jacobi(3, 5), Ok(-1));
        assert_eq!(jacobi(2, 15), Ok(1));
        assert_eq!(jacobi(6, 15), Ok(0));
        assert_eq!(jacobi(-1, 7), Ok(-1));
        assert_eq!(jacobi(5, 1), Ok(1));
        assert_eq!(jacobi(3, 8), Err(ModError::EvenModulus(8)));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(341));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(0) && !is_prime(1));
        // strong pseudoprime to bases 2..=37 would be > 3 * 10^24
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(primes_in(2, 10).collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(primes_in(24, 28).count(), 0);
        assert_eq!(primes_in(90, 100).collect::<Vec<_>>(), vec![97]);
        assert_eq!(primes_in(0, 1).count(), 0);
        assert_eq!(primes_in(11, 11).collect::<Vec<_>>(), vec![11]);
    }

    #[test]
    fn sieve_segments_agree_with_primality() {
        let small: Vec<u64> = primes_in_with_segment(1, 5000, 37).collect();
        let direct: Vec<u64> = (1..=5000).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, direct);
        assert_eq!(primes_in(1, 1_000_000).count(), 78_498);
    }

    #[test]
    fn legendre_formula_examples() {
        assert_eq!(nu_factorial(10, 3), 4);
        assert_eq!(nu_factorial(5, 7), 0);
        for p in [3, 11, 101] {
            assert_eq!(nu_factorial(p, p), 1);
        }
    }

    #[test]
    fn lucas_binomial_examples() {
        assert_eq!(binom_mod_lucas(10, 4, 3).value(), 0);
        assert_eq!(binom_mod_lucas(7, 2, 5).value(), 1);
        assert_eq!(binom_mod_lucas(123, 0, 13).value(), 1);
    }

    #[test]
    fn prime_power_checks() {
        let pp = PrimePower::new(3, 2).unwrap();
        assert_eq!(pp.q(), 9);
        assert_eq!(pp.q_mod4(), 1);
        assert_eq!(pp.symbol(5), 1);
        assert_eq!(PrimePower::new(2, 1), Err(ModError::EvenPrime));
        assert_eq!(PrimePower::new(9, 1), Err(ModError::NotPrime(9)));
        assert!(PrimePower::new(3, 40).is_err());
        assert_eq!(PrimePower::new_allow_two(2, 3).unwrap().q(), 8);
    }

    #[test]
    fn residue_ops() {
        let m = 13;
        let x = Residue::new(-3, m);
        assert_eq!(x.value(), 10);
        assert_eq!(x.signed(), -3);
        assert_eq!((x * x.inv().unwrap()).value(), 1);
        assert_eq!((x + Residue::new(3, m)).value(), 0);
        assert_eq!((-x).value(), 3);
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn residue_mixed_moduli_panics() {
        let _ = Residue::new(1, 5) + Residue::new(1, 7);
    }
}
