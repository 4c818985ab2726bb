//! The ring `Z[ω]/(ω^2 - Aω + B)` modulo `m`.
//!
//! Elements are `a + bω` on the basis `(1, ω)`. The roots of
//! `x^2 - Ax + B` are `α = ω` and `β = A - ω`, so `α + β = A` and
//! `αβ = B` hold exactly and conjugation swaps them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::lucas::LucasParams;
use crate::modmath::{addmod, mulmod, submod, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("operands live in different rings: {left} vs {right}")]
pub struct MixedRings {
    pub left: String,
    pub right: String,
}

/// The ring itself: parameters and modulus, with `A`, `B` pre-reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRing {
    params: LucasParams,
    m: u64,
    a: u64,
    b: u64,
}

impl QuadRing {
    pub fn new(params: LucasParams, m: u64) -> Self {
        let a = Residue::new(params.a() as i128, m).value();
        let b = Residue::new(params.b() as i128, m).value();
        QuadRing { params, m, a, b }
    }

    pub fn params(&self) -> LucasParams {
        self.params
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn elem(&self, a: i128, b: i128) -> QuadElem {
        QuadElem {
            a: Residue::new(a, self.m).value(),
            b: Residue::new(b, self.m).value(),
            ring: *self,
        }
    }

    pub fn scalar(&self, c: Residue) -> QuadElem {
        assert_eq!(c.modulus(), self.m, "scalar modulus differs from ring");
        QuadElem {
            a: c.value(),
            b: 0,
            ring: *self,
        }
    }

    pub fn zero(&self) -> QuadElem {
        self.elem(0, 0)
    }

    pub fn one(&self) -> QuadElem {
        self.elem(1, 0)
    }

    /// `(α, β) = (ω, A - ω)`.
    pub fn roots(&self) -> (QuadElem, QuadElem) {
        (self.elem(0, 1), self.elem(self.a as i128, -1))
    }
}

impl fmt::Display for QuadRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z[w]/(w^2-{}w+{}) mod {}",
            self.params.a(),
            self.params.b(),
            self.m
        )
    }
}

/// `roots(params, m)`.
pub fn roots(params: LucasParams, m: u64) -> (QuadElem, QuadElem) {
    QuadRing::new(params, m).roots()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: u64,
    b: u64,
    ring: QuadRing,
}

impl QuadElem {
    pub fn ring(&self) -> &QuadRing {
        &self.ring
    }

    /// Constant coordinate.
    pub fn constant(&self) -> Residue {
        Residue::new(self.a as i128, self.ring.m)
    }

    /// ω coordinate.
    pub fn omega(&self) -> Residue {
        Residue::new(self.b as i128, self.ring.m)
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    fn check(&self, other: &QuadElem) -> Result<(), MixedRings> {
        if self.ring != other.ring {
            return Err(MixedRings {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn qadd(&self, other: &QuadElem) -> Result<QuadElem, MixedRings> {
        self.check(other)?;
        let m = self.ring.m;
        Ok(QuadElem {
            a: addmod(self.a, other.a, m),
            b: addmod(self.b, other.b, m),
            ring: self.ring,
        })
    }

    pub fn qsub(&self, other: &QuadElem) -> Result<QuadElem, MixedRings> {
        self.qadd(&other.qneg())
    }

    pub fn qneg(&self) -> QuadElem {
        let m = self.ring.m;
        QuadElem {
            a: submod(0, self.a, m),
            b: submod(0, self.b, m),
            ring: self.ring,
        }
    }

    /// `(a1 + b1ω)(a2 + b2ω) = (a1a2 - B b1b2) + (a1b2 + a2b1 + A b1b2)ω`.
    pub fn qmul(&self, other: &QuadElem) -> Result<QuadElem, MixedRings> {
        self.check(other)?;
        let QuadRing {
            m, a: ca, b: cb, ..
        } = self.ring;
        let bb = mulmod(self.b, other.b, m);
        let a = submod(mulmod(self.a, other.a, m), mulmod(cb, bb, m), m);
        let b = addmod(
            addmod(mulmod(self.a, other.b, m), mulmod(other.a, self.b, m), m),
            mulmod(ca, bb, m),
            m,
        );
        Ok(QuadElem {
            a,
            b,
            ring: self.ring,
        })
    }

    pub fn scale(&self, c: Residue) -> QuadElem {
        assert_eq!(c.modulus(), self.ring.m, "scalar modulus differs from ring");
        let m = self.ring.m;
        QuadElem {
            a: mulmod(self.a, c.value(), m),
            b: mulmod(self.b, c.value(), m),
            ring: self.ring,
        }
    }

    pub fn qpow(&self, mut n: u64) -> QuadElem {
        let mut acc = self.ring.one();
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// `a + bω -> (a + bA) - bω`, mapping α to β.
    pub fn conj(&self) -> QuadElem {
        let m = self.ring.m;
        QuadElem {
            a: addmod(self.a, mulmod(self.b, self.ring.a, m), m),
            b: submod(0, self.b, m),
            ring: self.ring,
        }
    }

    /// `x * conj(x)`, which lies in the constants.
    pub fn norm(&self) -> Residue {
        let m = self.ring.m;
        let ab = mulmod(self.a, self.b, m);
        let n = addmod(
            addmod(mulmod(self.a, self.a, m), mulmod(ab, self.ring.a, m), m),
            mulmod(mulmod(self.b, self.b, m), self.ring.b, m),
            m,
        );
        Residue::new(n as i128, m)
    }

    /// `x + conj(x) = 2a + bA`.
    pub fn trace(&self) -> Residue {
        let m = self.ring.m;
        let t = addmod(addmod(self.a, self.a, m), mulmod(self.b, self.ring.a, m), m);
        Residue::new(t as i128, m)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w (mod {})", self.a, self.b, self.ring.m)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.a, self.b)
    }
}

// Operator forms panic on mixed rings; use the `q*` methods to get an error.
impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        self.qadd(&rhs).unwrap()
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        self.qsub(&rhs).unwrap()
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: QuadElem) -> QuadElem {
        self.qmul(&rhs).unwrap()
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        self.qneg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lucas::lucas_pair_mod;

    #[test]
    fn roots_examples() {
        let (alpha, beta) = roots(LucasParams::FIBONACCI, 100);
        assert_eq!(alpha.coords(), (0, 1));
        assert_eq!(beta.coords(), (1, 99));
        assert_eq!((alpha * beta).coords(), (99, 0));
        assert_eq!((alpha + beta).coords(), (1, 0));
    }

    #[test]
    fn mul_examples() {
        let ring = QuadRing::new(LucasParams::FIBONACCI, 1000);
        let w = ring.elem(0, 1);
        assert_eq!((w * w).coords(), (1, 1));
        let x = ring.elem(17, 4);
        assert_eq!(x * ring.one(), x);
        assert_eq!((ring.elem(2, 1) * ring.elem(3, 1)).coords(), (7, 6));
    }

    #[test]
    fn pow_examples() {
        let (alpha, _) = roots(LucasParams::FIBONACCI, 100);
        assert_eq!(alpha.qpow(10).coords(), (34, 55));
        assert_eq!(alpha.qpow(0).coords(), (1, 0));
        let (pell_alpha, _) = roots(LucasParams::PELL, 1000);
        assert_eq!(pell_alpha.qpow(2).coords(), (1, 2));
    }

    #[test]
    fn conj_norm_trace() {
        let params = LucasParams::new(3, -7);
        let ring = QuadRing::new(params, 10_007);
        let (alpha, beta) = ring.roots();
        assert_eq!(alpha.conj(), beta);
        assert_eq!(alpha.norm(), Residue::new(-7, 10_007));
        let x = ring.elem(123, 4567);
        assert_eq!(x.conj().conj(), x);
        for n in 0..=100 {
            let v = lucas_pair_mod(&params, n, 10_007).v;
            assert_eq!(alpha.qpow(n).trace(), v);
        }
    }

    #[test]
    fn mixed_rings_error() {
        let x = QuadRing::new(LucasParams::FIBONACCI, 7).one();
        let y = QuadRing::new(LucasParams::PELL, 7).one();
        let z = QuadRing::new(LucasParams::FIBONACCI, 11).one();
        assert!(x.qmul(&y).is_err());
        assert!(x.qadd(&z).is_err());
    }
}
