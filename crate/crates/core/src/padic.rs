//! Fixed-precision p-adic rationals `p^e * u`.
//!
//! The unit `u` is stored modulo `p^N`. Multiplication and inversion keep
//! every known digit; addition can lose digits to cancellation, so each
//! value also carries how many of its `N` unit digits are actually known.

use std::fmt;

use thiserror::Error;

use crate::modmath::{self, checked_pow, mulmod, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("cancellation left no known unit digits; value is 0 mod {p}^{zero_to}")]
    PrecisionExhausted { p: u64, zero_to: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation {0} is negative; value is not a p-adic integer")]
    NegativeValuation(i64),
    #[error("value is only known mod {p}^{known}, cannot reduce mod {p}^{wanted}")]
    InsufficientPrecision { p: u64, known: i64, wanted: u32 },
    #[error("operands disagree on (p, N): ({0}, {1}) vs ({2}, {3})")]
    Mismatch(u64, u32, u64, u32),
    #[error("{p}^{n} does not fit below 2^63")]
    PrecisionOverflow { p: u64, n: u32 },
}

/// A p-adic number known to a fixed relative precision.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicRational {
    p: u64,
    n: u32,
    pn: u64,
    kind: Kind,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Zero,
    Unit {
        valuation: i64,
        unit: u64,
        // known unit digits, 1..=n
        digits: u32,
    },
}

impl PadicRational {
    pub fn zero(p: u64, n: u32) -> Result<Self, PadicError> {
        assert!(n >= 1, "precision must be positive");
        let pn = checked_pow(p, n).ok_or(PadicError::PrecisionOverflow { p, n })?;
        Ok(PadicRational {
            p,
            n,
            pn,
            kind: Kind::Zero,
        })
    }

    pub fn from_integer(z: i128, p: u64, n: u32) -> Result<Self, PadicError> {
        let zero = Self::zero(p, n)?;
        if z == 0 {
            return Ok(zero);
        }
        let mut z = z;
        let mut e = 0i64;
        while z % p as i128 == 0 {
            z /= p as i128;
            e += 1;
        }
        Ok(zero.with_unit(e, modmath::reduce(z, zero.pn), n))
    }

    /// `p^e` exactly.
    pub fn power_of_p(e: i64, p: u64, n: u32) -> Result<Self, PadicError> {
        Ok(Self::zero(p, n)?.with_unit(e, 1, n))
    }

    /// The fraction `num / den`.
    pub fn from_fraction(num: i128, den: i128, p: u64, n: u32) -> Result<Self, PadicError> {
        Self::from_integer(num, p, n)?.div(&Self::from_integer(den, p, n)?)
    }

    /// Reads an integer known only modulo `p^n` (the residue's modulus must
    /// be exactly `p^n`).
    pub fn from_residue(r: Residue, p: u64, n: u32) -> Result<Self, PadicError> {
        let zero = Self::zero(p, n)?;
        assert_eq!(r.modulus(), zero.pn, "residue modulus is not p^N");
        if r.is_zero() {
            return Ok(zero);
        }
        let mut v = r.value();
        let mut e = 0u32;
        while v.is_multiple_of(p) {
            v /= p;
            e += 1;
        }
        // only n - e digits of the cofactor are determined by r
        Ok(zero.with_unit(e as i64, v % zero.pn, n - e))
    }

    fn with_unit(self, valuation: i64, unit: u64, digits: u32) -> Self {
        debug_assert!(!unit.is_multiple_of(self.p));
        PadicRational {
            kind: Kind::Unit {
                valuation,
                unit,
                digits: digits.min(self.n),
            },
            ..self
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, Kind::Zero)
    }

    /// `None` for ZERO.
    pub fn valuation(&self) -> Option<i64> {
        match self.kind {
            Kind::Zero => None,
            Kind::Unit { valuation, .. } => Some(valuation),
        }
    }

    pub fn unit(&self) -> Option<u64> {
        match self.kind {
            Kind::Zero => None,
            Kind::Unit { unit, .. } => Some(unit),
        }
    }

    /// Number of unit digits that are known (`N` unless addition shed some).
    pub fn known_digits(&self) -> u32 {
        match self.kind {
            Kind::Zero => self.n,
            Kind::Unit { digits, .. } => digits,
        }
    }

    /// Exponent `j` such that the value is determined modulo `p^j`.
    /// `None` for exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.kind {
            Kind::Zero => None,
            Kind::Unit {
                valuation, digits, ..
            } => Some(valuation + digits as i64),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), PadicError> {
        if self.p != other.p || self.n != other.n {
            return Err(PadicError::Mismatch(self.p, self.n, other.p, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_ring(other)?;
        let (
            Kind::Unit {
                valuation: e1,
                unit: u1,
                digits: d1,
            },
            Kind::Unit {
                valuation: e2,
                unit: u2,
                digits: d2,
            },
        ) = (self.kind, other.kind)
        else {
            return Ok(if self.is_zero() { *other } else { *self });
        };
        // order so that e_lo <= e_hi
        let ((e_lo, u_lo, d_lo), (e_hi, u_hi, d_hi)) = if e1 <= e2 {
            ((e1, u1, d1), (e2, u2, d2))
        } else {
            ((e2, u2, d2), (e1, u1, d1))
        };
        // the sum is known mod p^(e_lo + digits)
        let abs = (e_lo + d_lo as i64).min(e_hi + d_hi as i64);
        let digits = (abs - e_lo) as u32;
        let shift = e_hi - e_lo;
        let sum = if shift >= self.n as i64 {
            u_lo
        } else {
            let scaled = mulmod(u_hi, self.p.pow(shift as u32), self.pn);
            modmath::addmod(u_lo, scaled, self.pn)
        };
        let modulus = self.p.pow(digits);
        let sum = sum % modulus;
        if sum == 0 {
            return Err(PadicError::PrecisionExhausted {
                p: self.p,
                zero_to: abs,
            });
        }
        let mut v = sum;
        let mut t = 0u32;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            t += 1;
        }
        Ok(self.with_unit(e_lo + t as i64, v, digits - t))
    }

    pub fn neg(&self) -> Self {
        match self.kind {
            Kind::Zero => *self,
            Kind::Unit {
                valuation,
                unit,
                digits,
            } => self.with_unit(valuation, self.pn - unit, digits),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_ring(other)?;
        match (self.kind, other.kind) {
            (
                Kind::Unit {
                    valuation: e1,
                    unit: u1,
                    digits: d1,
                },
                Kind::Unit {
                    valuation: e2,
                    unit: u2,
                    digits: d2,
                },
            ) => Ok(self.with_unit(e1 + e2, mulmod(u1, u2, self.pn), d1.min(d2))),
            _ => Ok(Self {
                kind: Kind::Zero,
                ..*self
            }),
        }
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        match self.kind {
            Kind::Zero => Err(PadicError::DivisionByZero),
            Kind::Unit {
                valuation,
                unit,
                digits,
            } => {
                let inverse =
                    modmath::invmod(unit as i128, self.pn).expect("units are coprime to p");
                Ok(self.with_unit(-valuation, inverse.value(), digits))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        self.mul(&other.inv()?)
    }

    /// Multiplies by `p^k` (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        match self.kind {
            Kind::Zero => *self,
            Kind::Unit {
                valuation,
                unit,
                digits,
            } => self.with_unit(valuation + k, unit, digits),
        }
    }

    /// `p^e * u mod p^k`.
    pub fn to_residue(&self, k: u32) -> Result<Residue, PadicError> {
        assert!(k >= 1 && k <= self.n, "target exponent must lie in 1..=N");
        let modulus = self.p.pow(k);
        match self.kind {
            Kind::Zero => Ok(Residue::zero(modulus)),
            Kind::Unit {
                valuation,
                unit,
                digits,
            } => {
                if valuation < 0 {
                    return Err(PadicError::NegativeValuation(valuation));
                }
                if valuation >= k as i64 {
                    return Ok(Residue::zero(modulus));
                }
                if valuation + (digits as i64) < k as i64 {
                    return Err(PadicError::InsufficientPrecision {
                        p: self.p,
                        known: valuation + digits as i64,
                        wanted: k,
                    });
                }
                let pe = self.p.pow(valuation as u32);
                Ok(Residue::new(
                    mulmod(pe, unit % modulus, modulus) as i128,
                    modulus,
                ))
            }
        }
    }

    /// True when both values agree modulo the coarser of their absolute
    /// precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.p != other.p || self.n != other.n {
            return false;
        }
        match (self.absolute_precision(), other.absolute_precision()) {
            (None, None) => true,
            (None, Some(_)) | (Some(_), None) => {
                let x = if self.is_zero() { other } else { self };
                // x is zero at its precision only if its valuation reaches it
                x.valuation().unwrap() >= x.absolute_precision().unwrap()
            }
            (Some(a), Some(b)) => {
                let floor = self.valuation().unwrap().min(other.valuation().unwrap());
                let top = a.min(b);
                if top <= floor {
                    return true;
                }
                // compare p^-floor * x mod p^(top - floor)
                let k = (top - floor) as u32;
                let m = self.p.pow(k);
                let digits_of = |x: &Self| {
                    let e = (x.valuation().unwrap() - floor) as u32;
                    if e >= k {
                        0
                    } else {
                        mulmod(self.p.pow(e), x.unit().unwrap() % m, m)
                    }
                };
                digits_of(self) == digits_of(other)
            }
        }
    }
}

impl fmt::Debug for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Zero => write!(f, "0 [p={}, N={}]", self.p, self.n),
            Kind::Unit {
                valuation,
                unit,
                digits,
            } => write!(
                f,
                "{}^{} * {} [N={}, known={}]",
                self.p, valuation, unit, self.n, digits
            ),
        }
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
