//! Exact big-integer and big-rational identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::lucas::{lucas_pair_mod, LucasParams};
use crate::modmath::{self, Residue};

use super::{CongruenceError, Ctx, Sides, Value};

/// Largest `p^a` the exact E45 row accepts.
pub const E45_Q_CAP: u64 = 2_000;
/// Largest `n` accepted by [`gould_identity_exact`].
pub const GOULD_N_CAP: u64 = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GouldError {
    #[error("x = {0} is excluded (x must not be 0 or -1)")]
    InvalidX(BigRational),
    #[error("n = {0} is outside 1..={GOULD_N_CAP}")]
    NOutOfRange(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GouldOutcome {
    pub n: u64,
    pub x: BigRational,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl GouldOutcome {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks `sum_{k=0}^n x^k/C(n,k)
///   = (n+1) (x/(1+x))^{n+1} sum_{k=1}^{n+1} (1+x^k)/(k(1+x)) ((1+x)/x)^k`
/// in exact rational arithmetic.
pub fn gould_identity_exact(n: u64, x: &BigRational) -> Result<GouldOutcome, GouldError> {
    if x.is_zero() || *x == -BigRational::one() {
        return Err(GouldError::InvalidX(x.clone()));
    }
    if n == 0 || n > GOULD_N_CAP {
        return Err(GouldError::NOutOfRange(n));
    }
    let one = BigRational::one();
    let mut lhs = BigRational::zero();
    let mut binom = BigInt::one();
    let mut power = one.clone();
    for k in 0..=n {
        if k > 0 {
            binom = binom * (n - k + 1) / k;
            power *= x;
        }
        lhs += &power / BigRational::from_integer(binom.clone());
    }

    let x1 = &one + x;
    let ratio = &x1 / x;
    let mut inner = BigRational::zero();
    let mut xk = one.clone();
    let mut rk = one.clone();
    for k in 1..=n + 1 {
        xk *= x;
        rk *= &ratio;
        let denom = BigRational::from_integer(BigInt::from(k)) * &x1;
        inner += (&one + &xk) / denom * &rk;
    }
    let outer = (x / &x1).pow(n as u32 + 1) * BigRational::from_integer(BigInt::from(n + 1));
    Ok(GouldOutcome {
        n,
        x: x.clone(),
        lhs,
        rhs: outer * inner,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E45Sides {
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Both sides of `sum_{k<q} (-1)^k C(2k,k) = sum_{k<q} (-1)^k C(2q,k) F_{2(q-k)}`
/// as exact integers.
pub fn e45_exact(q: u64) -> E45Sides {
    let mut lhs = BigInt::zero();
    let mut central = BigInt::one();
    for k in 0..q {
        if k > 0 {
            central = central * (2 * (2 * k - 1)) / k;
        }
        if k % 2 == 0 {
            lhs += &central;
        } else {
            lhs -= &central;
        }
    }

    let mut fib = Vec::with_capacity(2 * q as usize + 1);
    fib.push(BigInt::zero());
    fib.push(BigInt::one());
    for i in 2..=2 * q as usize {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    let mut rhs = BigInt::zero();
    let mut binom = BigInt::one();
    for k in 0..q {
        if k > 0 {
            binom = binom * (2 * q - k + 1) / k;
        }
        let term = &binom * &fib[(2 * (q - k)) as usize];
        if k % 2 == 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    E45Sides { lhs, rhs }
}

/// Both sides of the same identity modulo `m`, which must be a prime
/// larger than `2q`. Shares nothing with [`e45_exact`] but the formula.
pub fn e45_mod(q: u64, m: u64) -> Result<(Residue, Residue), modmath::ModError> {
    let mut lhs = Residue::zero(m);
    let mut central = Residue::one(m);
    let mut binom = Residue::one(m);
    let mut rhs = Residue::zero(m);
    for k in 0..q {
        if k > 0 {
            let inv_k = modmath::invmod(k as i128, m)?;
            central *= Residue::new((2 * (2 * k - 1)) as i128, m) * inv_k;
            binom *= Residue::new((2 * q - k + 1) as i128, m) * inv_k;
        }
        let f = lucas_pair_mod(&LucasParams::FIBONACCI, 2 * (q - k), m).u;
        if k % 2 == 0 {
            lhs += central;
            rhs += binom * f;
        } else {
            lhs -= central;
            rhs -= binom * f;
        }
    }
    Ok((lhs, rhs))
}

pub fn e45(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let E45Sides { lhs, rhs } = e45_exact(ctx.q());
    Ok((Value::Int(lhs), Value::Int(rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gould_examples() {
        let g = gould_identity_exact(1, &rat(1, 1)).unwrap();
        assert_eq!((g.lhs.clone(), g.rhs.clone()), (rat(2, 1), rat(2, 1)));
        let g = gould_identity_exact(2, &rat(1, 1)).unwrap();
        assert_eq!((g.lhs.clone(), g.rhs.clone()), (rat(5, 2), rat(5, 2)));
        let g = gould_identity_exact(2, &rat(2, 1)).unwrap();
        assert_eq!((g.lhs.clone(), g.rhs.clone()), (rat(6, 1), rat(6, 1)));
        assert!(gould_identity_exact(7, &rat(-3, 4)).unwrap().equal());
    }

    #[test]
    fn gould_rejects_excluded_points() {
        assert!(matches!(
            gould_identity_exact(3, &rat(0, 1)),
            Err(GouldError::InvalidX(_))
        ));
        assert!(matches!(
            gould_identity_exact(3, &rat(-1, 1)),
            Err(GouldError::InvalidX(_))
        ));
        assert!(gould_identity_exact(0, &rat(1, 1)).is_err());
    }

    #[test]
    fn e45_small_q() {
        // q = 3: 1 - 2 + 6 = 5 and F_6 - 6F_4 + 15F_2 = 8 - 18 + 15 = 5
        let s = e45_exact(3);
        assert_eq!(
            (s.lhs.clone(), s.rhs.clone()),
            (BigInt::from(5), BigInt::from(5))
        );
        let (l, r) = e45_mod(3, 1_000_000_007).unwrap();
        assert_eq!((l.value(), r.value()), (5, 5));
    }
}
