//! Alternating central binomial sums, harmonic-type sums and Fibonacci
//! quotients modulo `p^2` and `p^3`.

use crate::lucas::named_sequence_mod as seq;
use crate::lucas::Sequence;
use crate::modmath::{self, powmod, Residue};

use super::support::{int, inverse_squares};
use super::{CongruenceError, Ctx, Sides};

fn kronecker_three(p: u64) -> i128 {
    (p == 3) as i128
}

/// `sum_{k<q} (-1)^k C(2k,k) mod p^3`. The running
/// binomial is kept as `p^v N/D` with `N`, `D` prime to `p`, and the sum
/// as `A/D`, so only one inversion is needed.
fn alternating_central_sum(p: u64, q: u64) -> Result<Residue, CongruenceError> {
    let m = p * p * p;
    let p_powers = [1, p, p * p].map(|x| Residue::new(x as i128, m));
    let strip = |mut x: u64| {
        let mut v = 0u32;
        while x.is_multiple_of(p) {
            x /= p;
            v += 1;
        }
        (x, v)
    };
    let one = Residue::one(m);
    let (mut num, mut den, mut acc) = (one, one, one);
    let mut v = 0u32;
    for k in 1..q {
        let (top, vt) = strip(2 * (2 * k - 1));
        let (bottom, vb) = strip(k);
        v = v + vt - vb;
        num *= Residue::new(top as i128, m);
        let bottom = Residue::new(bottom as i128, m);
        den *= bottom;
        acc *= bottom;
        let Some(&pv) = p_powers.get(v as usize) else {
            continue;
        };
        let term = num * pv;
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc * den.inv()?)
}

pub fn thm3(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let q = ctx.q();
    let m = ctx.pk(3);
    let lhs = alternating_central_sum(ctx.p(), q)?;
    let eps = ctx.q_over_five();
    let index = if eps == 1 { q - 1 } else { q + 1 };
    let f = seq(Sequence::Fib, index, m);
    let rhs = Residue::new(eps as i128, m) * (Residue::one(m) - Residue::new(2, m) * f);
    Ok((int(lhs), int(rhs)))
}

pub fn harm(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let shift = ctx.a() as i64 - 1;
    let mut lhs = ctx.residue(0, 2);
    for k in 1..ctx.q() {
        lhs += ctx.scaled_reciprocal(k, shift, 2)?;
    }
    let rhs = ctx.residue(-(ctx.p() as i128) * kronecker_three(ctx.p()), 2);
    Ok((int(lhs), int(rhs)))
}

pub fn l41(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let (p, q) = (ctx.p(), ctx.q());
    let x = ctx.extra[0] as i128;
    let m2 = ctx.pk(2);
    let shift = ctx.a() as i64 - 1;

    let base = Residue::new(1 - x, m2);
    let mut power = Residue::one(m2);
    let mut lhs = Residue::new(p as i128 * kronecker_three(p), m2);
    for k in 1..q {
        power *= base;
        lhs += power * ctx.scaled_reciprocal(k, shift, 2)?;
    }

    let m3 = ctx.pk(3);
    let numer = Residue::one(m3) - powmod(x, q, m3) - powmod(1 - x, q, m3);
    let quotient = ctx.quotient_by_p(numer, 2)?;
    let inv_sq = inverse_squares(p);
    let xr = Residue::new(x, p);
    let mut xk = Residue::one(p);
    let mut g = Residue::zero(p);
    for w in &inv_sq[1..] {
        xk *= xr;
        g += xk * *w;
    }
    let g_pow = g.pow(q / p);
    let rhs = quotient - Residue::new(p as i128 * g_pow.value() as i128, m2);
    Ok((int(lhs), int(rhs)))
}

/// `((L_p - 1)/p)^2 mod p`.
fn lucas_quotient_square(ctx: &Ctx) -> Result<Residue, CongruenceError> {
    let m = ctx.pk(2);
    let lp = seq(Sequence::Luc, ctx.p(), m);
    let quotient = ctx.quotient_by_p(lp - Residue::one(m), 1)?;
    Ok(quotient * quotient)
}

pub fn p41(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let (p, q) = (ctx.p(), ctx.q());
    let m2 = ctx.pk(2);
    let shift = ctx.a() as i64 - 1;

    // F_{2j} for j = 1..q-1 via F_{2j+2} = 3F_{2j} - F_{2j-2}; term k = q - j
    let three = Residue::new(3, m2);
    let (mut prev, mut cur) = (Residue::zero(m2), Residue::one(m2));
    let mut lhs = Residue::zero(m2);
    for j in 1..q {
        lhs += cur * ctx.scaled_reciprocal(q - j, shift, 2)?;
        (prev, cur) = (cur, three * cur - prev);
    }

    let m3 = ctx.pk(3);
    let diff = seq(Sequence::Fib, 2 * q, m3) - seq(Sequence::Fib, q, m3);
    let quotient = ctx.quotient_by_p(diff, 2)?;
    let eps = ctx.q_over_five();
    let tail = modmath::invmod(10, p)? * Residue::new(eps as i128, p) * lucas_quotient_square(ctx)?;
    let rhs = quotient + Residue::new(p as i128 * tail.value() as i128, m2);
    Ok((int(lhs), int(rhs)))
}

pub fn l42(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let q = ctx.q();
    let m = ctx.pk(3);
    let eps = ctx.q_over_five();
    let fq = seq(Sequence::Fib, q, m);
    let f2q = seq(Sequence::Fib, 2 * q, m);
    let lp1 = seq(Sequence::Luc, ctx.p(), m) - Residue::one(m);
    let lhs = Residue::new(eps as i128, m) * (Residue::new(2, m) * fq - f2q)
        + lp1 * lp1 * modmath::invmod(5, m)?;
    let index = if eps == 1 { q - 1 } else { q + 1 };
    let rhs = Residue::one(m) - Residue::new(2, m) * seq(Sequence::Fib, index, m);
    Ok((int(lhs), int(rhs)))
}

pub fn e44(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let q = ctx.q();
    let m = ctx.pk(2);
    let eps = ctx.q_over_five();
    let lhs = Residue::new(eps as i128, m) * seq(Sequence::Fib, q, m) - Residue::one(m);
    let rhs = (seq(Sequence::Luc, q, m) - Residue::one(m)) * modmath::invmod(5, m)?;
    Ok((int(lhs), int(rhs)))
}
