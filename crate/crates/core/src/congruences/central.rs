//! Central binomial sums against Pell and `u_n(-6, 1)` closed forms.

use crate::lucas::{LucasParams, Sequence};
use crate::modmath::{self, nu_factorial, Residue};
use crate::padic::PadicRational;
use crate::quadring::QuadRing;

use super::binomial::{binomial_padic, central_binomial_stream};
use super::support::{int, u_mod};
use super::{CongruenceError, Ctx, Sides, Value};

/// `δ ∈ {1, 3}` with `q ≡ δ (mod 4)`.
fn delta(q: u64) -> u64 {
    q % 4
}

/// `sum_{k=lo}^{hi} C(2k,k)/(-4)^k mod p^2`.
fn central_sum(ctx: &Ctx, lo: u64, hi: u64) -> Result<Residue, CongruenceError> {
    let m = ctx.pk(2);
    let w = modmath::invmod(-4, m)?;
    let mut weight = Residue::one(m);
    let mut acc = Residue::zero(m);
    for (k, c) in ctx
        .padic(central_binomial_stream(hi, ctx.p(), ctx.n))?
        .enumerate()
    {
        if k as u64 >= lo {
            acc += ctx.padic(c.to_residue(2))? * weight;
        }
        weight *= w;
    }
    Ok(acc)
}

/// `u_{q-(2/q)}(-6, 1) mod p^2`.
fn u_neg6_at_shifted_index(ctx: &Ctx) -> Residue {
    let eps = ctx.symbol(2);
    let index = if eps == 1 { ctx.q() - 1 } else { ctx.q() + 1 };
    u_mod(Sequence::UNeg6.params(), index, ctx.pk(2))
}

pub fn thm1(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let lhs = central_sum(ctx, 0, 3 * ctx.q() / 4)?;
    let rhs = ctx.residue(ctx.symbol(2) as i128, 2);
    Ok((int(lhs), int(rhs)))
}

pub fn s1sum(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let lhs = central_sum(ctx, 0, ctx.q() - 1)?;
    let rhs = ctx.residue(ctx.symbol(2) as i128, 2) + u_neg6_at_shifted_index(ctx);
    Ok((int(lhs), int(rhs)))
}

pub fn e23(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let q = ctx.q();
    let lhs = central_sum(ctx, (3 * q + delta(q)) / 4, q - 1)?;
    Ok((int(lhs), int(u_neg6_at_shifted_index(ctx))))
}

/// `q * sum_{k=0}^{count-1} 1/C((q-3)/2, k) mod p^2`.
fn reciprocal_binomial_sum(ctx: &Ctx, count: u64) -> Result<Residue, CongruenceError> {
    let (p, n, q) = (ctx.p(), ctx.n, ctx.q());
    let top = (q - 3) / 2;
    let mut binom = ctx.padic(PadicRational::from_integer(1, p, n))?;
    let mut acc = ctx.residue(0, 2);
    for k in 0..count {
        if k > 0 {
            let step = ctx.padic(PadicRational::from_fraction(
                (top - k + 1) as i128,
                k as i128,
                p,
                n,
            ))?;
            binom = ctx.padic(binom.mul(&step))?;
        }
        let term = ctx.padic(binom.inv())?.shift(ctx.a() as i64);
        acc += ctx.padic(term.to_residue(2))?;
    }
    Ok(acc)
}

pub fn e24(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let q = ctx.q();
    let lhs = reciprocal_binomial_sum(ctx, (q - delta(q)) / 4)?;
    Ok((int(lhs), int(-u_neg6_at_shifted_index(ctx))))
}

/// `Q_q mod m` as the trace of `(1 + √2)^q`, computed in the Pell ring.
fn pell_q_by_trace(q: u64, m: u64) -> Residue {
    let (alpha, _) = QuadRing::new(LucasParams::PELL, m).roots();
    alpha.qpow(q).trace()
}

pub fn l21(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let m = ctx.pk(2);
    let eps = ctx.symbol(2);
    let index = if eps == 1 { ctx.q() - 1 } else { ctx.q() + 1 };
    let pair = crate::lucas::lucas_pair_mod(&LucasParams::PELL, index, m);
    let lhs = pair.u * pair.v;
    let qq = pell_q_by_trace(ctx.q(), m);
    let rhs = ctx.residue(eps as i128, 2) * (qq - ctx.residue(2, 2)) * modmath::invmod(2, m)?;
    Ok((int(lhs), int(rhs)))
}

pub fn l22(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let m = ctx.pk(2);
    let lhs = reciprocal_binomial_sum(ctx, ctx.q() / 4)?;
    let qq = pell_q_by_trace(ctx.q(), m);
    let rhs =
        ctx.residue(ctx.symbol(2) as i128, 2) * (qq - ctx.residue(2, 2)) * modmath::invmod(4, m)?;
    Ok((int(lhs), int(rhs)))
}

pub fn cb1(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let k = ctx.a() + 1;
    let q = ctx.q();
    let c = ctx.padic(binomial_padic(2 * q - 2, q - 1, ctx.p(), ctx.n))?;
    let lhs = ctx.padic(c.to_residue(k))?;
    Ok((int(lhs), int(ctx.residue(-(q as i128), k))))
}

pub fn cb2(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let (p, n, q) = (ctx.p(), ctx.n, ctx.q());
    let l = ctx.extra[0] as u64;
    let k = q - l;
    let lhs = ctx.padic(binomial_padic(2 * k, k, p, n))?;
    let lhs = ctx.padic(lhs.to_residue(2))?;
    let denom = ctx.padic(binomial_padic(2 * l, l, p, n))?;
    let denom = ctx.padic(denom.mul(&ctx.padic(PadicRational::from_integer(l as i128, p, n))?))?;
    let numer = ctx.padic(PadicRational::from_integer(-2 * q as i128, p, n))?;
    let rhs = ctx.padic(numer.div(&denom))?;
    Ok((int(lhs), int(ctx.padic(rhs.to_residue(2))?)))
}

/// `ν_p(C(2m, m))` with `m = (q-3)/4`, by Legendre's formula.
pub fn nu1_valuation(p: u64, q: u64) -> u64 {
    let m = (q - 3) / 4;
    nu_factorial(2 * m, p) - 2 * nu_factorial(m, p)
}

pub fn nu1(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let nu = nu1_valuation(ctx.p(), ctx.q());
    let below = nu < (ctx.a() - 1) as u64;
    Ok((Value::int(below as u8), Value::int(1)))
}
