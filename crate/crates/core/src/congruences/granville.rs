//! Squares of Fermat-type quotients against sums of `x^k/k^2`, over the
//! integers and over `Z[ω]/(ω^2 - Aω + B, p)`.

use crate::lucas::{LucasParams, LucasTerms, Sequence};
use crate::modmath::{self, powmod, Residue};
use crate::quadring::{QuadElem, QuadRing};

use super::support::{int, inverse_squares, v_mod};
use super::{CongruenceError, Ctx, Sides, Value};

pub fn thm2(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let p = ctx.p();
    let inv_sq = inverse_squares(p);
    let lhs = LucasTerms::v(&LucasParams::FIBONACCI, p)
        .zip(&inv_sq)
        .skip(1)
        .map(|(l, &w)| l * w)
        .fold(Residue::zero(p), |acc, t| acc + t);
    Ok((int(lhs), Value::int(0)))
}

/// `sum_{k=1}^{p-1} c^k / k^2 mod p`.
fn power_over_square_sum(c: Residue, inv_sq: &[Residue]) -> Residue {
    let p = c.modulus();
    let mut power = Residue::one(p);
    let mut acc = Residue::zero(p);
    for w in &inv_sq[1..] {
        power *= c;
        acc += power * *w;
    }
    acc
}

/// `sum_{k=1}^{p-1} (c·x)^k / (d^k k^2)` in the ring.
fn ring_power_sum(x: QuadElem, ratio: Residue, inv_sq: &[Residue]) -> QuadElem {
    let ring = *x.ring();
    let step = x.scale(ratio);
    let mut power = ring.one();
    let mut acc = ring.zero();
    for w in &inv_sq[1..] {
        power = power * step;
        acc = acc + power.scale(*w);
    }
    acc
}

/// `((v_p(A,B) - A^p)/p)^2 mod p`, via residues mod p^2.
fn lucas_quotient_square(ctx: &Ctx, params: LucasParams) -> Result<Residue, CongruenceError> {
    let m = ctx.pk(2);
    let vp = v_mod(params, ctx.p(), m);
    let ap = powmod(params.a() as i128, ctx.p(), m);
    let quotient = ctx.quotient_by_p(vp - ap, 1)?;
    Ok(quotient * quotient)
}

pub fn l31(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let p = ctx.p();
    let x = ctx.extra[0] as i128;
    let m = ctx.pk(2);
    let numer = powmod(x, p, m) + powmod(1 - x, p, m) - Residue::one(m);
    let quotient = ctx.quotient_by_p(numer, 1)?;
    let lhs = quotient * quotient;

    let inv_sq = inverse_squares(p);
    let xr = Residue::new(x, p);
    let first = power_over_square_sum(Residue::one(p) - xr, &inv_sq);
    let second = power_over_square_sum(Residue::one(p) - xr.inv()?, &inv_sq);
    let minus_two = Residue::new(-2, p);
    let rhs = minus_two * first + minus_two * xr.pow(2 * p) * second;
    Ok((int(lhs), int(rhs)))
}

fn params_of(ctx: &Ctx) -> LucasParams {
    LucasParams::new(ctx.extra[0], ctx.extra[1])
}

fn embed(r: Residue) -> Value {
    Value::Quad(r.value(), 0)
}

fn quad(x: QuadElem) -> Value {
    let (a, b) = x.coords();
    Value::Quad(a, b)
}

struct RingParts {
    ring: QuadRing,
    alpha: QuadElem,
    beta: QuadElem,
    a: Residue,
    b: Residue,
    inv_sq: Vec<Residue>,
}

impl RingParts {
    fn new(ctx: &Ctx, params: LucasParams) -> Self {
        let p = ctx.p();
        let ring = QuadRing::new(params, p);
        let (alpha, beta) = ring.roots();
        RingParts {
            ring,
            alpha,
            beta,
            a: Residue::new(params.a() as i128, p),
            b: Residue::new(params.b() as i128, p),
            inv_sq: inverse_squares(p),
        }
    }
}

/// `-2A^2 sum α^k/(A^k k^2) - 2β^{2p} sum α^{2k}/((-B)^k k^2)`.
fn p31a_rhs(ctx: &Ctx, parts: &RingParts) -> Result<QuadElem, CongruenceError> {
    let p = ctx.p();
    let RingParts {
        alpha, beta, a, b, ..
    } = parts;
    let s1 = ring_power_sum(*alpha, a.inv()?, &parts.inv_sq);
    let s2 = ring_power_sum(*alpha * *alpha, (-*b).inv()?, &parts.inv_sq);
    let minus_two = Residue::new(-2, p);
    Ok(s1.scale(minus_two * *a * *a) + (beta.qpow(2 * p) * s2).scale(minus_two))
}

/// `-2Aα^p sum α^k/(A^k k^2) - 2β^{2p} sum A^k α^k/(B^k k^2)`.
fn p31b_rhs(ctx: &Ctx, parts: &RingParts) -> Result<QuadElem, CongruenceError> {
    let p = ctx.p();
    let RingParts {
        alpha, beta, a, b, ..
    } = parts;
    let s1 = ring_power_sum(*alpha, a.inv()?, &parts.inv_sq);
    let s3 = ring_power_sum(*alpha, *a * b.inv()?, &parts.inv_sq);
    let minus_two = Residue::new(-2, p);
    Ok((alpha.qpow(p) * s1).scale(minus_two * *a) + (beta.qpow(2 * p) * s3).scale(minus_two))
}

pub fn p31a(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let params = params_of(ctx);
    let lhs = lucas_quotient_square(ctx, params)?;
    let parts = RingParts::new(ctx, params);
    Ok((embed(lhs), quad(p31a_rhs(ctx, &parts)?)))
}

pub fn p31b(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let params = params_of(ctx);
    let lhs = lucas_quotient_square(ctx, params)?;
    let parts = RingParts::new(ctx, params);
    Ok((embed(lhs), quad(p31b_rhs(ctx, &parts)?)))
}

/// `((L_p - 1)/p)^2 mod p`, from the Lucas numbers directly.
fn lucas_number_quotient_square(ctx: &Ctx) -> Result<Residue, CongruenceError> {
    let m = ctx.pk(2);
    let lp = crate::lucas::named_sequence_mod(Sequence::Luc, ctx.p(), m);
    let quotient = ctx.quotient_by_p(lp - Residue::one(m), 1)?;
    Ok(quotient * quotient)
}

pub fn e34(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let parts = RingParts::new(ctx, LucasParams::FIBONACCI);
    let (alpha, beta) = (parts.alpha, parts.beta);
    let one = Residue::one(ctx.p());
    let s1 = ring_power_sum(alpha, one, &parts.inv_sq);
    let s2 = ring_power_sum(alpha * alpha, one, &parts.inv_sq);
    let minus_two = Residue::new(-2, ctx.p());
    let rhs = s1.scale(minus_two) + (beta.qpow(2 * ctx.p()) * s2).scale(minus_two);
    Ok((embed(lucas_number_quotient_square(ctx)?), quad(rhs)))
}

pub fn e35(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let p = ctx.p();
    let parts = RingParts::new(ctx, LucasParams::FIBONACCI);
    let (alpha, beta) = (parts.alpha, parts.beta);
    let one = Residue::one(p);
    let s1 = ring_power_sum(alpha, one, &parts.inv_sq);
    let s_neg = ring_power_sum(-alpha, one, &parts.inv_sq);
    let minus_two = Residue::new(-2, p);
    let rhs = (alpha.qpow(p) * s1).scale(minus_two) + (beta.qpow(2 * p) * s_neg).scale(minus_two);
    Ok((embed(lucas_number_quotient_square(ctx)?), quad(rhs)))
}

pub fn e36(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let p = ctx.p();
    let parts = RingParts::new(ctx, LucasParams::FIBONACCI);
    let RingParts {
        ring, alpha, beta, ..
    } = parts;
    let one = Residue::one(p);
    let s1 = ring_power_sum(alpha, one, &parts.inv_sq);
    let s_neg = ring_power_sum(-alpha, one, &parts.inv_sq);
    let alpha_p = alpha.qpow(p);
    let beta_2p = beta.qpow(2 * p);
    let c1 = (ring.one() + (ring.one() + alpha_p) * beta_2p.scale(Residue::new(2, p)))
        .scale(Residue::new(-2, p));
    let c2 = ((ring.one() - alpha_p) * beta_2p).scale(Residue::new(-4, p));
    let rhs = c1 * s1 + c2 * s_neg;
    Ok((embed(lucas_number_quotient_square(ctx)?), quad(rhs)))
}

pub fn e37(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let p = ctx.p();
    let parts = RingParts::new(ctx, LucasParams::FIBONACCI);
    let RingParts { ring, beta, .. } = parts;
    let square = ring.scalar(lucas_number_quotient_square(ctx)?);
    let lhs = (beta.qpow(p).scale(Residue::new(2, p)) - ring.one()) * square;
    let rhs = ring_power_sum(beta, Residue::one(p), &parts.inv_sq).scale(Residue::new(-10, p));
    Ok((quad(lhs), quad(rhs)))
}

pub fn e38(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let p = ctx.p();
    let inv_sq = inverse_squares(p);
    let lhs = LucasTerms::u(&LucasParams::FIBONACCI, p)
        .zip(&inv_sq)
        .skip(1)
        .map(|(f, &w)| f * w)
        .fold(Residue::zero(p), |acc, t| acc + t);
    let eps = modmath::jacobi(p as i128, 5)?;
    let rhs =
        -modmath::invmod(5, p)? * Residue::new(eps as i128, p) * lucas_number_quotient_square(ctx)?;
    Ok((int(lhs), int(rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruences::{evaluate, CongruenceId};

    #[test]
    fn thm2_at_seven_by_hand() {
        // 1 + 3/4 + 4/9 + 7/16 + 11/25 + 18/36 = 91 = 0 (mod 7) termwise
        let r = evaluate(CongruenceId::THM2, 7, 1, &[]).unwrap();
        assert_eq!(r.lhs, Value::int(0));
    }

    #[test]
    fn p31_rows_hold_on_a_reducible_polynomial() {
        // A=3, B=2 has integer roots 1 and 2
        for p in [5u64, 7, 11, 13] {
            for id in [CongruenceId::P31A, CongruenceId::P31B] {
                assert!(evaluate(id, p, 1, &[3, 2]).unwrap().holds, "{id} p={p}");
            }
        }
    }

    #[test]
    fn p31_fails_at_three() {
        let r = evaluate(CongruenceId::P31A, 3, 1, &[1, -1]);
        assert!(r.is_err(), "p = 3 is outside the domain");
    }
}
