//! Classical facts about `u_{p^a}` and `v_{p^a}` modulo `p` and `p^a`.

use crate::lucas::{lucas_pair_mod, sign_index, LucasParams};
use crate::modmath::{self, Residue};

use super::support::int;
use super::{CongruenceError, Ctx, Sides};

fn params(ctx: &Ctx) -> LucasParams {
    LucasParams::new(ctx.extra[0], ctx.extra[1])
}

pub fn vp(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let params = params(ctx);
    let lhs = lucas_pair_mod(&params, ctx.q(), ctx.p()).v;
    Ok((int(lhs), int(Residue::new(params.a() as i128, ctx.p()))))
}

pub fn up(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let params = params(ctx);
    let p = ctx.p();
    let delta = Residue::new(params.discriminant(), p);
    let lhs = delta * lucas_pair_mod(&params, ctx.q(), p).u;
    let rhs = delta * Residue::new(ctx.symbol(params.discriminant()) as i128, p);
    Ok((int(lhs), int(rhs)))
}

pub fn udiv(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let params = params(ctx);
    let (_, index) =
        sign_index(&ctx.pp, params.discriminant()).expect("domain excludes p | discriminant");
    let q = ctx.q();
    let lhs = lucas_pair_mod(&params, index, q).u;
    Ok((int(lhs), int(Residue::zero(q))))
}

pub fn udivp(ctx: &Ctx) -> Result<Sides, CongruenceError> {
    let params = params(ctx);
    let p = ctx.p();
    let eps = modmath::jacobi(params.discriminant(), p)?;
    let index = (ctx.q() / p) * (p as i64 - eps as i64) as u64;
    let q = ctx.q();
    let lhs = lucas_pair_mod(&params, index, q).u;
    Ok((int(lhs), int(Residue::zero(q))))
}
