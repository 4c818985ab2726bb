//! Small helpers shared by the evaluators.

use crate::lucas::{lucas_pair_mod, LucasParams};
use crate::modmath::{self, Residue};
use crate::padic::PadicRational;

use super::{CongruenceError, Ctx, Value};

impl Ctx<'_> {
    /// `r / p mod p^k` where `r` is given mod `p^(k+1)` and must vanish mod `p`.
    pub fn quotient_by_p(&self, r: Residue, k: u32) -> Result<Residue, CongruenceError> {
        let p = self.p();
        let x = self.padic(PadicRational::from_residue(r, p, k + 1))?;
        self.padic(x.shift(-1).to_residue(k))
    }

    /// `p^shift / k mod p^target`, a p-adic integer by the caller's choice
    /// of `shift`.
    pub fn scaled_reciprocal(
        &self,
        k: u64,
        shift: i64,
        target: u32,
    ) -> Result<Residue, CongruenceError> {
        let x = self.padic(PadicRational::from_integer(k as i128, self.p(), self.n))?;
        let x = self.padic(x.inv())?.shift(shift);
        self.padic(x.to_residue(target))
    }

    pub fn residue(&self, x: i128, k: u32) -> Residue {
        Residue::new(x, self.pk(k))
    }

    pub fn symbol(&self, top: i128) -> i8 {
        self.pp.symbol(top)
    }

    /// `(q/5)` with `q = p^a`.
    pub fn q_over_five(&self) -> i8 {
        modmath::jacobi(self.q() as i128, 5).expect("5 is odd")
    }
}

/// `u_n(A,B) mod m`.
pub fn u_mod(params: LucasParams, n: u64, m: u64) -> Residue {
    lucas_pair_mod(&params, n, m).u
}

/// `v_n(A,B) mod m`.
pub fn v_mod(params: LucasParams, n: u64, m: u64) -> Residue {
    lucas_pair_mod(&params, n, m).v
}

pub fn int(r: Residue) -> Value {
    Value::int(r.value())
}

/// `1/k^2 mod p` for `k = 1..p-1`, as a table indexed by `k`.
pub fn inverse_squares(p: u64) -> Vec<Residue> {
    let mut out = Vec::with_capacity(p as usize);
    out.push(Residue::zero(p));
    for k in 1..p {
        let inv = modmath::invmod(k as i128, p).expect("k < p is a unit");
        out.push(inv * inv);
    }
    out
}
