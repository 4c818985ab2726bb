use crate::modmath::PrimePower;

use super::{background, central, exact, fibonacci, granville};
use super::{CongruenceError, CongruenceId, Ctx, Sides};

/// Exponent `k` of the modulus `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusExponent {
    Fixed(u32),
    /// `p^a`
    A,
    /// `p^(a+1)`
    APlusOne,
    /// Exact integer comparison.
    Exact,
}

impl ModulusExponent {
    pub fn exponent(self, a: u32) -> u32 {
        match self {
            ModulusExponent::Fixed(k) => k,
            ModulusExponent::A => a,
            ModulusExponent::APlusOne => a + 1,
            ModulusExponent::Exact => 0,
        }
    }
}

/// Optional integer arguments a row takes beyond `(p, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraKind {
    None,
    /// `[x]`
    X,
    /// `[A, B]`
    AB,
    /// `[l]` with `k + l = p^a`
    L,
}

impl ExtraKind {
    pub fn arity(self) -> usize {
        match self {
            ExtraKind::None => 0,
            ExtraKind::X | ExtraKind::L => 1,
            ExtraKind::AB => 2,
        }
    }
}

type Eligibility = fn(&PrimePower, &[i64]) -> Result<(), String>;
type Evaluator = fn(&Ctx) -> Result<Sides, CongruenceError>;

pub struct RegistryRow {
    pub id: CongruenceId,
    pub name: &'static str,
    pub statement: &'static str,
    pub modulus_exponent: ModulusExponent,
    pub extra: ExtraKind,
    /// Human-readable parameter domain.
    pub domain: &'static str,
    /// The left side sums `p^(a-1)/k`-type terms, which can shed up to
    /// `a - 1` digits; the working precision gets `a - 1` extra digits.
    pub sheds_valuation: bool,
    /// Some side divides an integer by `p`, so it is computed mod `p^(k+1)`.
    pub divides_by_p: bool,
    pub(crate) eligible: Eligibility,
    pub(crate) eval: Evaluator,
}

impl RegistryRow {
    /// Working p-adic precision `N` for exponent `a`.
    pub fn precision(&self, a: u32) -> u32 {
        let k = self.modulus_exponent.exponent(a).max(1);
        let mut n = k;
        if self.sheds_valuation {
            n += a - 1;
        }
        if self.divides_by_p {
            n = n.max(k + 1);
        }
        n
    }

    pub(crate) fn check_extra(&self, extra: &[i64]) -> Result<(), String> {
        if extra.len() != self.extra.arity() {
            return Err(format!(
                "expected {} extra argument(s), got {}",
                self.extra.arity(),
                extra.len()
            ));
        }
        Ok(())
    }
}

impl std::fmt::Debug for RegistryRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RegistryRow")
            .field("id", &self.id)
            .field("statement", &self.statement)
            .field("modulus_exponent", &self.modulus_exponent)
            .field("domain", &self.domain)
            .finish()
    }
}

pub fn row(id: CongruenceId) -> &'static RegistryRow {
    REGISTRY
        .iter()
        .find(|r| r.id == id)
        .expect("every id has a registry row")
}

fn ok_if(cond: bool, reason: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(reason.to_string())
    }
}

fn any(_: &PrimePower, _: &[i64]) -> Result<(), String> {
    Ok(())
}

fn one_mod_four_or_higher_power(pp: &PrimePower, _: &[i64]) -> Result<(), String> {
    ok_if(
        pp.p() % 4 == 1 || pp.a() > 1,
        "needs p = 1 (mod 4) or a > 1",
    )
}

fn not_five(pp: &PrimePower, _: &[i64]) -> Result<(), String> {
    ok_if(pp.p() != 5, "needs p != 5")
}

fn prime_above(pp: &PrimePower, bound: u64) -> Result<(), String> {
    ok_if(pp.a() == 1, "defined for a = 1 only")?;
    ok_if(pp.p() > bound, &format!("needs p > {bound}"))
}

fn prime_above_five(pp: &PrimePower, _: &[i64]) -> Result<(), String> {
    prime_above(pp, 5)
}

fn prime_above_three(pp: &PrimePower, _: &[i64]) -> Result<(), String> {
    prime_above(pp, 3)
}

fn divides(p: u64, x: i128) -> bool {
    x.rem_euclid(p as i128) == 0
}

fn x_unit_not_one(pp: &PrimePower, extra: &[i64]) -> Result<(), String> {
    let x = extra[0] as i128;
    ok_if(!divides(pp.p(), x * (x - 1)), "needs p not dividing x(x-1)")
}

fn l31_domain(pp: &PrimePower, extra: &[i64]) -> Result<(), String> {
    prime_above(pp, 3)?;
    x_unit_not_one(pp, extra)
}

fn p31_domain(pp: &PrimePower, extra: &[i64]) -> Result<(), String> {
    prime_above(pp, 3)?;
    let (a, b) = (extra[0] as i128, extra[1] as i128);
    ok_if(!divides(pp.p(), a * b), "needs p not dividing AB")
}

fn l41_domain(pp: &PrimePower, extra: &[i64]) -> Result<(), String> {
    x_unit_not_one(pp, extra)
}

fn cb2_domain(pp: &PrimePower, extra: &[i64]) -> Result<(), String> {
    let l = extra[0];
    ok_if(l > 0 && 2 * (l as u64) < pp.q(), "needs 0 < l < p^a/2")
}

fn nu1_domain(pp: &PrimePower, _: &[i64]) -> Result<(), String> {
    ok_if(
        pp.q() % 4 == 3 && pp.a() > 1,
        "needs p^a = 3 (mod 4) and a > 1",
    )
}

fn e45_domain(pp: &PrimePower, _: &[i64]) -> Result<(), String> {
    ok_if(pp.p() != 5, "needs p != 5")?;
    ok_if(
        pp.q() <= exact::E45_Q_CAP,
        &format!("exact evaluation capped at p^a <= {}", exact::E45_Q_CAP),
    )
}

fn b_unit_symbol_nonzero(pp: &PrimePower, extra: &[i64]) -> Result<(), String> {
    let (a, b) = (extra[0] as i128, extra[1] as i128);
    ok_if(
        !divides(pp.p(), b * (a * a - 4 * b)),
        "needs p not dividing B(A^2 - 4B)",
    )
}

use ExtraKind as X;
use ModulusExponent as M;

pub static REGISTRY: &[RegistryRow] = &[
    RegistryRow {
        id: CongruenceId::THM1,
        name: "THM1",
        statement: "sum_{k=0}^{floor(3q/4)} C(-1/2,k) = (2/q)  (q = p^a)",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p = 1 (mod 4) or a > 1",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: one_mod_four_or_higher_power,
        eval: central::thm1,
    },
    RegistryRow {
        id: CongruenceId::THM2,
        name: "THM2",
        statement: "sum_{k=1}^{p-1} L_k/k^2 = 0",
        modulus_exponent: M::Fixed(1),
        extra: X::None,
        domain: "p > 5, a = 1",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: prime_above_five,
        eval: granville::thm2,
    },
    RegistryRow {
        id: CongruenceId::THM3,
        name: "THM3",
        statement: "sum_{k=0}^{q-1} (-1)^k C(2k,k) = (q/5)(1 - 2F_{q-(q/5)})",
        modulus_exponent: M::Fixed(3),
        extra: X::None,
        domain: "p != 2, 5",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: not_five,
        eval: fibonacci::thm3,
    },
    RegistryRow {
        id: CongruenceId::S1SUM,
        name: "S1SUM",
        statement: "sum_{k=0}^{q-1} C(2k,k)/(-4)^k = (2/q) + u_{q-(2/q)}(-6,1)",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p odd",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: any,
        eval: central::s1sum,
    },
    RegistryRow {
        id: CongruenceId::E23,
        name: "E23",
        statement: "sum_{k=(3q+d)/4}^{q-1} C(2k,k)/(-4)^k = u_{q-(2/q)}(-6,1)  (q = d mod 4)",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p = 1 (mod 4) or a > 1",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: one_mod_four_or_higher_power,
        eval: central::e23,
    },
    RegistryRow {
        id: CongruenceId::E24,
        name: "E24",
        statement: "q sum_{k=0}^{(q-d)/4-1} 1/C((q-3)/2,k) = -u_{q-(2/q)}(-6,1)",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p = 1 (mod 4) or a > 1",
        sheds_valuation: true,
        divides_by_p: false,
        eligible: one_mod_four_or_higher_power,
        eval: central::e24,
    },
    RegistryRow {
        id: CongruenceId::L21,
        name: "L21",
        statement: "P_{q-(2/q)} Q_{q-(2/q)} = (2/q)(Q_q - 2)/2",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p odd",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: any,
        eval: central::l21,
    },
    RegistryRow {
        id: CongruenceId::L22,
        name: "L22",
        statement: "q sum_{0<=k<floor(q/4)} 1/C((q-3)/2,k) = (2/q)(Q_q - 2)/4",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p = 1 (mod 4) or a > 1",
        sheds_valuation: true,
        divides_by_p: false,
        eligible: one_mod_four_or_higher_power,
        eval: central::l22,
    },
    RegistryRow {
        id: CongruenceId::CB1,
        name: "CB1",
        statement: "C(2q-2, q-1) = -q",
        modulus_exponent: M::APlusOne,
        extra: X::None,
        domain: "p odd",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: any,
        eval: central::cb1,
    },
    RegistryRow {
        id: CongruenceId::CB2,
        name: "CB2",
        statement: "C(2k,k) = -2q/(l C(2l,l))  (k + l = q)",
        modulus_exponent: M::Fixed(2),
        extra: X::L,
        domain: "p odd, 0 < l < q/2",
        sheds_valuation: true,
        divides_by_p: false,
        eligible: cb2_domain,
        eval: central::cb2,
    },
    RegistryRow {
        id: CongruenceId::NU1,
        name: "NU1",
        statement: "[nu_p(C((q-3)/2, (q-3)/4)) < a-1] = 1",
        modulus_exponent: M::Exact,
        extra: X::None,
        domain: "q = 3 (mod 4), a > 1",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: nu1_domain,
        eval: central::nu1,
    },
    RegistryRow {
        id: CongruenceId::L31,
        name: "L31",
        statement: "((x^p+(1-x)^p-1)/p)^2 = -2 sum (1-x)^k/k^2 - 2x^{2p} sum (1-1/x)^k/k^2",
        modulus_exponent: M::Fixed(1),
        extra: X::X,
        domain: "p > 3, a = 1, p not dividing x(x-1)",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: l31_domain,
        eval: granville::l31,
    },
    RegistryRow {
        id: CongruenceId::P31A,
        name: "P31A",
        statement: "((v_p-A^p)/p)^2 = -2A^2 sum a^k/(A^k k^2) - 2b^{2p} sum a^{2k}/((-B)^k k^2)",
        modulus_exponent: M::Fixed(1),
        extra: X::AB,
        domain: "p > 3, a = 1, p not dividing AB",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: p31_domain,
        eval: granville::p31a,
    },
    RegistryRow {
        id: CongruenceId::P31B,
        name: "P31B",
        statement: "((v_p-A^p)/p)^2 = -2A a^p sum a^k/(A^k k^2) - 2b^{2p} sum A^k a^k/(B^k k^2)",
        modulus_exponent: M::Fixed(1),
        extra: X::AB,
        domain: "p > 3, a = 1, p not dividing AB",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: p31_domain,
        eval: granville::p31b,
    },
    RegistryRow {
        id: CongruenceId::E34,
        name: "E34",
        statement: "((L_p-1)/p)^2 = -2 sum a^k/k^2 - 2b^{2p} sum a^{2k}/k^2",
        modulus_exponent: M::Fixed(1),
        extra: X::None,
        domain: "p > 3, a = 1",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: prime_above_three,
        eval: granville::e34,
    },
    RegistryRow {
        id: CongruenceId::E35,
        name: "E35",
        statement: "((L_p-1)/p)^2 = -2a^p sum a^k/k^2 - 2b^{2p} sum (-a)^k/k^2",
        modulus_exponent: M::Fixed(1),
        extra: X::None,
        domain: "p > 3, a = 1",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: prime_above_three,
        eval: granville::e35,
    },
    RegistryRow {
        id: CongruenceId::E36,
        name: "E36",
        statement: "((L_p-1)/p)^2 = -2(1+2(1+a^p)b^{2p}) sum a^k/k^2 - 4(1-a^p)b^{2p} sum (-a)^k/k^2",
        modulus_exponent: M::Fixed(1),
        extra: X::None,
        domain: "p > 5, a = 1",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: prime_above_five,
        eval: granville::e36,
    },
    RegistryRow {
        id: CongruenceId::E37,
        name: "E37",
        statement: "(2b^p - 1)((L_p-1)/p)^2 = -10 sum b^k/k^2",
        modulus_exponent: M::Fixed(1),
        extra: X::None,
        domain: "p > 5, a = 1",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: prime_above_five,
        eval: granville::e37,
    },
    RegistryRow {
        id: CongruenceId::E38,
        name: "E38",
        statement: "sum_{k=1}^{p-1} F_k/k^2 = -(1/5)(p/5)((L_p-1)/p)^2",
        modulus_exponent: M::Fixed(1),
        extra: X::None,
        domain: "p > 5, a = 1",
        sheds_valuation: false,
        divides_by_p: true,
        eligible: prime_above_five,
        eval: granville::e38,
    },
    RegistryRow {
        id: CongruenceId::L41,
        name: "L41",
        statement: "p[p=3] + p^{a-1} sum_{k<q} (1-x)^k/k = (1-x^q-(1-x)^q)/p - p(sum_{k<p} x^k/k^2)^{p^{a-1}}",
        modulus_exponent: M::Fixed(2),
        extra: X::X,
        domain: "p odd, p not dividing x(x-1)",
        sheds_valuation: true,
        divides_by_p: true,
        eligible: l41_domain,
        eval: fibonacci::l41,
    },
    RegistryRow {
        id: CongruenceId::HARM,
        name: "HARM",
        statement: "p^{a-1} sum_{k=1}^{q-1} 1/k = -p[p=3]",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p odd",
        sheds_valuation: true,
        divides_by_p: false,
        eligible: any,
        eval: fibonacci::harm,
    },
    RegistryRow {
        id: CongruenceId::P41,
        name: "P41",
        statement: "p^{a-1} sum_{k<q} F_{2(q-k)}/k = (F_{2q}-F_q)/p + (p/10)(q/5)((L_p-1)/p)^2",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p != 2, 5",
        sheds_valuation: true,
        divides_by_p: true,
        eligible: not_five,
        eval: fibonacci::p41,
    },
    RegistryRow {
        id: CongruenceId::L42,
        name: "L42",
        statement: "(q/5)(2F_q - F_{2q}) + (L_p-1)^2/5 = 1 - 2F_{q-(q/5)}",
        modulus_exponent: M::Fixed(3),
        extra: X::None,
        domain: "p != 2, 5",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: not_five,
        eval: fibonacci::l42,
    },
    RegistryRow {
        id: CongruenceId::E44,
        name: "E44",
        statement: "(q/5)F_q - 1 = (L_q - 1)/5",
        modulus_exponent: M::Fixed(2),
        extra: X::None,
        domain: "p != 2, 5",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: not_five,
        eval: fibonacci::e44,
    },
    RegistryRow {
        id: CongruenceId::E45,
        name: "E45",
        statement: "sum_{k<q} (-1)^k C(2k,k) = sum_{k<q} (-1)^k C(2q,k) F_{2(q-k)}  (exact)",
        modulus_exponent: M::Exact,
        extra: X::None,
        domain: "p != 2, 5, q <= E45_Q_CAP",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: e45_domain,
        eval: exact::e45,
    },
    RegistryRow {
        id: CongruenceId::VP,
        name: "VP",
        statement: "v_q(A,B) = A",
        modulus_exponent: M::Fixed(1),
        extra: X::AB,
        domain: "p odd",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: any,
        eval: background::vp,
    },
    RegistryRow {
        id: CongruenceId::UP,
        name: "UP",
        statement: "D u_q(A,B) = D (D/q)  (D = A^2 - 4B)",
        modulus_exponent: M::Fixed(1),
        extra: X::AB,
        domain: "p odd",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: any,
        eval: background::up,
    },
    RegistryRow {
        id: CongruenceId::UDIV,
        name: "UDIV",
        statement: "u_{q-(D/q)}(A,B) = 0  (mod q)",
        modulus_exponent: M::A,
        extra: X::AB,
        domain: "p odd, p not dividing B(A^2 - 4B)",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: b_unit_symbol_nonzero,
        eval: background::udiv,
    },
    RegistryRow {
        id: CongruenceId::UDIVP,
        name: "UDIVP",
        statement: "u_{p^(a-1)(p-(D/p))}(A,B) = 0  (mod q)",
        modulus_exponent: M::A,
        extra: X::AB,
        domain: "p odd, p not dividing B(A^2 - 4B)",
        sheds_valuation: false,
        divides_by_p: false,
        eligible: b_unit_symbol_nonzero,
        eval: background::udivp,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_table() {
        assert_eq!(row(CongruenceId::THM1).precision(3), 2);
        assert_eq!(row(CongruenceId::HARM).precision(4), 5);
        assert_eq!(row(CongruenceId::L41).precision(1), 3);
        assert_eq!(row(CongruenceId::L41).precision(3), 4);
        assert_eq!(row(CongruenceId::CB1).precision(2), 3);
        assert_eq!(row(CongruenceId::L31).precision(1), 2);
    }

    #[test]
    fn registry_ids_are_unique_and_named() {
        for (i, r) in REGISTRY.iter().enumerate() {
            assert_eq!(format!("{:?}", r.id), r.name);
            assert!(REGISTRY[i + 1..].iter().all(|s| s.id != r.id));
        }
    }
}
