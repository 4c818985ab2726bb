use crate::padic::{PadicError, PadicRational};

/// `C(2k, k)` for `k = 0, 1, ..., limit` as p-adic values, built from
/// `C(2k,k) = C(2k-2,k-1) * 2(2k-1) / k` with exact valuation tracking.
pub struct CentralBinomials {
    k: u64,
    limit: u64,
    p: u64,
    n: u32,
    current: PadicRational,
}

pub fn central_binomial_stream(limit: u64, p: u64, n: u32) -> Result<CentralBinomials, PadicError> {
    Ok(CentralBinomials {
        k: 0,
        limit,
        p,
        n,
        current: PadicRational::from_integer(1, p, n)?,
    })
}

impl Iterator for CentralBinomials {
    type Item = PadicRational;

    fn next(&mut self) -> Option<PadicRational> {
        if self.k > self.limit {
            return None;
        }
        let out = self.current;
        self.k += 1;
        let k = self.k as i128;
        self.current = PadicRational::from_fraction(2 * (2 * k - 1), k, self.p, self.n)
            .and_then(|step| self.current.mul(&step))
            .expect("ring parameters fixed at construction");
        Some(out)
    }
}

/// `C(n, k)` as a p-adic value: one product for the numerator, one for the
/// denominator, a single inversion.
pub fn binomial_padic(n: u64, k: u64, p: u64, prec: u32) -> Result<PadicRational, PadicError> {
    assert!(k <= n);
    let k = k.min(n - k);
    let mut num = PadicRational::from_integer(1, p, prec)?;
    let mut den = num;
    for i in 0..k {
        num = num.mul(&PadicRational::from_integer((n - i) as i128, p, prec)?)?;
        den = den.mul(&PadicRational::from_integer((i + 1) as i128, p, prec)?)?;
    }
    num.div(&den)
}
