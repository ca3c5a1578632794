use std::fmt;

use serde::Serialize;

use super::tseries::{dth_root_unit, TSeries};
use crate::error::{Error, Result};
use crate::ring::{Field, FqCtx, FqElem};

/// Eventually periodic symbol sequence `s₁ s₂ ⋯` over `{0, …, d−1}`.
///
/// `symbols` holds `s₁ … s_(preperiod+period)`; later symbols repeat the
/// last `period` ones, i.e. `s_(i+period) = s_i` for `i > preperiod`. The
/// roots of `f^n − f^m` carry codes with `preperiod = m`, `period = n − m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BranchCode {
    pub preperiod: usize,
    pub period: usize,
    pub symbols: Vec<u32>,
}

impl BranchCode {
    pub fn new(preperiod: usize, period: usize, symbols: Vec<u32>) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidParameter("period must be nonempty".into()));
        }
        if symbols.len() != preperiod + period {
            return Err(Error::InvalidParameter(format!(
                "expected {} symbols, got {}",
                preperiod + period,
                symbols.len()
            )));
        }
        Ok(BranchCode {
            preperiod,
            period,
            symbols,
        })
    }

    /// Code of a root of `f^n − f^m` from its first `n` symbols.
    pub fn for_pair(n: usize, m: usize, symbols: Vec<u32>) -> Result<Self> {
        if n <= m {
            return Err(Error::InvalidParameter(format!("need n > m, got n = {n}, m = {m}")));
        }
        Self::new(m, n - m, symbols)
    }

    /// All `d^n` codes for the pair `(n, m)`, lexicographic in `s₁ s₂ ⋯ s_n`.
    pub fn all_for_pair(d: u32, n: usize, m: usize) -> Result<Vec<Self>> {
        let total = (d as u64).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut s = vec![0u32; n];
                for slot in s.iter_mut().rev() {
                    *slot = (idx % d as u64) as u32;
                    idx /= d as u64;
                }
                Self::for_pair(n, m, s)
            })
            .collect()
    }

    /// `s_i` for `i ≥ 1`.
    pub fn symbol(&self, i: usize) -> u32 {
        assert!(i >= 1);
        let len = self.symbols.len();
        let idx = if i <= len {
            i - 1
        } else {
            self.preperiod + (i - 1 - self.preperiod) % self.period
        };
        self.symbols[idx]
    }
}

impl fmt::Display for BranchCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.symbols.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "[{}({})]",
            s[..self.preperiod].join(""),
            s[self.preperiod..].join("")
        )
    }
}

/// `c = −T^(−d)` as a series.
pub fn c_series(ctx: &FqCtx, d: u64, prec: i64) -> TSeries {
    TSeries::monomial(ctx.clone(), ctx.neg(&ctx.one()), -(d as i64), prec)
}

/// `z^d + c` on series.
pub fn forward(z: &TSeries, d: u64) -> TSeries {
    let zd = z.pow(d as u32);
    zd.add(&c_series(z.ctx(), d, zd.prec()))
}

/// The inverse branch `ω T^(−1) (1 − c^(−1) z)^(1/d)` with `ω = ζ^symbol`.
///
/// Requires `z` inside the disk, T-order `> −d`. Since `c^(−1) = −T^d`,
/// the radicand is `1 + T^d z`; the output is known to `prec(z) + d − 1`.
pub fn branch_apply(ctx: &FqCtx, d: u64, symbol: u32, z: &TSeries) -> Result<TSeries> {
    if z.order_bound() <= -(d as i64) {
        return Err(Error::DiskCondition {
            order: z.order_bound(),
            d,
        });
    }
    let one = TSeries::monomial(ctx.clone(), ctx.one(), 0, z.prec() + d as i64);
    let u = one.add(&z.shift(d as i64));
    let g = dth_root_unit(&u, d, &ctx.one())?;
    let omega = omega(ctx, symbol);
    Ok(g.scale(&omega).shift(-1))
}

/// `ζ^symbol` for the context's chosen primitive root.
pub fn omega(ctx: &FqCtx, symbol: u32) -> FqElem {
    ctx.pow(&ctx.gen_zeta(), symbol as u64)
}

/// Number of branch compositions used by [`coded_root`].
pub fn composition_count(d: u64, prec: i64, code: &BranchCode) -> usize {
    let num = (prec + 1).max(0) as u64 * d;
    let den = d - 1;
    (num.div_ceil(den)) as usize + code.symbols.len()
}

/// The root `[s₁ s₂ ⋯]`: the branches `s_k, …, s_1` applied in turn to
/// `0 + O(T^(−1))`, returned to precision `prec`.
pub fn coded_root(ctx: &FqCtx, d: u64, code: &BranchCode, prec: i64) -> Result<TSeries> {
    if prec < 1 {
        return Err(Error::InvalidParameter("precision must be at least 1".into()));
    }
    if ctx.d() != d {
        return Err(Error::MissingRootsOfUnity(d));
    }
    if code.symbols.iter().any(|&s| s as u64 >= d) {
        return Err(Error::InvalidParameter(format!("symbols must lie in 0..{d}")));
    }
    let k = composition_count(d, prec, code);
    let mut z = TSeries::zero(ctx.clone(), -1);
    for i in (1..=k).rev() {
        z = branch_apply(ctx, d, code.symbol(i), &z)?;
    }
    Ok(z.truncate(prec))
}
