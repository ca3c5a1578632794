use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Field, FqCtx, FqElem};

/// Truncated Laurent series `Σ_{k ≥ lo} a_k T^k + O(T^prec)` over `F_q`.
///
/// Coefficients are stored from `T^lo`; the first stored coefficient is
/// nonzero unless the series is indistinguishable from zero, in which case
/// `coeffs` is empty and `lo == prec`.
#[derive(Clone, PartialEq)]
pub struct TSeries {
    ctx: FqCtx,
    lo: i64,
    coeffs: Vec<FqElem>,
    prec: i64,
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TSeries(lo={}, {:?}, O(T^{}))", self.lo, self.coeffs, self.prec)
    }
}

impl TSeries {
    pub fn new(ctx: FqCtx, lo: i64, mut coeffs: Vec<FqElem>, prec: i64) -> Self {
        let keep = (prec - lo).max(0) as usize;
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !ctx.is_zero(c));
        match lead {
            None => TSeries::zero(ctx, prec),
            Some(s) => {
                coeffs.drain(..s);
                while coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
                    coeffs.pop();
                }
                TSeries {
                    ctx,
                    lo: lo + s as i64,
                    coeffs,
                    prec,
                }
            }
        }
    }

    /// `O(T^prec)`.
    pub fn zero(ctx: FqCtx, prec: i64) -> Self {
        TSeries {
            ctx,
            lo: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    /// `a T^e + O(T^prec)`.
    pub fn monomial(ctx: FqCtx, a: FqElem, e: i64, prec: i64) -> Self {
        TSeries::new(ctx, e, vec![a], prec)
    }

    /// Series from `(exponent, coefficient)` terms; terms at or beyond
    /// `prec` are dropped.
    pub fn from_terms(ctx: FqCtx, terms: &[(i64, FqElem)], prec: i64) -> Self {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return TSeries::zero(ctx, prec);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![ctx.zero(); (hi - lo + 1) as usize];
        for (e, a) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = ctx.add(slot, a);
        }
        TSeries::new(ctx, lo, coeffs, prec)
    }

    pub fn ctx(&self) -> &FqCtx {
        &self.ctx
    }

    /// Lowest stored exponent; equals `prec` for a zero series.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// `T`-order, or `None` when the series is zero to its precision.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.lo)
    }

    /// Known lower bound on the order: the order, or the precision when zero.
    pub fn order_bound(&self) -> i64 {
        self.lo
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<FqElem> {
        self.coeffs.first().copied()
    }

    /// Coefficient of `T^k` for `k < prec`.
    pub fn coeff(&self, k: i64) -> FqElem {
        debug_assert!(k < self.prec, "coefficient T^{k} beyond precision {}", self.prec);
        if k < self.lo || k >= self.lo + self.coeffs.len() as i64 {
            self.ctx.zero()
        } else {
            self.coeffs[(k - self.lo) as usize]
        }
    }

    pub fn truncate(&self, prec: i64) -> Self {
        TSeries::new(self.ctx.clone(), self.lo, self.coeffs.clone(), prec.min(self.prec))
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        TSeries {
            ctx: self.ctx.clone(),
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    pub fn scale(&self, a: &FqElem) -> Self {
        let c = self.coeffs.iter().map(|x| self.ctx.mul(x, a)).collect();
        TSeries::new(self.ctx.clone(), self.lo, c, self.prec)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|x| self.ctx.neg(x)).collect();
        TSeries::new(self.ctx.clone(), self.lo, c, self.prec)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let ctx = &self.ctx;
        let prec = self.prec.min(other.prec);
        let lo = self.lo.min(other.lo).min(prec);
        let hi = (self.lo + self.coeffs.len() as i64)
            .max(other.lo + other.coeffs.len() as i64)
            .min(prec);
        let mut c = vec![ctx.zero(); (hi - lo).max(0) as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            let e = self.lo + i as i64;
            if e < prec {
                c[(e - lo) as usize] = *x;
            }
        }
        for (i, y) in other.coeffs.iter().enumerate() {
            let e = other.lo + i as i64;
            if e < prec {
                let slot = &mut c[(e - lo) as usize];
                *slot = if negate { ctx.sub(slot, y) } else { ctx.add(slot, y) };
            }
        }
        TSeries::new(ctx.clone(), lo, c, prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ctx = &self.ctx;
        let prec = (self.prec + other.lo).min(other.prec + self.lo);
        let lo = self.lo + other.lo;
        if self.is_zero() || other.is_zero() {
            return TSeries::zero(ctx.clone(), prec);
        }
        let len = ((prec - lo).max(0) as usize)
            .min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut c = vec![ctx.zero(); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if ctx.is_zero(x) {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(len - i) {
                c[i + j] = ctx.add(&c[i + j], &ctx.mul(x, y));
            }
        }
        TSeries::new(ctx.clone(), lo, c, prec)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TSeries::monomial(self.ctx.clone(), self.ctx.one(), 0, i64::MAX / 4);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse of a series with a known leading term.
    pub fn inv(&self) -> Result<Self> {
        let ctx = &self.ctx;
        let Some(lc) = self.leading_coeff() else {
            return Err(Error::PrecisionInsufficient(
                "cannot invert a series that is zero to its precision".into(),
            ));
        };
        let rel = (self.prec - self.lo) as usize;
        let lc_inv = ctx.inv(&lc).ok_or(Error::NotInvertible)?;
        let mut g = vec![ctx.zero(); rel];
        g[0] = lc_inv;
        for k in 1..rel {
            let mut s = ctx.zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                s = ctx.add(&s, &ctx.mul(&self.coeffs[i], &g[k - i]));
            }
            g[k] = ctx.neg(&ctx.mul(&s, &lc_inv));
        }
        Ok(TSeries::new(ctx.clone(), -self.lo, g, -self.lo + rel as i64))
    }

    /// The automorphism `T ↦ λ T`: the coefficient of `T^k` is scaled by `λ^k`.
    pub fn substitute_scaled(&self, lambda: &FqElem) -> Self {
        let ctx = &self.ctx;
        let inv = ctx.inv(lambda).expect("nonzero scaling");
        let base = if self.lo >= 0 { *lambda } else { inv };
        let mut pw = ctx.pow(&base, self.lo.unsigned_abs());
        let mut c = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            c.push(ctx.mul(x, &pw));
            pw = ctx.mul(&pw, lambda);
        }
        TSeries::new(ctx.clone(), self.lo, c, self.prec)
    }

    /// Agreement of all coefficients below `min(prec)`.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// `g` with `g^d = u` and `g_0 = root_of_lc`, for `u` of order 0.
///
/// With `g_0 … g_(k−1)` known, `[T^k] g^d = d g_0^(d−1) g_k + R_d(k)` where
/// `R_j(k) = g_0 R_(j−1)(k) + Σ_{i=1}^{k−1} g_i [T^(k−i)] g^(j−1)` and
/// `R_1(k) = 0`; this is solvable since `p ∤ d`.
pub fn dth_root_unit(u: &TSeries, d: u64, root_of_lc: &FqElem) -> Result<TSeries> {
    let ctx = u.ctx();
    if u.order() != Some(0) {
        return Err(Error::InvalidParameter(format!(
            "expected a series of order 0, got order {:?}",
            u.order()
        )));
    }
    if ctx.pow(root_of_lc, d) != u.coeffs()[0] {
        return Err(Error::NoRoot(format!(
            "{:?}^{d} is not the leading coefficient {:?}",
            root_of_lc,
            u.coeffs()[0]
        )));
    }
    let dd = d as usize;
    let rel = u.prec() as usize;
    let g0 = *root_of_lc;
    let d_elem = ctx.from_i64(d as i64);
    let denom = ctx.mul(&d_elem, &ctx.pow(&g0, d - 1));
    let denom_inv = ctx.inv(&denom).ok_or(Error::WildCharacteristic {
        p: ctx.p(),
        d,
    })?;
    // pw[j][t] = [T^t] g^j for j = 0..=d
    let mut pw: Vec<Vec<FqElem>> = vec![Vec::with_capacity(rel); dd + 1];
    let mut g0_pows = vec![ctx.one()];
    for j in 1..=dd {
        g0_pows.push(ctx.mul(&g0_pows[j - 1], &g0));
    }
    for (j, row) in pw.iter_mut().enumerate() {
        row.push(g0_pows[j]);
    }
    let mut g = vec![g0];
    for k in 1..rel {
        let mut r = vec![ctx.zero(); dd + 1];
        for j in 2..=dd {
            let mut s = ctx.mul(&g0, &r[j - 1]);
            for i in 1..k {
                s = ctx.add(&s, &ctx.mul(&g[i], &pw[j - 1][k - i]));
            }
            r[j] = s;
        }
        let gk = ctx.mul(&ctx.sub(&u.coeff(k as i64), &r[dd]), &denom_inv);
        g.push(gk);
        pw[0].push(ctx.zero());
        for j in 1..=dd {
            let jj = ctx.from_i64(j as i64);
            let fill = ctx.add(&r[j], &ctx.mul(&jj, &ctx.mul(&g0_pows[j - 1], &gk)));
            pw[j].push(fill);
        }
    }
    Ok(TSeries::new(ctx.clone(), 0, g, rel as i64))
}

/// [`dth_root_unit`] with the root of the leading coefficient found by search.
pub fn dth_root_auto(u: &TSeries, d: u64) -> Result<TSeries> {
    let ctx = u.ctx();
    let lc = u
        .leading_coeff()
        .ok_or_else(|| Error::PrecisionInsufficient("zero series has no unit part".into()))?;
    let root = ctx
        .elements()
        .find(|a| ctx.pow(a, d) == lc)
        .ok_or_else(|| Error::NoRoot(format!("{lc:?} has no {d}-th root in F_{}", ctx.q())))?;
    dth_root_unit(u, d, &root)
}
