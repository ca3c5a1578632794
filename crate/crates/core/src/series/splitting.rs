use serde::Serialize;

use super::branch::{coded_root, forward, BranchCode};
use super::tseries::TSeries;
use crate::dynatomic::{preperiodic_poly, FamilyParams};
use crate::error::{Error, Result};
use crate::poly::{BivarPoly, UniPoly};
use crate::ring::{Field, FqCtx};

/// Working precision for roots of `f^n − f^m` so that residuals and all
/// elementary symmetric functions are known to `prec`.
pub fn working_precision(d: u64, n: u64, prec: i64) -> i64 {
    prec + (d as i64).pow(n as u32) + n as i64 * (d as i64 - 1)
}

/// The `d^n` coded roots of `f^n − f^m` at precision `prec`, in code order.
pub fn coded_roots(ctx: &FqCtx, n: u64, m: u64, prec: i64) -> Result<Vec<(BranchCode, TSeries)>> {
    let d = ctx.d();
    BranchCode::all_for_pair(d as u32, n as usize, m as usize)?
        .into_iter()
        .map(|code| {
            let r = coded_root(ctx, d, &code, prec)?;
            Ok((code, r))
        })
        .collect()
}

/// `f^k(z)` on series.
pub fn forward_iterate(z: &TSeries, d: u64, k: u64) -> TSeries {
    let mut out = z.clone();
    for _ in 0..k {
        out = forward(&out, d);
    }
    out
}

/// Image of a polynomial in `c` under `c = −T^(−d)`.
pub fn c_poly_to_series(p: &UniPoly<FqCtx>, d: u64) -> TSeries {
    let ctx = p.ring();
    let terms: Vec<_> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let a = if j % 2 == 1 { ctx.neg(a) } else { *a };
            (-(d as i64) * j as i64, a)
        })
        .collect();
    TSeries::from_terms(ctx.clone(), &terms, i64::MAX / 4)
}

/// Coefficients (constant first) of `∏ (z − r)` over the given roots.
pub fn product_of_linear(ctx: &FqCtx, roots: &[&TSeries]) -> Vec<TSeries> {
    let exact = i64::MAX / 4;
    let mut poly = vec![TSeries::monomial(ctx.clone(), ctx.one(), 0, exact)];
    for r in roots {
        let mut next = Vec::with_capacity(poly.len() + 1);
        next.push(poly[0].mul(r).neg());
        for i in 1..poly.len() {
            next.push(poly[i - 1].sub(&poly[i].mul(r)));
        }
        next.push(poly.last().unwrap().clone());
        poly = next;
    }
    poly
}

#[derive(Clone, Debug, Serialize)]
pub struct RootInfo {
    pub code: String,
    pub symbols: Vec<u32>,
    pub lo: i64,
    /// Coordinates of the coefficients of `T^lo … T^(prec−1)`.
    pub coeffs: Vec<Vec<String>>,
    pub residual_order: i64,
}

impl RootInfo {
    pub fn from_series(code: &BranchCode, r: &TSeries, prec: i64, residual_order: i64) -> Self {
        let ctx = r.ctx();
        RootInfo {
            code: code.to_string(),
            symbols: code.symbols.clone(),
            lo: r.lo(),
            coeffs: (r.lo()..prec).map(|k| ctx.to_coords(&r.coeff(k))).collect(),
            residual_order,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub d: u64,
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub prec: i64,
    pub working_prec: i64,
    pub attempts: u32,
    pub root_count: usize,
    pub expected_count: u128,
    pub orders_ok: bool,
    pub distinct: bool,
    pub min_residual_order: i64,
    pub residual_ok: bool,
    pub symmetric_ok: bool,
    pub passed: bool,
    pub roots: Vec<RootInfo>,
}

const MAX_ESCALATIONS: u32 = 4;

/// Checks that `f^n − f^m` splits into `d^n` distinct roots of T-order −1 at
/// `c = ∞`, that each root satisfies the equation to `prec − 2`, and that the
/// roots' elementary symmetric functions give back the polynomial to `prec`.
///
/// When two roots are not yet separated, the precision is doubled, up to
/// four times, before [`Error::PrecisionInsufficient`] is returned.
pub fn verify_splitting(ctx: &FqCtx, n: u64, m: u64, prec: i64) -> Result<SplittingReport> {
    if n <= m {
        return Err(Error::InvalidParameter(format!("need n > m, got n = {n}, m = {m}")));
    }
    if prec < 1 {
        return Err(Error::InvalidParameter("precision must be at least 1".into()));
    }
    let d = ctx.d();
    let params = FamilyParams::new(d, ctx.clone())?;
    let target = preperiodic_poly(&params, n, m)?;
    let mut prec_try = prec;
    for attempt in 1..=MAX_ESCALATIONS + 1 {
        let report = splitting_at(ctx, &target, n, m, prec_try, attempt)?;
        if report.distinct {
            return Ok(report);
        }
        prec_try *= 2;
    }
    Err(Error::PrecisionInsufficient(format!(
        "roots of f^{n} - f^{m} not separated at precision {}",
        prec_try / 2
    )))
}

fn splitting_at(
    ctx: &FqCtx,
    target: &BivarPoly<FqCtx>,
    n: u64,
    m: u64,
    prec: i64,
    attempts: u32,
) -> Result<SplittingReport> {
    let d = ctx.d();
    let w = working_precision(d, n, prec);
    let roots = coded_roots(ctx, n, m, w)?;

    let orders_ok = roots.iter().all(|(_, r)| r.order() == Some(-1));
    let mut distinct = true;
    for i in 0..roots.len() {
        for j in 0..i {
            if roots[i].1.truncate(prec).agrees_with(&roots[j].1.truncate(prec)) {
                distinct = false;
            }
        }
    }

    let mut infos = Vec::with_capacity(roots.len());
    let mut min_residual = i64::MAX;
    for (code, r) in &roots {
        let res = forward_iterate(r, d, n).sub(&forward_iterate(r, d, m));
        let order = if res.is_zero() { res.prec() } else { res.lo() };
        min_residual = min_residual.min(order);
        infos.push(RootInfo::from_series(code, r, prec, order));
    }

    let refs: Vec<&TSeries> = roots.iter().map(|(_, r)| r).collect();
    let sym = product_of_linear(ctx, &refs);
    let symmetric_ok = sym.len() == target.rows().len()
        && sym.iter().enumerate().all(|(i, s)| {
            let diff = s.sub(&c_poly_to_series(&target.z_coeff(i), d));
            diff.is_zero() && diff.prec() >= prec
        });

    let expected = (d as u128).pow(n as u32);
    let residual_ok = min_residual >= prec - 2;
    Ok(SplittingReport {
        d,
        p: ctx.p(),
        q: ctx.q(),
        n,
        m,
        prec,
        working_prec: w,
        attempts,
        root_count: roots.len(),
        expected_count: expected,
        orders_ok,
        distinct,
        min_residual_order: min_residual,
        residual_ok,
        symmetric_ok,
        passed: roots.len() as u128 == expected && orders_ok && distinct && residual_ok && symmetric_ok,
        roots: infos,
    })
}
