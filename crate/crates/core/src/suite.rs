//! The identity suite behind `verify-all`: independent grid cells, run in
//! parallel and reported in a fixed order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{castelnuovo_severi, preperiodic_count_bound};
use crate::dynatomic::{
    check_product_identity, check_zeta_factorization, deg_d0, deg_d1, iterates, phi,
    reduce_mod_p, FamilyParams, DEFAULT_ZETA_WORK_BUDGET,
};
use crate::error::{Error, Result};
use crate::factor::{
    canonical_factor_list, ogg_gonality_bound, points_above_infinity, reduced_char0_factors,
    refine_by_scan, scan_candidate_count, scan_divisors, subset_factor, DEFAULT_ORBIT_CAP,
    DEFAULT_SCAN_CAP,
};
use crate::lemma::{verify_factorization2, verify_simple_roots};
use crate::poly::BivarPoly;
use crate::ring::{Cyclotomic, FqCtx, Rationals};
use crate::series::verify_splitting;

/// Prime used for `Φ_n` cells too large to divide out over `ℚ`.
pub const LARGE_CELL_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub check: String,
    pub params: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub quick: bool,
    pub prec: i64,
    pub zeta_budget: u128,
    pub scan_cap: u128,
    pub orbit_cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            quick: true,
            prec: 32,
            zeta_budget: DEFAULT_ZETA_WORK_BUDGET,
            scan_cap: DEFAULT_SCAN_CAP,
            orbit_cap: DEFAULT_ORBIT_CAP,
        }
    }
}

type Cell = Box<dyn Fn() -> CheckResult + Send + Sync>;

fn cell(check: &str, params: String, f: impl Fn() -> Result<(bool, String)> + Send + Sync + 'static) -> Cell {
    let check = check.to_string();
    Box::new(move || {
        let (passed, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult {
            check: check.clone(),
            params: params.clone(),
            passed,
            detail,
        }
    })
}

/// `deg_z Φ_n = D₁(n)` and `n | D₁(n)`. Cells with `d^n > 3^7` are computed
/// over `F_p` for [`LARGE_CELL_PRIME`]; reduction keeps the degree of the
/// monic quotient.
pub fn degree_cell(d: u64, n: u64) -> Result<(bool, String)> {
    let d1 = deg_d1(d, n);
    let d0 = deg_d0(d, n);
    let (deg, field) = if (d as u128).pow(n as u32) <= 2187 {
        (phi(&FamilyParams::new(d, Rationals)?, n)?.deg_z(), "Q".to_string())
    } else {
        let ctx = FqCtx::new(LARGE_CELL_PRIME, d)?;
        (phi(&FamilyParams::new(d, ctx)?, n)?.deg_z(), format!("F_{LARGE_CELL_PRIME}"))
    };
    let deg = deg.unwrap_or(0) as u128;
    Ok((
        deg == d1 && d0 * n as u128 == d1,
        format!("deg_z={deg} D1={d1} D0={d0} over {field}"),
    ))
}

/// `Φ_n` over `ℚ` reduced mod `p` equals `Φ_n` computed over `F_q`.
pub fn reduction_cell(d: u64, n: u64, p: u64) -> Result<(bool, String)> {
    let ctx = FqCtx::new(p, d)?;
    let over_q = phi(&FamilyParams::new(d, Rationals)?, n)?;
    let direct = phi(&FamilyParams::new(d, ctx.clone())?, n)?;
    Ok((reduce_mod_p(&over_q, &ctx)? == direct, format!("q={}", ctx.q())))
}

/// Three-way agreement for `f^n − f^m` over `F_q(c)`: the orbit-union
/// factorization, the reduced characteristic-0 factors refined by scans,
/// and per-degree scans wherever the candidate count fits `scan_cap`.
pub fn factor_oracle_cell(p: u64, d: u64, n: u64, m: u64, opts: &SuiteOptions) -> Result<(bool, String)> {
    let ctx = FqCtx::new(p, d)?;
    let rep = subset_factor(&ctx, n, m, opts.prec, opts.orbit_cap)?;
    let mut refined = Vec::new();
    for f in reduced_char0_factors(&ctx, n, m)? {
        refined.extend(refine_by_scan(&ctx, &f, opts.scan_cap)?);
    }
    let subset = canonical_factor_list(&rep.polys);
    let oracle = canonical_factor_list(&refined);
    let mut ok = rep.product_ok && rep.gauss_bound_ok && subset == oracle;
    let params = FamilyParams::new(d, ctx.clone())?;
    let its = iterates(&params, n)?;
    let target = its[n as usize].sub(&its[m as usize])?;
    let mut degrees: Vec<usize> = rep.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    let mut scanned = Vec::new();
    for e in degrees {
        if scan_candidate_count(ctx.q(), d, e as u64) > opts.scan_cap {
            continue;
        }
        let scan = scan_divisors(&ctx, &target, e as u64, opts.scan_cap)?;
        let of_degree: Vec<BivarPoly<FqCtx>> =
            rep.polys.iter().filter(|f| f.deg_z() == Some(e)).cloned().collect();
        let mut a = canonical_factor_list(&scan.polys);
        let mut b = canonical_factor_list(&of_degree);
        a.dedup();
        b.dedup();
        ok &= a == b;
        scanned.push(e);
    }
    Ok((
        ok,
        format!("degrees={:?} scanned_degrees={scanned:?}", rep.degrees),
    ))
}

fn build_cells(opts: &SuiteOptions) -> Vec<Cell> {
    let quick = opts.quick;
    let mut cells: Vec<Cell> = Vec::new();

    let (pd, pn) = if quick { (3, 4) } else { (4, 6) };
    for d in 2..=pd {
        for n in 1..=pn {
            cells.push(cell("product-identity", format!("d={d} n={n}"), move || {
                Ok((check_product_identity(&FamilyParams::new(d, Rationals)?, n)?, String::new()))
            }));
        }
    }

    let dn = if quick { 4 } else { 8 };
    for d in 2..=3 {
        for n in 1..=dn {
            cells.push(cell("degree-formula", format!("d={d} n={n}"), move || degree_cell(d, n)));
        }
    }

    let zd = if quick { 3 } else { 4 };
    for d in 2..=zd {
        for m in 1..=3 {
            for n in 1..=4 {
                let budget = opts.zeta_budget;
                cells.push(cell("zeta-factorization", format!("d={d} m={m} n={n}"), move || {
                    let r = check_zeta_factorization(&FamilyParams::new(d, Cyclotomic::new(d)?)?, m, n, budget)?;
                    Ok((r.holds, format!("mode={:?}", r.mode)))
                }));
            }
        }
    }

    let lm = if quick { 3 } else { 4 };
    for d in 2..=3 {
        for m in 2..=lm {
            for n in 1..=3 {
                for j in 1..d {
                    cells.push(cell("simple-roots", format!("d={d} m={m} n={n} j={j}"), move || {
                        let r = verify_simple_roots(d, m, n, j)?;
                        Ok((r.passed(), format!("degree={} squarefree={}", r.degree, r.squarefree)))
                    }));
                }
            }
        }
    }

    for (d, m, n) in [(2, 2, 1), (2, 3, 2), (3, 2, 1)] {
        cells.push(cell("zero-fibre-quotient", format!("d={d} m={m} n={n}"), move || {
            let r = verify_factorization2(d, m, n)?;
            Ok((r.holds && r.divides_each, String::new()))
        }));
    }

    let mut fields = vec![(3u64, 2u64), (5, 2), (5, 3)];
    if !quick {
        fields.push((2, 3));
    }
    for (p, d) in fields {
        for n in 1..=3 {
            for m in 0..n.min(2) {
                let prec = opts.prec;
                cells.push(cell("splitting", format!("p={p} d={d} n={n} m={m} prec={prec}"), move || {
                    let r = verify_splitting(&FqCtx::new(p, d)?, n, m, prec)?;
                    Ok((r.passed, format!("roots={} min_residual={}", r.root_count, r.min_residual_order)))
                }));
            }
        }
    }

    for p in [3, 5] {
        for n in 1..=3 {
            for m in 0..n.min(2) {
                let o = opts.clone();
                cells.push(cell("factor-oracle", format!("p={p} d=2 n={n} m={m}"), move || {
                    factor_oracle_cell(p, 2, n, m, &o)
                }));
            }
        }
    }

    let rd = if quick { 4 } else { 5 };
    let primes: &[u64] = if quick { &[3, 5] } else { &[3, 5, 7] };
    for d in 2..=3u64 {
        for n in 1..=rd {
            for &p in primes {
                if d % p == 0 {
                    continue;
                }
                cells.push(cell("reduction", format!("d={d} n={n} p={p}"), move || reduction_cell(d, n, p)));
            }
        }
    }

    cells.push(cell("point-count", "e=54 d=2 q=3".into(), || {
        let pts = points_above_infinity(54, 2)?;
        let ogg = ogg_gonality_bound(54, 2, 3)?;
        Ok((pts == 27 && ogg == 7, format!("points={pts} ogg={ogg}")))
    }));

    cells.push(cell("castelnuovo-severi", "100 random inputs".into(), || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut ok = true;
        for _ in 0..100 {
            let (g1, g2) = (rng.gen_range(0..1000u64), rng.gen_range(0..1000u64));
            let (d1, d2) = (rng.gen_range(1..100u64), rng.gen_range(1..100u64));
            let expect = (d1 * g1 + d2 * g2 + (d1 - 1) * (d2 - 1)) as u128;
            ok &= castelnuovo_severi(g1, g2, d1, d2)? == expect;
            ok &= castelnuovo_severi(g2, g1, d2, d1)? == expect;
        }
        Ok((ok, String::new()))
    }));

    let cn = if quick { 4 } else { 6 };
    for d in 2..=3 {
        for n in 1..=cn {
            cells.push(cell("count-bound", format!("d={d} n={n}"), move || {
                let its = iterates(&FamilyParams::new(d, Rationals)?, n)?;
                let mut total: u128 = 0;
                for m in 0..n {
                    let diff = its[n as usize].sub(&its[m as usize])?;
                    total += diff.deg_z().ok_or(Error::InvalidParameter("zero difference".into()))? as u128;
                }
                Ok((total == preperiodic_count_bound(d, n)?, format!("sum={total}")))
            }));
        }
    }
    cells
}

/// Runs every cell, in parallel on the current rayon pool; the result order
/// depends only on the options.
pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckResult> {
    build_cells(opts).par_iter().map(|c| c()).collect()
}
