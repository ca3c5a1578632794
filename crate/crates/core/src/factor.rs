//! Factoring `f^n − f^m` over `F_q(c)`: local Galois orbits of the coded
//! roots, the orbit-union factorizer, the bounded-degree scan, and the
//! point counts above `c = ∞`.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynatomic::{
    phi, preperiodic_poly, reduce_cyc_mod_p, twisted_phi, compose_iterate, FamilyParams,
};
use crate::error::{Error, Result};
use crate::poly::{to_text, BivarPoly, UniPoly};
use crate::ring::{divisors, Cyclotomic, Field, FqCtx, FqElem};
use crate::series::{coded_roots, product_of_linear, working_precision, BranchCode, TSeries};

pub const DEFAULT_ORBIT_CAP: usize = 64;
pub const DEFAULT_SCAN_CAP: u128 = 10_000_000;

/// The coded roots of `f^n − f^m` and their orbits under `σ: T ↦ ζT`.
#[derive(Clone, Debug)]
pub struct LocalOrbits {
    pub codes: Vec<BranchCode>,
    pub roots: Vec<TSeries>,
    /// `sigma[i]` is the index of `σ(root_i)`.
    pub sigma: Vec<usize>,
    /// Orbits as sorted root indices, ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
}

/// Partitions the `d^n` roots into `σ`-orbits; roots are computed at
/// `prec` and matched after applying `σ` coefficientwise.
pub fn local_orbits(ctx: &FqCtx, n: u64, m: u64, prec: i64) -> Result<LocalOrbits> {
    let pairs = coded_roots(ctx, n, m, prec)?;
    let (codes, roots): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let zeta = ctx.gen_zeta();
    let mut sigma = Vec::with_capacity(roots.len());
    for (i, r) in roots.iter().enumerate() {
        let image = r.substitute_scaled(&zeta);
        let hits: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.agrees_with(&image))
            .map(|(j, _)| j)
            .collect();
        match hits.as_slice() {
            [j] => sigma.push(*j),
            _ => {
                return Err(Error::PrecisionInsufficient(format!(
                    "image of root {} matches {} roots at precision {prec}",
                    codes[i],
                    hits.len()
                )))
            }
        }
    }
    let mut seen = vec![false; roots.len()];
    let mut orbits = Vec::new();
    for start in 0..roots.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = sigma[i];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(LocalOrbits {
        codes,
        roots,
        sigma,
        orbits,
    })
}

/// Rounds the coefficients of `∏ (z − r)` to polynomials in `c`.
///
/// The coefficient of `z^(e−r)` is accepted only if it is supported on
/// `T^(−d j)`, `0 ≤ j ≤ ⌊r/d⌋`, and vanishes elsewhere up to its
/// precision, which must reach past `T^0`. `c^j` then has coefficient
/// `(−1)^j [T^(−d j)]`.
pub fn round_to_c_polys(ctx: &FqCtx, d: u64, coeffs: &[TSeries]) -> Result<Option<Vec<UniPoly<FqCtx>>>> {
    let e = coeffs.len() - 1;
    let mut out = Vec::with_capacity(coeffs.len());
    for (idx, s) in coeffs.iter().enumerate() {
        let r = (e - idx) as i64;
        if s.prec() <= 0 {
            return Err(Error::PrecisionInsufficient(format!(
                "coefficient of z^{idx} known only to T^{}",
                s.prec()
            )));
        }
        let jmax = r / d as i64;
        let mut c = Vec::new();
        for (k, a) in s.coeffs().iter().enumerate() {
            let exp = s.lo() + k as i64;
            if ctx.is_zero(a) {
                continue;
            }
            if exp > 0 || exp % d as i64 != 0 || -exp / (d as i64) > jmax {
                return Ok(None);
            }
        }
        for j in 0..=jmax.max(0) {
            let exp = -(d as i64) * j;
            if exp < s.prec() {
                let a = s.coeff(exp);
                c.push(if j % 2 == 1 { ctx.neg(&a) } else { a });
            }
        }
        out.push(UniPoly::new(ctx.clone(), c));
    }
    Ok(Some(out))
}

/// `deg_c q_r ≤ ⌊r/d⌋` for `Q = Σ q_r z^(e−r)`.
pub fn gauss_bound_ok<F: Field>(q: &BivarPoly<F>, d: u64) -> bool {
    let Some(e) = q.deg_z() else { return false };
    (0..=e).all(|i| {
        let r = (e - i) as u64;
        match q.z_coeff(i).degree() {
            None => true,
            Some(deg) => deg as u64 <= r / d,
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorEntry {
    pub degree: usize,
    pub orbits: Vec<usize>,
    pub codes: Vec<String>,
    pub points_above_infinity: u64,
    pub gauss_bound_ok: bool,
    pub poly: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub d: u64,
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub prec: i64,
    pub orbit_partition: Vec<Vec<String>>,
    pub degrees: Vec<usize>,
    pub factors: Vec<FactorEntry>,
    pub product_ok: bool,
    pub gauss_bound_ok: bool,
    pub subsets_tested: u64,
    #[serde(skip)]
    pub polys: Vec<BivarPoly<FqCtx>>,
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible factorization of `f^n − f^m` over `F_q(c)` as unions of
/// local orbits, searched by number of orbits and then lexicographically,
/// each candidate certified by exact division.
pub fn subset_factor(ctx: &FqCtx, n: u64, m: u64, prec: i64, orbit_cap: usize) -> Result<FactorReport> {
    let d = ctx.d();
    if n <= m {
        return Err(Error::InvalidParameter(format!("need n > m, got n = {n}, m = {m}")));
    }
    let orbit_count = (d as u128).pow(n as u32 - 1);
    if orbit_count > orbit_cap as u128 {
        return Err(Error::CapExceeded {
            what: "local orbits".into(),
            needed: orbit_count,
            cap: orbit_cap as u128,
        });
    }
    let params = FamilyParams::new(d, ctx.clone())?;
    let target = preperiodic_poly(&params, n, m)?;
    let lo = local_orbits(ctx, n, m, working_precision(d, n, prec))?;

    let mut remaining: Vec<usize> = (0..lo.orbits.len()).collect();
    let mut rest = target.clone();
    let mut found: Vec<(Vec<usize>, BivarPoly<FqCtx>)> = Vec::new();
    let mut tested = 0u64;
    let mut k = 1;
    'outer: while !remaining.is_empty() {
        if k > remaining.len() {
            return Err(Error::PrecisionInsufficient(
                "no union of the remaining orbits rounds to a factor".into(),
            ));
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            tested += 1;
            let chosen: Vec<usize> = idx.iter().map(|&i| remaining[i]).collect();
            let roots: Vec<&TSeries> = chosen
                .iter()
                .flat_map(|&o| lo.orbits[o].iter().map(|&r| &lo.roots[r]))
                .collect();
            let coeffs = product_of_linear(ctx, &roots);
            if let Some(cs) = round_to_c_polys(ctx, d, &coeffs)? {
                let cand = BivarPoly::from_z_coeffs(ctx.clone(), cs);
                if let Ok(quo) = rest.exact_div(&cand) {
                    rest = quo;
                    remaining.retain(|o| !chosen.contains(o));
                    found.push((chosen, cand));
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        k += 1;
    }

    let mut prod = BivarPoly::one(ctx.clone());
    for (_, f) in &found {
        prod = prod.mul(f)?;
    }
    let factors: Vec<FactorEntry> = found
        .iter()
        .map(|(orbits, f)| {
            let degree = f.deg_z().unwrap_or(0);
            FactorEntry {
                degree,
                orbits: orbits.clone(),
                codes: orbits
                    .iter()
                    .flat_map(|&o| lo.orbits[o].iter().map(|&r| lo.codes[r].to_string()))
                    .collect(),
                points_above_infinity: (degree as u64) / d,
                gauss_bound_ok: gauss_bound_ok(f, d),
                poly: to_text(f),
            }
        })
        .collect();
    Ok(FactorReport {
        d,
        p: ctx.p(),
        q: ctx.q(),
        n,
        m,
        prec,
        orbit_partition: lo
            .orbits
            .iter()
            .map(|o| o.iter().map(|&r| lo.codes[r].to_string()).collect())
            .collect(),
        degrees: factors.iter().map(|f| f.degree).collect(),
        gauss_bound_ok: factors.iter().all(|f| f.gauss_bound_ok),
        factors,
        product_ok: prod == target && rest.is_one(),
        subsets_tested: tested,
        polys: found.into_iter().map(|(_, f)| f).collect(),
    })
}

/// Number of monic `Q = Σ q_r z^(e−r)` with `deg q_r ≤ ⌊r/d⌋`:
/// `q^(Σ_{r=1}^{e} (⌊r/d⌋ + 1))`, saturating.
pub fn scan_candidate_count(q: u64, d: u64, e: u64) -> u128 {
    let slots: u64 = (1..=e).map(|r| r / d + 1).sum();
    let mut acc: u128 = 1;
    for _ in 0..slots {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub d: u64,
    pub q: u64,
    pub e: u64,
    pub candidates: u128,
    pub cap: u128,
    pub truncated: bool,
    pub factors: Vec<String>,
    #[serde(skip)]
    pub polys: Vec<BivarPoly<FqCtx>>,
}

/// All monic divisors of `target` of `z`-degree `e` obeying the Gauss
/// bound, by exhaustive enumeration in lexicographic coefficient order.
pub fn scan_divisors(ctx: &FqCtx, target: &BivarPoly<FqCtx>, e: u64, cap: u128) -> Result<ScanReport> {
    let d = ctx.d();
    let q = ctx.q();
    let count = scan_candidate_count(q, d, e);
    if count > cap {
        return Err(Error::CapExceeded {
            what: format!("degree-{e} scan candidates"),
            needed: count,
            cap,
        });
    }
    // slots (r, j): coefficient of z^(e−r) c^j, r = 1..=e, j = 0..=⌊r/d⌋
    let slots: Vec<(usize, usize)> = (1..=e)
        .flat_map(|r| (0..=r / d).map(move |j| ((e - r) as usize, j as usize)))
        .collect();
    let build = |mut idx: u128| -> BivarPoly<FqCtx> {
        let mut terms: Vec<(usize, usize, FqElem)> = vec![(e as usize, 0, ctx.one())];
        for &(i, j) in slots.iter().rev() {
            let digit = (idx % q as u128) as u64;
            idx /= q as u128;
            terms.push((i, j, ctx.element(digit)));
        }
        BivarPoly::from_terms(ctx.clone(), terms)
    };
    let polys: Vec<BivarPoly<FqCtx>> = (0..count)
        .into_par_iter()
        .filter_map(|idx| {
            let cand = build(idx);
            target.exact_div(&cand).ok().map(|_| cand)
        })
        .collect();
    Ok(ScanReport {
        d,
        q,
        e,
        candidates: count,
        cap,
        truncated: false,
        factors: polys.iter().map(to_text).collect(),
        polys,
    })
}

/// [`scan_divisors`] applied to `f^n − f^m`.
pub fn bounded_degree_scan(ctx: &FqCtx, e: u64, n: u64, m: u64, cap: u128) -> Result<ScanReport> {
    let params = FamilyParams::new(ctx.d(), ctx.clone())?;
    let target = preperiodic_poly(&params, n, m)?;
    scan_divisors(ctx, &target, e, cap)
}

/// `e/d` points above `c = ∞` on a factor of degree `e`.
pub fn points_above_infinity(e: u64, d: u64) -> Result<u64> {
    if d == 0 || e % d != 0 {
        return Err(Error::InvalidParameter(format!(
            "degree {e} is not divisible by d = {d}"
        )));
    }
    Ok(e / d)
}

/// `⌈e / (d (q + 1))⌉`.
pub fn ogg_gonality_bound(e: u64, d: u64, q: u64) -> Result<u64> {
    let pts = points_above_infinity(e, d)?;
    Ok(pts.div_ceil(q + 1))
}

/// The characteristic-0 factors of `f^n − f^m`, reduced into `F_q`:
/// `Φ_e` and the ζ-components `Φ_e(ζ^(−j) f^(i−1)(z))` for `e | n − m`,
/// `1 ≤ i ≤ m`, `1 ≤ j < d`.
pub fn reduced_char0_factors(ctx: &FqCtx, n: u64, m: u64) -> Result<Vec<BivarPoly<FqCtx>>> {
    if n <= m {
        return Err(Error::InvalidParameter(format!("need n > m, got n = {n}, m = {m}")));
    }
    let d = ctx.d();
    let params = FamilyParams::new(d, Cyclotomic::new(d)?)?;
    let mut out = Vec::new();
    for e in divisors(n - m) {
        let phi_e = phi(&params, e)?;
        out.push(reduce_cyc_mod_p(&phi_e, ctx)?);
        for i in 1..=m {
            for j in 1..d {
                let comp = compose_iterate(&params, &twisted_phi(&params, &phi_e, j)?, i - 1);
                out.push(reduce_cyc_mod_p(&comp, ctx)?);
            }
        }
    }
    Ok(out)
}

/// Splits `p` into irreducibles over `F_q(c)` by repeatedly scanning for
/// its smallest-degree monic divisor.
pub fn refine_by_scan(ctx: &FqCtx, p: &BivarPoly<FqCtx>, cap: u128) -> Result<Vec<BivarPoly<FqCtx>>> {
    let deg = p.deg_z().unwrap_or(0) as u64;
    for e in 1..=deg / 2 {
        let found = scan_divisors(ctx, p, e, cap)?;
        if let Some(f) = found.polys.into_iter().next() {
            let mut out = vec![f.clone()];
            out.extend(refine_by_scan(ctx, &p.exact_div(&f)?, cap)?);
            return Ok(out);
        }
    }
    Ok(vec![p.clone()])
}

/// Canonical ordering of a factor list: by degree, then text form.
pub fn canonical_factor_list(fs: &[BivarPoly<FqCtx>]) -> Vec<String> {
    let mut v: Vec<(usize, String)> = fs.iter().map(|f| (f.deg_z().unwrap_or(0), to_text(f))).collect();
    v.sort();
    v.into_iter().map(|(_, s)| s).collect()
}
