//! The family `f = z^d + c`: iterates, dynatomic polynomials `Φ_n`, the
//! preperiodic quotients `Φ_{m,n}` and their ζ-components.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::ring::{divisors, moebius, Cyclotomic, Field, FqCtx, Rationals, RootsOfUnity};

pub const DEFAULT_DEGREE_CAP: usize = 20_000;

/// Default bound on the estimated coefficient products spent on an
/// explicit ζ-factorization check before falling back to the generic
/// identity in `w = f^(m−1)(z)`.
pub const DEFAULT_ZETA_WORK_BUDGET: u128 = 400_000_000;

/// The degree `d` of the family and the coefficient field.
#[derive(Clone, Debug)]
pub struct FamilyParams<F: Field> {
    d: u64,
    ring: F,
    degree_cap: usize,
}

impl<F: Field> FamilyParams<F> {
    pub fn new(d: u64, ring: F) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d must be at least 2, got {d}")));
        }
        let p = ring.characteristic();
        if p != 0 && d % p == 0 {
            return Err(Error::WildCharacteristic { p, d });
        }
        Ok(FamilyParams {
            d,
            ring,
            degree_cap: DEFAULT_DEGREE_CAP,
        })
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn ring(&self) -> &F {
        &self.ring
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    fn check_degree(&self, what: &str, degree: u128) -> Result<()> {
        if degree > self.degree_cap as u128 {
            return Err(Error::DegreeCap {
                what: what.to_string(),
                degree: degree.min(usize::MAX as u128) as usize,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    /// `z^d + c`.
    pub fn f(&self) -> BivarPoly<F> {
        BivarPoly::from_terms(
            self.ring.clone(),
            vec![(self.d as usize, 0, self.ring.one()), (0, 1, self.ring.one())],
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    /// Points of exact period `n`.
    Y1,
    /// Preperiodic points of type `(m, n)` on one ζ-component.
    Y1Zeta,
}

/// Names a dynatomic curve or one of its ζ-components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveLabel {
    pub kind: CurveKind,
    pub n: u64,
    pub m: u64,
    pub zeta_index: Option<u64>,
}

impl CurveLabel {
    pub fn periodic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("period n must be at least 1".into()));
        }
        Ok(CurveLabel {
            kind: CurveKind::Y1,
            n,
            m: 0,
            zeta_index: None,
        })
    }

    pub fn component(d: u64, m: u64, n: u64, j: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(
                "a ζ-component needs m ≥ 1 and n ≥ 1".into(),
            ));
        }
        if j == 0 || j >= d {
            return Err(Error::InvalidParameter(format!(
                "zeta index must lie in 1..{}, got {j}",
                d - 1
            )));
        }
        Ok(CurveLabel {
            kind: CurveKind::Y1Zeta,
            n,
            m,
            zeta_index: Some(j),
        })
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.zeta_index {
            None => write!(f, "Y1({})", self.n),
            Some(j) => write!(f, "Y1({},{})^zeta^{}", self.m, self.n, j),
        }
    }
}

/// `D₁(n) = Σ_{e|n} μ(n/e) d^e`, the `z`-degree of `Φ_n`.
pub fn deg_d1(d: u64, n: u64) -> u128 {
    assert!(n >= 1, "n must be positive");
    let mut acc: i128 = 0;
    for e in divisors(n) {
        let mu = moebius(n / e) as i128;
        if mu != 0 {
            let pw = (d as i128)
                .checked_pow(e as u32)
                .expect("d^n overflows 128 bits");
            acc += mu * pw;
        }
    }
    assert!(acc >= 0);
    acc as u128
}

/// `D₀(n) = D₁(n)/n`; divisibility is asserted.
pub fn deg_d0(d: u64, n: u64) -> u128 {
    let d1 = deg_d1(d, n);
    assert!(d1 % n as u128 == 0, "n = {n} does not divide D1 = {d1}");
    d1 / n as u128
}

fn pow_checked(d: u64, e: u64) -> u128 {
    (d as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// `f^0, f^1, …, f^n`.
pub fn iterates<F: Field>(params: &FamilyParams<F>, n: u64) -> Result<Vec<BivarPoly<F>>> {
    params.check_degree(&format!("f^{n}"), pow_checked(params.d, n))?;
    let mut out = vec![BivarPoly::z(params.ring.clone())];
    for _ in 0..n {
        let next = out.last().unwrap().compose_zd_plus_c(params.d as usize);
        out.push(next);
    }
    Ok(out)
}

/// The `n`-th iterate `f^n(z)`.
pub fn iterate<F: Field>(params: &FamilyParams<F>, n: u64) -> Result<BivarPoly<F>> {
    Ok(iterates(params, n)?.pop().unwrap())
}

/// `P(f^k(z))`.
pub fn compose_iterate<F: Field>(params: &FamilyParams<F>, p: &BivarPoly<F>, k: u64) -> BivarPoly<F> {
    let mut out = p.clone();
    for _ in 0..k {
        out = out.compose_zd_plus_c(params.d as usize);
    }
    out
}

/// `Φ_n` from precomputed iterates `its[e] = f^e` for `e ≤ n`.
///
/// The factors with `μ(n/e) = 1` are multiplied together, then the
/// factors with `μ(n/e) = −1` are divided out one at a time, largest first.
pub fn phi_from_iterates<F: Field>(
    params: &FamilyParams<F>,
    n: u64,
    its: &[BivarPoly<F>],
) -> Result<BivarPoly<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("period n must be at least 1".into()));
    }
    let z = BivarPoly::z(params.ring.clone());
    let mut num = BivarPoly::one(params.ring.clone());
    let mut dens = Vec::new();
    for e in divisors(n) {
        match moebius(n / e) {
            1 => num = num.mul(&its[e as usize].sub(&z)?)?,
            -1 => dens.push(e),
            _ => {}
        }
    }
    for e in dens.into_iter().rev() {
        num = num.exact_div(&its[e as usize].sub(&z)?)?;
    }
    Ok(num)
}

/// The dynatomic polynomial `Φ_n(z, c)`.
pub fn phi<F: Field>(params: &FamilyParams<F>, n: u64) -> Result<BivarPoly<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("period n must be at least 1".into()));
    }
    let its = iterates(params, n)?;
    phi_from_iterates(params, n, &its)
}

/// `Φ_e` for every divisor `e` of `n`, in increasing order of `e`.
pub fn phi_divisors<F: Field>(params: &FamilyParams<F>, n: u64) -> Result<Vec<(u64, BivarPoly<F>)>> {
    let its = iterates(params, n)?;
    divisors(n)
        .into_iter()
        .map(|e| Ok((e, phi_from_iterates(params, e, &its)?)))
        .collect()
}

/// Multiplies `Φ_e` over `e | n` and compares with `f^n − z`.
pub fn check_product_identity<F: Field>(params: &FamilyParams<F>, n: u64) -> Result<bool> {
    let its = iterates(params, n)?;
    let mut phis = divisors(n)
        .into_iter()
        .map(|e| phi_from_iterates(params, e, &its))
        .collect::<Result<Vec<_>>>()?;
    // small factors first, so the largest one is multiplied once
    phis.sort_by_key(|p| p.term_count());
    let mut prod = BivarPoly::one(params.ring.clone());
    for p in &phis {
        prod = prod.mul(p)?;
    }
    let target = its[n as usize].sub(&BivarPoly::z(params.ring.clone()))?;
    Ok(prod == target)
}

fn check_mn(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need m ≥ 1 and n ≥ 1, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// `Φ_{m,n} = Φ_n(f^m(z)) / Φ_n(f^(m−1)(z))`.
pub fn phi_mn<F: Field>(params: &FamilyParams<F>, m: u64, n: u64) -> Result<BivarPoly<F>> {
    check_mn(m, n)?;
    let deg = deg_d1(params.d, n).saturating_mul(pow_checked(params.d, m));
    params.check_degree(&format!("Phi_{n}(f^{m})"), deg)?;
    let phi_n = phi(params, n)?;
    let den = compose_iterate(params, &phi_n, m - 1);
    let num = den.compose_zd_plus_c(params.d as usize);
    num.exact_div(&den)
}

fn zeta_inverse_power<F: RootsOfUnity>(params: &FamilyParams<F>, j: u64) -> Result<F::Elem> {
    let ring = params.ring();
    if ring.zeta_order() != params.d {
        return Err(Error::MissingRootsOfUnity(params.d));
    }
    if j == 0 || j >= params.d {
        return Err(Error::InvalidParameter(format!(
            "zeta index must lie in 1..{}, got {j}",
            params.d - 1
        )));
    }
    Ok(ring.pow(&ring.zeta(), params.d - j))
}

/// `Φ_n(ζ^(−j) w, c)` for the chosen primitive root ζ.
pub fn twisted_phi<F: RootsOfUnity>(
    params: &FamilyParams<F>,
    phi_n: &BivarPoly<F>,
    j: u64,
) -> Result<BivarPoly<F>> {
    Ok(phi_n.scale_z(&zeta_inverse_power(params, j)?))
}

/// The ζ-component `Φ_n(ζ^(−j) f^(m−1)(z), c)`.
pub fn zeta_component<F: RootsOfUnity>(
    params: &FamilyParams<F>,
    m: u64,
    n: u64,
    j: u64,
) -> Result<BivarPoly<F>> {
    check_mn(m, n)?;
    let deg = deg_d1(params.d, n).saturating_mul(pow_checked(params.d, m - 1));
    params.check_degree(&format!("component ({m},{n},{j})"), deg)?;
    let tw = twisted_phi(params, &phi(params, n)?, j)?;
    Ok(compose_iterate(params, &tw, m - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaCheckMode {
    /// `Φ_{m,n}` and all components built in `(z, c)` and compared.
    Explicit,
    /// The identity checked in `(w, c)`; it transfers to `w = f^(m−1)(z)`
    /// because that substitution is an injective ring map.
    Substitution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaCheck {
    pub d: u64,
    pub m: u64,
    pub n: u64,
    pub holds: bool,
    pub mode: ZetaCheckMode,
    pub estimated_work: u128,
}

/// Rough count of coefficient products for the explicit check at `(d, m, n)`.
pub fn zeta_check_work(d: u64, m: u64, n: u64) -> u128 {
    let z = deg_d1(d, n).saturating_mul(pow_checked(d, m.saturating_sub(1)));
    // a component has about z rows of average c-length z / (2d)
    let terms = z.saturating_mul(z) / (2 * d as u128) + z;
    terms.saturating_mul(terms).saturating_mul(d as u128 - 1)
}

/// Compares `Φ_{m,n}` with the product of its `d − 1` ζ-components.
///
/// Runs the full check in `(z, c)` when [`zeta_check_work`] fits in
/// `budget`; otherwise checks `Φ_n(w^d + c) = Φ_n(w) · ∏_j Φ_n(ζ^(−j) w)`,
/// which is the `m = 1` case and implies every `m`.
pub fn check_zeta_factorization<F: RootsOfUnity>(
    params: &FamilyParams<F>,
    m: u64,
    n: u64,
    budget: u128,
) -> Result<ZetaCheck> {
    check_mn(m, n)?;
    let work = zeta_check_work(params.d, m, n);
    let explicit = work <= budget || m == 1;
    let phi_n = phi(params, n)?;
    let lift = if explicit { m - 1 } else { 0 };
    let den = compose_iterate(params, &phi_n, lift);
    let quotient = den.compose_zd_plus_c(params.d as usize).exact_div(&den)?;
    let mut comps = (1..params.d)
        .map(|j| Ok(compose_iterate(params, &twisted_phi(params, &phi_n, j)?, lift)))
        .collect::<Result<Vec<_>>>()?;
    comps.sort_by_key(|p| p.term_count());
    let mut prod = BivarPoly::one(params.ring.clone());
    for c in &comps {
        prod = prod.mul(c)?;
    }
    Ok(ZetaCheck {
        d: params.d,
        m,
        n,
        holds: prod == quotient,
        mode: if explicit {
            ZetaCheckMode::Explicit
        } else {
            ZetaCheckMode::Substitution
        },
        estimated_work: work,
    })
}

/// Every coefficient is an integer.
pub fn is_integral_rat(p: &BivarPoly<Rationals>) -> bool {
    p.rows().iter().flatten().all(|c| c.is_integer())
}

/// Every coefficient has integer coordinates in the power basis of `ζ`.
pub fn is_integral_cyc(p: &BivarPoly<Cyclotomic>) -> bool {
    p.rows()
        .iter()
        .flatten()
        .all(|c| c.coords().iter().all(|x| x.is_integer()))
}

/// Coefficientwise reduction of a rational polynomial into `F_q`.
pub fn reduce_mod_p(p: &BivarPoly<Rationals>, ctx: &FqCtx) -> Result<BivarPoly<FqCtx>> {
    p.map_coeffs(ctx.clone(), |r| ctx.reduce_rational(r))
}

/// Coefficientwise reduction from `ℚ(ζ_d)` into `F_q`, sending `ζ` to the
/// context's chosen root of unity.
pub fn reduce_cyc_mod_p(
    p: &BivarPoly<Cyclotomic>,
    ctx: &FqCtx,
) -> Result<BivarPoly<FqCtx>> {
    let k = p.ring().clone();
    p.map_coeffs(ctx.clone(), |a| ctx.reduce_cyclotomic(&k, a))
}

/// `f^n − f^m`.
pub fn preperiodic_poly<F: Field>(params: &FamilyParams<F>, n: u64, m: u64) -> Result<BivarPoly<F>> {
    if n <= m {
        return Err(Error::InvalidParameter(format!("need n > m, got n = {n}, m = {m}")));
    }
    let its = iterates(params, n)?;
    its[n as usize].sub(&its[m as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> FamilyParams<Rationals> {
        FamilyParams::new(2, Rationals).unwrap()
    }

    fn bp(terms: &[(usize, usize, i64)]) -> BivarPoly<Rationals> {
        BivarPoly::from_i64_terms(Rationals, terms)
    }

    #[test]
    fn degree_formulas() {
        assert_eq!((deg_d1(2, 3), deg_d0(2, 3)), (6, 2));
        assert_eq!((deg_d1(2, 1), deg_d0(2, 1)), (2, 2));
        assert_eq!((deg_d1(2, 6), deg_d0(2, 6)), (54, 9));
    }

    #[test]
    fn small_iterates_and_phis() {
        let p = q2();
        assert_eq!(iterate(&p, 0).unwrap(), BivarPoly::z(Rationals));
        assert_eq!(iterate(&p, 2).unwrap(), bp(&[(4, 0, 1), (2, 1, 2), (0, 2, 1), (0, 1, 1)]));
        assert_eq!(phi(&p, 1).unwrap(), bp(&[(2, 0, 1), (1, 0, -1), (0, 1, 1)]));
        assert_eq!(phi(&p, 2).unwrap(), bp(&[(2, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)]));
        let p3 = FamilyParams::new(3, Rationals).unwrap();
        assert_eq!(iterate(&p3, 1).unwrap(), bp(&[(3, 0, 1), (0, 1, 1)]));
        assert_eq!(phi(&p3, 2).unwrap().deg_z(), Some(6));
    }

    #[test]
    fn preperiodic_quotients() {
        let p = q2();
        assert_eq!(phi_mn(&p, 1, 1).unwrap(), bp(&[(2, 0, 1), (1, 0, 1), (0, 1, 1)]));
        assert_eq!(phi_mn(&p, 2, 1).unwrap().deg_z(), Some(4));
        let p3 = FamilyParams::new(3, Rationals).unwrap();
        assert_eq!(phi_mn(&p3, 1, 1).unwrap().deg_z(), Some(6));
    }

    #[test]
    fn components_for_d2() {
        let k = Cyclotomic::new(2).unwrap();
        let p = FamilyParams::new(2, k.clone()).unwrap();
        let c = zeta_component(&p, 1, 1, 1).unwrap();
        let expect = BivarPoly::from_i64_terms(k.clone(), &[(2, 0, 1), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(c, expect);
        assert_eq!(c, phi_mn(&p, 1, 1).unwrap());
        assert_eq!(zeta_component(&p, 2, 1, 1).unwrap().deg_z(), Some(4));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let p = q2().with_degree_cap(100);
        assert!(matches!(iterate(&p, 7), Err(Error::DegreeCap { .. })));
        assert!(iterate(&p, 6).is_ok());
    }

    #[test]
    fn wild_characteristic_rejected() {
        let f = FqCtx::new(3, 2).unwrap();
        assert!(matches!(FamilyParams::new(3, f), Err(Error::WildCharacteristic { .. })));
    }

    #[test]
    fn labels() {
        assert_eq!(CurveLabel::periodic(3).unwrap().to_string(), "Y1(3)");
        assert_eq!(CurveLabel::component(3, 2, 1, 2).unwrap().to_string(), "Y1(2,1)^zeta^2");
        assert!(CurveLabel::component(3, 0, 1, 1).is_err());
        assert!(CurveLabel::component(3, 1, 1, 3).is_err());
    }
}
