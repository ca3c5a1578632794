//! Characteristic-0 checks on the zero fibre of the ζ-components: simple
//! roots and their count, the divisibility identity for `n | m − 1`, and
//! the ramification-degree lower bound.

use serde::Serialize;

use crate::dynatomic::{deg_d1, phi, twisted_phi, FamilyParams};
use crate::error::{Error, Result};
use crate::poly::{squarefree, UniPoly};
use crate::ring::{Cyclotomic, Field};

fn family(d: u64) -> Result<FamilyParams<Cyclotomic>> {
    FamilyParams::new(d, Cyclotomic::new(d)?)
}

/// `f^k(0)` as a polynomial in `c`.
pub fn critical_orbit<F: Field>(params: &FamilyParams<F>, k: u64) -> UniPoly<F> {
    let ring = params.ring().clone();
    let c = UniPoly::var(ring.clone());
    let mut a = UniPoly::zero(ring);
    for _ in 0..k {
        a = a.pow(params.d() as u32).add(&c).unwrap();
    }
    a
}

/// `Φ_n(ζ^(−j) f^(m−1)(0), c)` over `ℚ(ζ_d)`.
pub fn zero_fiber_poly(d: u64, m: u64, n: u64, j: u64) -> Result<UniPoly<Cyclotomic>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("need m ≥ 1 and n ≥ 1".into()));
    }
    let params = family(d)?;
    let tw = twisted_phi(&params, &phi(&params, n)?, j)?;
    tw.eval_z(&critical_orbit(&params, m - 1))
}

/// `d^(m−2) D₁(n)`, the number of roots of the zero-fibre polynomial for `m ≥ 2`.
pub fn zero_fiber_degree(d: u64, m: u64, n: u64) -> u128 {
    assert!(m >= 2);
    (d as u128).pow((m - 2) as u32) * deg_d1(d, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleRootsReport {
    pub d: u64,
    pub m: u64,
    pub n: u64,
    pub j: u64,
    pub degree: usize,
    /// `None` when `m = 1`, where no count is asserted.
    pub expected_degree: Option<u128>,
    pub squarefree: bool,
    pub degree_ok: Option<bool>,
}

impl SimpleRootsReport {
    pub fn passed(&self) -> bool {
        self.squarefree && self.degree_ok != Some(false)
    }
}

pub fn verify_simple_roots(d: u64, m: u64, n: u64, j: u64) -> Result<SimpleRootsReport> {
    let p = zero_fiber_poly(d, m, n, j)?;
    let degree = p.degree().unwrap_or(0);
    let expected_degree = (m >= 2).then(|| zero_fiber_degree(d, m, n));
    Ok(SimpleRootsReport {
        d,
        m,
        n,
        j,
        degree,
        expected_degree,
        squarefree: squarefree(&p),
        degree_ok: expected_degree.map(|e| e == degree as u128),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization2Report {
    pub d: u64,
    pub m: u64,
    pub n: u64,
    /// `Φ_n(0,c)` divides every `Φ_n(ζ^(−j) f^(m−1)(0), c)`.
    pub divides_each: bool,
    /// Both sides of the quotient identity agree.
    pub holds: bool,
}

/// Checks
/// `Φ_{m,n}(0,c) / Φ_n(0,c)^(d−1) = ∏_j Φ_n(ζ^(−j) f^(m−1)(0), c) / Φ_n(0,c)`
/// for `n | m − 1`, with the left side built from `Φ_n(f^m(0)) / Φ_n(f^(m−1)(0))`.
pub fn verify_factorization2(d: u64, m: u64, n: u64) -> Result<Factorization2Report> {
    if m == 0 || n == 0 || (m - 1) % n != 0 {
        return Err(Error::InvalidParameter(format!(
            "need n | m − 1, got m = {m}, n = {n}"
        )));
    }
    let params = family(d)?;
    let ring = params.ring().clone();
    let phi_n = phi(&params, n)?;
    let zero = UniPoly::zero(ring.clone());
    let at0 = phi_n.eval_z(&zero)?;

    let a_prev = critical_orbit(&params, m - 1);
    let a_m = critical_orbit(&params, m);
    let phi_mn_0 = phi_n.eval_z(&a_m)?.exact_div(&phi_n.eval_z(&a_prev)?)?;
    let lhs = phi_mn_0.exact_div(&at0.pow((d - 1) as u32))?;

    let mut divides_each = true;
    let mut rhs = UniPoly::one(ring);
    for j in 1..d {
        let comp = twisted_phi(&params, &phi_n, j)?.eval_z(&a_prev)?;
        match comp.exact_div(&at0) {
            Ok(q) => rhs = rhs.mul(&q)?,
            Err(Error::NonExactDivision(_)) => {
                divides_each = false;
                rhs = UniPoly::zero(rhs.ring().clone());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Factorization2Report {
        d,
        m,
        n,
        divides_each,
        holds: divides_each && lhs == rhs,
    })
}

/// `(d−1) d^(m−2) D₁(n)`.
pub fn ramification_lower_bound(d: u64, m: u64, n: u64) -> Result<u128> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidParameter("need m ≥ 2 and n ≥ 1".into()));
    }
    Ok((d as u128 - 1) * zero_fiber_degree(d, m, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_fibres() {
        let p = zero_fiber_poly(2, 2, 1, 1).unwrap();
        assert_eq!(p, UniPoly::from_i64s(p.ring().clone(), &[0, 2, 1]));
        let p = zero_fiber_poly(2, 1, 1, 1).unwrap();
        assert_eq!(p, UniPoly::from_i64s(p.ring().clone(), &[0, 1]));
        assert_eq!(zero_fiber_poly(2, 3, 2, 1).unwrap().degree(), Some(4));
    }

    #[test]
    fn simple_roots() {
        let r = verify_simple_roots(2, 2, 1, 1).unwrap();
        assert!(r.squarefree && r.degree_ok == Some(true));
        let r = verify_simple_roots(2, 1, 1, 1).unwrap();
        assert!(r.squarefree && r.degree_ok.is_none());
        let r = verify_simple_roots(3, 2, 1, 1).unwrap();
        assert_eq!((r.degree, r.passed()), (3, true));
    }

    #[test]
    fn factorization2_cases() {
        for (d, m, n) in [(2, 2, 1), (2, 3, 2), (3, 2, 1)] {
            let r = verify_factorization2(d, m, n).unwrap();
            assert!(r.holds && r.divides_each, "{d} {m} {n}");
        }
        assert!(verify_factorization2(2, 3, 3).is_err());
    }

    #[test]
    fn ramification() {
        assert_eq!(ramification_lower_bound(2, 2, 1).unwrap(), 2);
        assert_eq!(ramification_lower_bound(2, 4, 3).unwrap(), 24);
        assert_eq!(ramification_lower_bound(3, 2, 1).unwrap(), 6);
    }
}
