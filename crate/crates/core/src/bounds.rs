//! Bound calculators: Castelnuovo–Severi, the two-case gonality bound for
//! `X₀(n)`, the tower recursion in `m`, and the preperiodic-point counts.

use rug::ops::Pow;
use rug::Integer;
use serde::Serialize;
use serde_json::json;

use crate::dynatomic::{deg_d0, deg_d1};
use crate::error::{Error, Result};
use crate::ring::BigRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    ExactFormula,
    AsymptoticLeadingTerm,
    UserSuppliedGenus,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub bound: &'static str,
    pub inputs: serde_json::Value,
    pub value: String,
    pub mode: BoundMode,
    pub caveats: Vec<String>,
    pub details: serde_json::Value,
}

/// `d₁g₁ + d₂g₂ + (d₁−1)(d₂−1)`.
pub fn castelnuovo_severi(g1: u64, g2: u64, d1: u64, d2: u64) -> Result<u128> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidParameter("degrees must be at least 1".into()));
    }
    let (g1, g2, d1, d2) = (g1 as u128, g2 as u128, d1 as u128, d2 as u128);
    Ok(d1 * g1 + d2 * g2 + (d1 - 1) * (d2 - 1))
}

pub fn castelnuovo_severi_report(g1: u64, g2: u64, d1: u64, d2: u64) -> Result<BoundReport> {
    let v = castelnuovo_severi(g1, g2, d1, d2)?;
    Ok(BoundReport {
        bound: "castelnuovo-severi",
        inputs: json!({"g1": g1, "g2": g2, "d1": d1, "d2": d2}),
        value: v.to_string(),
        mode: BoundMode::ExactFormula,
        caveats: vec![],
        details: json!({"meaning": "upper bound on the genus of the compositum"}),
    })
}

/// Genus input for the `X₀(n)` bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusInput {
    /// A proven lower bound on `g(X₀(n))`.
    Supplied(u64),
    /// The leading term `(1/2 − 1/(2d) − 1/n) d^n` with the error term dropped.
    Asymptotic,
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(Integer::from(n), Integer::from(d)).unwrap()
}

/// `1/2 − 1/(2d)`, the leading coefficient of the `X₀(n)` gonality growth in `n`.
pub fn x0_leading_coefficient(d: u64) -> BigRat {
    &rat(1, 2) - &rat(1, 2 * d as i64)
}

/// `(1/2 − 1/(2d) − 1/n) d^n`.
pub fn x0_genus_leading_term(d: u64, n: u64) -> BigRat {
    let coeff = &x0_leading_coefficient(d) - &rat(1, n as i64);
    &coeff * &BigRat::from_integer(Integer::from(d).pow(n as u32))
}

/// `min(D₀(n), 1 + ⌈g / (D₀(n) − 1)⌉)` for a genus lower bound `g`.
pub fn x0_case_bounds(d: u64, n: u64, genus: GenusInput) -> Result<BoundReport> {
    if n == 0 || d < 2 {
        return Err(Error::InvalidParameter("need d ≥ 2 and n ≥ 1".into()));
    }
    let d0 = deg_d0(d, n);
    if d0 <= 1 {
        return Err(Error::InvalidParameter(format!("degenerate D0({n}) = {d0}")));
    }
    let mut caveats = Vec::new();
    let (g, mode) = match genus {
        GenusInput::Supplied(g) => (BigRat::from_integer(Integer::from(g)), BoundMode::UserSuppliedGenus),
        GenusInput::Asymptotic => {
            caveats.push(
                "genus replaced by the leading term (1/2 - 1/(2d) - 1/n) d^n; the O(n d^(n/2)) term is dropped, so the bound is not rigorous"
                    .to_string(),
            );
            (x0_genus_leading_term(d, n), BoundMode::AsymptoticLeadingTerm)
        }
    };
    let g_used = if g < BigRat::zero() {
        caveats.push("negative genus estimate clamped to 0".into());
        BigRat::zero()
    } else {
        g.clone()
    };
    let d0_rat = BigRat::from_integer(Integer::from(d0));
    let ratio = &g_used * &(&d0_rat - &BigRat::one()).recip().unwrap();
    let case2 = Integer::from(1) + ratio.ceil();
    let case1 = Integer::from(d0);
    let value = if case1 < case2 { case1.clone() } else { case2.clone() };
    Ok(BoundReport {
        bound: "x0",
        inputs: json!({"d": d, "n": n, "genus": g.to_string()}),
        value: value.to_string(),
        mode,
        caveats,
        details: json!({
            "D0": d0.to_string(),
            "case_I": case1.to_string(),
            "case_II": case2.to_string(),
            "leading_coefficient": x0_leading_coefficient(d).to_string(),
        }),
    })
}

/// Per-`m` genus information for the tower recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerInput {
    /// `g_m − d g_(m−1) ≥ (d−1) d^(m−2) D₁(n) / 2 − (d−1)` from the ramification count.
    Ramification,
    /// Genera `g_1, g_2, …` supplied by the caller.
    Genera(Vec<u64>),
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerStep {
    pub m: u64,
    pub case_i: String,
    pub case_ii: String,
    pub gamma: String,
}

/// Lower bounds `γ_m ≥ min(2 γ_(m−1), 1 + Δ_m / (d−1))`, `Δ_m` a lower
/// bound on `g_m − d g_(m−1)`, for `m = 2..=m_max`.
pub fn tower_recursion(d: u64, n: u64, gamma1: u64, input: &TowerInput, m_max: u64) -> Result<Vec<TowerStep>> {
    if m_max < 2 || d < 2 || n == 0 {
        return Err(Error::InvalidParameter("need m_max ≥ 2, d ≥ 2, n ≥ 1".into()));
    }
    if let TowerInput::Genera(g) = input {
        if (g.len() as u64) < m_max {
            return Err(Error::InvalidParameter(format!(
                "need genera g_1..g_{m_max}, got {}",
                g.len()
            )));
        }
    }
    let dm1 = BigRat::from_integer(Integer::from(d - 1));
    let mut prev = Integer::from(gamma1);
    let mut out = Vec::new();
    for m in 2..=m_max {
        let delta = match input {
            TowerInput::Ramification => {
                let r = Integer::from(d - 1) * Integer::from(d).pow((m - 2) as u32) * Integer::from(deg_d1(d, n));
                &BigRat::new(r, Integer::from(2)).unwrap() - &dm1
            }
            TowerInput::Genera(g) => {
                let gm = Integer::from(g[(m - 1) as usize]);
                let gp = Integer::from(g[(m - 2) as usize]) * d;
                BigRat::from_integer(gm - gp)
            }
        };
        let case2 = (&BigRat::one() + &(&delta * &dm1.recip().unwrap())).ceil();
        let case1 = Integer::from(&prev * 2);
        let gamma = if case1 < case2 { case1.clone() } else { case2.clone() };
        let gamma = gamma.max(Integer::from(1));
        out.push(TowerStep {
            m,
            case_i: case1.to_string(),
            case_ii: case2.to_string(),
            gamma: gamma.to_string(),
        });
        prev = gamma;
    }
    Ok(out)
}

pub fn tower_report(d: u64, n: u64, gamma1: u64, input: &TowerInput, m_max: u64) -> Result<BoundReport> {
    let steps = tower_recursion(d, n, gamma1, input, m_max)?;
    let (mode, caveats) = match input {
        TowerInput::Ramification => (
            BoundMode::ExactFormula,
            vec!["uses only the ramification-degree lower bound; the true genera are not computed".to_string()],
        ),
        TowerInput::Genera(_) => (BoundMode::UserSuppliedGenus, vec![]),
    };
    Ok(BoundReport {
        bound: "tower",
        inputs: json!({"d": d, "n": n, "gamma1": gamma1, "m_max": m_max}),
        value: steps.last().unwrap().gamma.clone(),
        mode,
        caveats,
        details: serde_json::to_value(&steps).unwrap(),
    })
}

/// `n d^n = Σ_{m<n} deg_z (f^n − f^m)`.
pub fn preperiodic_count_bound(d: u64, n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    (d as u128)
        .checked_pow(n as u32)
        .and_then(|x| x.checked_mul(n as u128))
        .ok_or_else(|| Error::InvalidParameter("n d^n overflows".into()))
}

/// `q0^D`.
pub fn finite_field_constant_bound(q0: u64, big_d: u64) -> Result<Integer> {
    if q0 < 2 || big_d < 1 {
        return Err(Error::InvalidParameter("need q0 ≥ 2 and D ≥ 1".into()));
    }
    Ok(Integer::from(q0).pow(big_d as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cs_examples() {
        assert_eq!(castelnuovo_severi(0, 0, 2, 3).unwrap(), 2);
        assert_eq!(castelnuovo_severi(5, 7, 1, 4).unwrap(), 5 + 28);
        assert_eq!(castelnuovo_severi(0, 1, 2, 2).unwrap(), 3);
    }

    #[test]
    fn x0_examples() {
        assert_eq!(x0_leading_coefficient(2).to_string(), "1/4");
        let r = x0_case_bounds(2, 6, GenusInput::Supplied(10)).unwrap();
        assert_eq!(r.value, "3");
        let r = x0_case_bounds(2, 6, GenusInput::Asymptotic).unwrap();
        assert!(!r.caveats.is_empty());
    }

    #[test]
    fn tower_examples() {
        let s = tower_recursion(2, 1, 1, &TowerInput::Ramification, 6).unwrap();
        let g: Vec<&str> = s.iter().map(|x| x.gamma.as_str()).collect();
        assert_eq!(g, vec!["1", "2", "4", "8", "16"]);
        assert_eq!(s[4].case_ii, "16");
    }

    #[test]
    fn counts() {
        assert_eq!(preperiodic_count_bound(2, 3).unwrap(), 24);
        assert_eq!(preperiodic_count_bound(2, 1).unwrap(), 2);
        assert_eq!(preperiodic_count_bound(3, 2).unwrap(), 18);
        assert_eq!(finite_field_constant_bound(3, 2).unwrap(), 9);
        assert_eq!(finite_field_constant_bound(2, 10).unwrap(), 1024);
    }
}
