use std::fmt;

use rug::Integer;

use super::kernel;
use super::uni::UniPoly;
use crate::error::{Error, Result};
use crate::ring::Field;

/// Polynomial in `z` whose coefficients are dense polynomials in `c`.
///
/// `rows[i]` is the coefficient of `z^i`, constant-in-`c` term first. Rows
/// and the row list are kept trimmed, so `deg_z` and `deg_c` are exact.
#[derive(Clone, PartialEq)]
pub struct BivarPoly<F: Field> {
    ring: F,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> fmt::Debug for BivarPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly {{ {} }}", self.pretty())
    }
}

impl<F: Field> BivarPoly<F> {
    pub fn new(ring: F, mut rows: Vec<Vec<F::Elem>>) -> Self {
        for r in rows.iter_mut() {
            kernel::trim(&ring, r);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        BivarPoly { ring, rows }
    }

    pub fn zero(ring: F) -> Self {
        BivarPoly {
            ring,
            rows: Vec::new(),
        }
    }

    pub fn one(ring: F) -> Self {
        let one = ring.one();
        Self::new(ring, vec![vec![one]])
    }

    /// The polynomial `z`.
    pub fn z(ring: F) -> Self {
        Self::from_terms(ring.clone(), vec![(1, 0, ring.one())])
    }

    /// The polynomial `c`.
    pub fn c(ring: F) -> Self {
        Self::from_terms(ring.clone(), vec![(0, 1, ring.one())])
    }

    /// Sum of `coef · z^i c^j` terms; repeated monomials add up.
    pub fn from_terms(ring: F, terms: Vec<(usize, usize, F::Elem)>) -> Self {
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for (i, j, coef) in terms {
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= j {
                rows[i].resize(j + 1, ring.zero());
            }
            ring.add_assign(&mut rows[i][j], &coef);
        }
        Self::new(ring, rows)
    }

    pub fn from_i64_terms(ring: F, terms: &[(usize, usize, i64)]) -> Self {
        let t = terms.iter().map(|&(i, j, v)| (i, j, ring.from_i64(v))).collect();
        Self::from_terms(ring, t)
    }

    /// A polynomial in `c` viewed as constant in `z`.
    pub fn from_c_poly(p: &UniPoly<F>) -> Self {
        Self::new(p.ring().clone(), vec![p.coeffs().to_vec()])
    }

    /// Builds `Σ p_i(c) z^i` from its `z`-coefficients.
    pub fn from_z_coeffs(ring: F, coeffs: Vec<UniPoly<F>>) -> Self {
        Self::new(ring, coeffs.into_iter().map(|p| p.into_coeffs()).collect())
    }

    pub fn ring(&self) -> &F {
        &self.ring
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        self.rows.get(i).map(|r| r.as_slice()).unwrap_or(&[])
    }

    /// The coefficient of `z^i` as a polynomial in `c`.
    pub fn z_coeff(&self, i: usize) -> UniPoly<F> {
        UniPoly::new(self.ring.clone(), self.row(i).to_vec())
    }

    pub fn coeff(&self, i: usize, j: usize) -> F::Elem {
        self.row(i).get(j).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].len() == 1 && self.ring.is_one(&self.rows[0][0])
    }

    pub fn deg_z(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_c(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.len().checked_sub(1)).max()
    }

    pub fn term_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|c| !self.ring.is_zero(c)).count())
            .sum()
    }

    /// Leading `z`-coefficient is the constant 1.
    pub fn is_monic_z(&self) -> bool {
        match self.rows.last() {
            Some(r) => r.len() == 1 && self.ring.is_one(&r[0]),
            None => false,
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MismatchedContexts)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut rows = self.rows.clone();
        if rows.len() < other.rows.len() {
            rows.resize(other.rows.len(), Vec::new());
        }
        for (r, o) in rows.iter_mut().zip(&other.rows) {
            kernel::add_shifted(&self.ring, r, o, 0);
        }
        Ok(Self::new(self.ring.clone(), rows))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut rows = self.rows.clone();
        if rows.len() < other.rows.len() {
            rows.resize(other.rows.len(), Vec::new());
        }
        for (r, o) in rows.iter_mut().zip(&other.rows) {
            kernel::sub_shifted(&self.ring, r, o, 0);
        }
        Ok(Self::new(self.ring.clone(), rows))
    }

    pub fn neg(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| self.ring.neg(x)).collect())
            .collect();
        Self::new(self.ring.clone(), rows)
    }

    pub fn scalar_mul(&self, s: &F::Elem) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| kernel::scale(&self.ring, r, s))
            .collect();
        Self::new(self.ring.clone(), rows)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring.clone()));
        }
        // the operand with fewer terms is iterated sparsely
        let (big, small) = if self.term_count() >= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        let small_rows: Vec<(usize, Vec<(usize, F::Elem)>)> = small
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(j, r)| (j, kernel::support(&self.ring, r)))
            .collect();
        let mut out: Vec<Vec<F::Elem>> = vec![Vec::new(); big.rows.len() + small.rows.len() - 1];
        for (i, brow) in big.rows.iter().enumerate() {
            if brow.is_empty() {
                continue;
            }
            for (j, sup) in &small_rows {
                kernel::mul_acc_sparse(&self.ring, &mut out[i + j], brow, sup, false);
            }
        }
        Ok(Self::new(self.ring.clone(), out))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Exact quotient `num / den` in `R[c][z]`.
    ///
    /// Long division on `z`; each quotient row is the leading remainder row
    /// divided exactly in `R[c]` by the leading row of `den` (free when `den`
    /// is monic in `z`). Any non-integral step or nonzero remainder is a
    /// [`Error::NonExactDivision`].
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        self.same_ring(den)?;
        let dd = den
            .deg_z()
            .ok_or_else(|| Error::InvalidParameter("division by the zero polynomial".into()))?;
        let Some(nd) = self.deg_z() else {
            return Ok(Self::zero(self.ring.clone()));
        };
        if nd < dd {
            return Err(Error::NonExactDivision(format!(
                "numerator z-degree {nd} is below divisor z-degree {dd}"
            )));
        }
        let ring = &self.ring;
        let lead = UniPoly::new(ring.clone(), den.rows[dd].clone());
        let monic = den.is_monic_z();
        let tail: Vec<(usize, Vec<(usize, F::Elem)>)> = den.rows[..dd]
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(j, r)| (j, kernel::support(ring, r)))
            .collect();
        let mut rem = self.rows.clone();
        let mut quo: Vec<Vec<F::Elem>> = vec![Vec::new(); nd - dd + 1];
        for top in (dd..=nd).rev() {
            let mut lead_row = std::mem::take(&mut rem[top]);
            kernel::trim(ring, &mut lead_row);
            if lead_row.is_empty() {
                continue;
            }
            let q_row = if monic {
                lead_row
            } else {
                let (q, r) = kernel::div_rem(ring, &lead_row, lead.coeffs());
                if !r.is_empty() {
                    return Err(Error::NonExactDivision(format!(
                        "coefficient of z^{} is not divisible by the leading coefficient",
                        top - dd
                    )));
                }
                q
            };
            for (j, sup) in &tail {
                kernel::mul_acc_sparse(ring, &mut rem[top - dd + j], &q_row, sup, true);
            }
            quo[top - dd] = q_row;
        }
        for (i, r) in rem.iter_mut().take(dd).enumerate() {
            kernel::trim(ring, r);
            if !r.is_empty() {
                return Err(Error::NonExactDivision(format!(
                    "nonzero remainder at z^{i}"
                )));
            }
        }
        Ok(Self::new(ring.clone(), quo))
    }

    /// Substitutes `g` for `z`.
    pub fn compose_z(&self, g: &Self) -> Result<Self> {
        self.same_ring(g)?;
        let mut acc = Self::zero(self.ring.clone());
        for row in self.rows.iter().rev() {
            acc = acc.mul(g)?;
            if !row.is_empty() {
                if acc.rows.is_empty() {
                    acc.rows.push(Vec::new());
                }
                kernel::add_shifted(&self.ring, &mut acc.rows[0], row, 0);
                acc = Self::new(self.ring.clone(), acc.rows);
            }
        }
        Ok(acc)
    }

    /// Substitutes `z^d + c` for `z`, by binomial expansion of each
    /// `(z^d + c)^k`.
    pub fn compose_zd_plus_c(&self, d: usize) -> Self {
        let ring = &self.ring;
        let Some(n) = self.deg_z() else {
            return self.clone();
        };
        let mut out: Vec<Vec<F::Elem>> = vec![Vec::new(); d * n + 1];
        for (k, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            // (z^d + c)^k = Σ_l C(k, l) z^(d l) c^(k − l)
            let mut binom = Integer::from(1);
            for l in 0..=k {
                let coef = ring.from_integer(&binom);
                kernel::mul_acc_sparse(ring, &mut out[d * l], row, &[(k - l, coef)], false);
                binom *= (k - l) as u64;
                binom /= (l + 1) as u64;
            }
        }
        Self::new(ring.clone(), out)
    }

    /// `P(λ z)`.
    pub fn scale_z(&self, lambda: &F::Elem) -> Self {
        let mut pw = self.ring.one();
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            rows.push(kernel::scale(&self.ring, r, &pw));
            pw = self.ring.mul(&pw, lambda);
        }
        Self::new(self.ring.clone(), rows)
    }

    /// Substitutes a polynomial in `c` for `z`.
    pub fn eval_z(&self, a: &UniPoly<F>) -> Result<UniPoly<F>> {
        if *a.ring() != self.ring {
            return Err(Error::MismatchedContexts);
        }
        let mut acc: Vec<F::Elem> = Vec::new();
        for row in self.rows.iter().rev() {
            acc = kernel::mul(&self.ring, &acc, a.coeffs());
            kernel::add_shifted(&self.ring, &mut acc, row, 0);
            kernel::trim(&self.ring, &mut acc);
        }
        Ok(UniPoly::new(self.ring.clone(), acc))
    }

    /// Substitutes a constant for `c`; the result is a polynomial in `z`.
    pub fn eval_c(&self, gamma: &F::Elem) -> UniPoly<F> {
        let coeffs = self
            .rows
            .iter()
            .map(|r| kernel::eval(&self.ring, r, gamma))
            .collect();
        UniPoly::new(self.ring.clone(), coeffs)
    }

    /// Coefficientwise image in another field.
    pub fn map_coeffs<G: Field>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<BivarPoly<G>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(BivarPoly::new(target, rows))
    }

    /// Nonzero terms `(i, j, coef)` in canonical order (`i` desc, then `j` desc).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> + '_ {
        self.rows.iter().enumerate().rev().flat_map(move |(i, r)| {
            r.iter()
                .enumerate()
                .rev()
                .filter(move |(_, c)| !self.ring.is_zero(c))
                .map(move |(j, c)| (i, j, c))
        })
    }

    /// Human-readable form such as `z^2 + z + c + 1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, j, c) in self.terms() {
            let coords = self.ring.to_coords(c);
            let (neg, mag) = if coords.len() == 1 {
                let s = &coords[0];
                match s.strip_prefix('-') {
                    Some(rest) if self.ring.characteristic() == 0 => (true, rest.to_string()),
                    _ => (false, s.clone()),
                }
            } else {
                (false, format!("[{}]", coords.join(",")))
            };
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("z".to_string()),
                _ => mono.push(format!("z^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("c".to_string()),
                _ => mono.push(format!("c^{j}")),
            }
            let body = match (mag.as_str(), mono.is_empty()) {
                (m, true) => m.to_string(),
                ("1", false) => mono.join("*"),
                (m, false) => format!("{m}*{}", mono.join("*")),
            };
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for BivarPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}
