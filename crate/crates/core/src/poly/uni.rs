use std::fmt;

use super::kernel;
use crate::error::{Error, Result};
use crate::ring::Field;

/// Dense univariate polynomial (in `c`, by convention) with trimmed
/// coefficients, constant term first.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F: Field> {
    ring: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(ring: F, mut coeffs: Vec<F::Elem>) -> Self {
        kernel::trim(&ring, &mut coeffs);
        UniPoly { ring, coeffs }
    }

    pub fn from_i64s(ring: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| ring.from_i64(v)).collect();
        Self::new(ring, c)
    }

    pub fn zero(ring: F) -> Self {
        UniPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: F, c: F::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn one(ring: F) -> Self {
        let one = ring.one();
        Self::constant(ring, one)
    }

    /// The variable itself.
    pub fn var(ring: F) -> Self {
        let c = vec![ring.zero(), ring.one()];
        Self::new(ring, c)
    }

    pub fn ring(&self) -> &F {
        &self.ring
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
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
        let mut out = self.coeffs.clone();
        kernel::add_shifted(&self.ring, &mut out, &other.coeffs, 0);
        Ok(Self::new(self.ring.clone(), out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.coeffs.clone();
        kernel::sub_shifted(&self.ring, &mut out, &other.coeffs, 0);
        Ok(Self::new(self.ring.clone(), out))
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|x| self.ring.neg(x)).collect();
        Self::new(self.ring.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::new(
            self.ring.clone(),
            kernel::mul(&self.ring, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn scalar_mul(&self, s: &F::Elem) -> Self {
        Self::new(self.ring.clone(), kernel::scale(&self.ring, &self.coeffs, s))
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

    /// Quotient and remainder; the coefficient ring is a field.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self)> {
        self.same_ring(den)?;
        if den.is_zero() {
            return Err(Error::InvalidParameter("division by the zero polynomial".into()));
        }
        let (q, r) = kernel::div_rem(&self.ring, &self.coeffs, &den.coeffs);
        Ok((
            Self::new(self.ring.clone(), q),
            Self::new(self.ring.clone(), r),
        ))
    }

    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonExactDivision(format!(
                "univariate remainder of degree {}",
                r.degree().unwrap()
            )))
        }
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.inv(lc).expect("nonzero leading coefficient");
                self.scalar_mul(&inv)
            }
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm;
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| self.ring.mul(x, &self.ring.from_i64(i as i64)))
            .collect();
        Self::new(self.ring.clone(), c)
    }

    /// `gcd(P, P′) = 1`. Meaningful in characteristic 0 or above the degree.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.gcd(&self.derivative()).unwrap();
        g.degree() == Some(0)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        kernel::eval(&self.ring, &self.coeffs, x)
    }

    /// Substitutes `g` for the variable.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.same_ring(g)?;
        let mut acc = Self::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g)?;
            let mut v = acc.coeffs;
            if v.is_empty() {
                v.push(self.ring.zero());
            }
            self.ring.add_assign(&mut v[0], c);
            acc = Self::new(self.ring.clone(), v);
        }
        Ok(acc)
    }

    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<UniPoly<G>> {
        let c = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(target, c))
    }
}

/// Monic gcd of two polynomials over a field.
pub fn gcd_uni<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> Result<UniPoly<F>> {
    a.gcd(b)
}

/// True iff `gcd(P, P′) = 1`.
pub fn squarefree<F: Field>(p: &UniPoly<F>) -> bool {
    p.is_squarefree()
}
