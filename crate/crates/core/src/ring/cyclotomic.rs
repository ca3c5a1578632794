use std::sync::Arc;

use rug::Integer;
use smallvec::SmallVec;

use super::arith::{divisors, euler_phi, moebius};
use super::rational::BigRat;
use super::{Field, RootsOfUnity};
use crate::error::{Error, Result};

/// Coefficients (constant term first) of the `d`-th cyclotomic polynomial.
pub fn cyclotomic_poly(d: u64) -> Vec<Integer> {
    let mut num = vec![Integer::from(1)];
    let mut dens = Vec::new();
    for e in divisors(d) {
        let mut xe = vec![Integer::new(); e as usize + 1];
        xe[0] = Integer::from(-1);
        xe[e as usize] = Integer::from(1);
        match moebius(d / e) {
            1 => num = int_poly_mul(&num, &xe),
            -1 => dens.push(xe),
            _ => {}
        }
    }
    for den in dens {
        num = int_poly_div_monic(&num, &den);
    }
    num
}

fn int_poly_mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a monic divisor; the remainder is asserted zero.
fn int_poly_div_monic(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![Integer::new(); a.len() - db];
    for top in (db..a.len()).rev() {
        let c = rem[top].clone();
        for (j, bj) in b.iter().enumerate() {
            rem[top - db + j] -= &c * bj;
        }
        q[top - db] = c;
    }
    debug_assert!(rem.iter().all(|r| *r == 0));
    q
}

#[derive(Debug)]
struct Inner {
    d: u64,
    degree: usize,
    modulus: Vec<Integer>,
    /// `x^k mod Φ_d` for `k < 2·degree − 1`.
    powers: Vec<Vec<Integer>>,
}

/// The cyclotomic field ℚ(ζ_d) = ℚ[x]/(Φ_d(x)), with `ζ_d ↦ x`.
#[derive(Clone, Debug)]
pub struct Cyclotomic(Arc<Inner>);

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.0.d == other.0.d
    }
}

/// Element of ℚ(ζ_d): coordinates in the power basis `1, ζ, …, ζ^(φ(d)−1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    coords: SmallVec<[BigRat; 2]>,
}

impl CycNum {
    pub fn coords(&self) -> &[BigRat] {
        &self.coords
    }
}

impl Cyclotomic {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d = {d} must be at least 2")));
        }
        let modulus = cyclotomic_poly(d);
        let degree = euler_phi(d) as usize;
        debug_assert_eq!(modulus.len(), degree + 1);
        let mut powers: Vec<Vec<Integer>> = Vec::new();
        let mut cur = vec![Integer::new(); degree];
        cur[0] = Integer::from(1);
        for _ in 0..(2 * degree).saturating_sub(1).max(2) {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1].clone();
            let mut next = vec![Integer::new(); degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1].clone();
            }
            for (i, m) in modulus.iter().take(degree).enumerate() {
                next[i] -= &top * m;
            }
            cur = next;
        }
        Ok(Cyclotomic(Arc::new(Inner {
            d,
            degree,
            modulus,
            powers,
        })))
    }

    pub fn d(&self) -> u64 {
        self.0.d
    }

    /// `φ(d)`, the number of coordinates of an element.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[Integer] {
        &self.0.modulus
    }

    pub fn from_rational(&self, r: BigRat) -> CycNum {
        let mut coords: SmallVec<[BigRat; 2]> = SmallVec::new();
        coords.push(r);
        coords.resize(self.0.degree, BigRat::zero());
        CycNum { coords }
    }

    /// The element `Σ c_i ζ^i`; input longer than `φ(d)` is reduced.
    pub fn from_power_coeffs(&self, coeffs: &[BigRat]) -> CycNum {
        let deg = self.0.degree;
        let mut coords: SmallVec<[BigRat; 2]> = SmallVec::from_elem(BigRat::zero(), deg);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xk = self.x_pow(k);
            for (t, coord) in coords.iter_mut().enumerate() {
                if xk[t] != 0 {
                    coord.mul_add_assign(c, &BigRat::from_integer(xk[t].clone()));
                }
            }
        }
        CycNum { coords }
    }

    fn x_pow(&self, k: usize) -> Vec<Integer> {
        if let Some(v) = self.0.powers.get(k) {
            return v.clone();
        }
        let mut cur = self.0.powers.last().unwrap().clone();
        let deg = self.0.degree;
        for _ in self.0.powers.len() - 1..k {
            let top = cur[deg - 1].clone();
            let mut next = vec![Integer::new(); deg];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1].clone();
            }
            for (i, m) in self.0.modulus.iter().take(deg).enumerate() {
                next[i] -= &top * m;
            }
            cur = next;
        }
        cur
    }

    /// Rational value if the element lies in ℚ.
    pub fn as_rational(&self, a: &CycNum) -> Option<BigRat> {
        if a.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(a.coords[0].clone())
        } else {
            None
        }
    }

    fn check(&self, a: &CycNum) {
        debug_assert_eq!(a.coords.len(), self.0.degree);
    }
}

impl Field for Cyclotomic {
    type Elem = CycNum;

    fn zero(&self) -> CycNum {
        self.from_rational(BigRat::zero())
    }
    fn one(&self) -> CycNum {
        self.from_rational(BigRat::one())
    }
    fn from_i64(&self, v: i64) -> CycNum {
        self.from_rational(BigRat::from_i64(v))
    }
    fn from_integer(&self, v: &Integer) -> CycNum {
        self.from_rational(BigRat::from_integer(v.clone()))
    }
    fn is_zero(&self, a: &CycNum) -> bool {
        a.coords.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        self.check(a);
        self.check(b);
        CycNum {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        CycNum {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }
    fn neg(&self, a: &CycNum) -> CycNum {
        CycNum {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        let mut out = self.zero();
        self.mul_add_assign(&mut out, a, b);
        out
    }
    fn inv(&self, a: &CycNum) -> Option<CycNum> {
        if self.is_zero(a) {
            return None;
        }
        let n = self.0.degree;
        // columns: a·ζ^j; solve M v = e_0
        let mut cols = Vec::with_capacity(n);
        let mut basis = self.zero();
        for j in 0..n {
            let mut e = vec![BigRat::zero(); n];
            e[j] = BigRat::one();
            basis.coords = e.into_iter().collect();
            cols.push(self.mul(a, &basis));
        }
        let mut m: Vec<Vec<BigRat>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRat> = (0..n).map(|j| cols[j].coords[i].clone()).collect();
                row.push(if i == 0 { BigRat::one() } else { BigRat::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let pinv = m[col][col].recip()?;
            for x in m[col].iter_mut() {
                *x = &*x * &pinv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=n {
                        let t = &f * &m[col][k];
                        m[r][k] = &m[r][k] - &t;
                    }
                }
            }
        }
        Some(CycNum {
            coords: m.into_iter().map(|row| row[n].clone()).collect(),
        })
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_coords(&self, a: &CycNum) -> Vec<String> {
        a.coords.iter().map(|c| c.to_string()).collect()
    }
    fn from_coords(&self, coords: &[&str]) -> Result<CycNum> {
        if coords.len() != self.0.degree {
            return Err(Error::Parse(format!(
                "expected {} coordinates for Q(zeta_{}), got {}",
                self.0.degree,
                self.0.d,
                coords.len()
            )));
        }
        Ok(CycNum {
            coords: coords.iter().map(|c| c.parse()).collect::<Result<_>>()?,
        })
    }
    fn add_assign(&self, a: &mut CycNum, b: &CycNum) {
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            x.add_assign_ref(y);
        }
    }
    fn sub_assign(&self, a: &mut CycNum, b: &CycNum) {
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            x.sub_assign_ref(y);
        }
    }
    fn mul_add_assign(&self, acc: &mut CycNum, a: &CycNum, b: &CycNum) {
        self.mul_acc(acc, a, b, false);
    }
    fn mul_sub_assign(&self, acc: &mut CycNum, a: &CycNum, b: &CycNum) {
        self.mul_acc(acc, a, b, true);
    }
}

impl Cyclotomic {
    fn mul_acc(&self, acc: &mut CycNum, a: &CycNum, b: &CycNum, negate: bool) {
        let n = self.0.degree;
        if n == 1 {
            if negate {
                acc.coords[0].mul_sub_assign(&a.coords[0], &b.coords[0]);
            } else {
                acc.coords[0].mul_add_assign(&a.coords[0], &b.coords[0]);
            }
            return;
        }
        let mut conv = vec![BigRat::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j].mul_add_assign(x, y);
                }
            }
        }
        for (k, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xk = &self.0.powers[k];
            for (t, coord) in acc.coords.iter_mut().enumerate() {
                if xk[t] == 0 {
                    continue;
                }
                let w = BigRat::from_integer(xk[t].clone());
                if negate {
                    coord.mul_sub_assign(c, &w);
                } else {
                    coord.mul_add_assign(c, &w);
                }
            }
        }
    }
}

impl RootsOfUnity for Cyclotomic {
    fn zeta(&self) -> CycNum {
        self.from_power_coeffs(&[BigRat::zero(), BigRat::one()])
    }
    fn zeta_order(&self) -> u64 {
        self.0.d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn d2_degenerates_to_rationals() {
        let k = Cyclotomic::new(2).unwrap();
        assert_eq!(k.degree(), 1);
        assert_eq!(k.zeta(), k.from_i64(-1));
        assert_eq!(k.nontrivial_roots(), vec![k.from_i64(-1)]);
    }

    #[test]
    fn d3_relation() {
        let k = Cyclotomic::new(3).unwrap();
        let z = k.zeta();
        let s = k.add(&k.add(&k.mul(&z, &z), &z), &k.one());
        assert!(k.is_zero(&s));
        assert_eq!(k.pow(&z, 3), k.one());
    }

    #[test]
    fn d4_relation() {
        let k = Cyclotomic::new(4).unwrap();
        let z = k.zeta();
        assert_eq!(k.mul(&z, &z), k.from_i64(-1));
        assert_eq!(k.nontrivial_roots().len(), 3);
        assert_eq!(k.nontrivial_roots()[1], k.from_i64(-1));
    }

    #[test]
    fn inverses() {
        for d in [3u64, 4, 5, 7, 12] {
            let k = Cyclotomic::new(d).unwrap();
            let z = k.zeta();
            let a = k.add(&k.add(&z, &k.from_i64(3)), &k.mul(&z, &z));
            let ai = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &ai), k.one(), "d = {d}");
            assert_eq!(k.pow(&z, d), k.one());
        }
    }
}
