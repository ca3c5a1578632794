//! Exact coefficient fields: the rationals, cyclotomic fields and small
//! finite fields, behind one [`Field`] trait that the polynomial layer is
//! generic over.

mod arith;
mod cyclotomic;
mod fq;
mod rational;

pub use arith::{divisors, euler_phi, factorize, is_prime, moebius};
pub use cyclotomic::{cyclotomic_poly, CycNum, Cyclotomic};
pub use fq::{FqCtx, FqElem, MAX_EXT_DEGREE};
pub use rational::{BigRat, Rationals};

use std::fmt::Debug;

use rug::Integer;

use crate::error::Result;

/// A field whose elements are plain values and whose operations go through
/// a (cheaply clonable) context.
///
/// Element equality must be structural equality of canonical forms.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_integer(&self, v: &Integer) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for the rationals and cyclotomic fields, `p` for `F_q`.
    fn characteristic(&self) -> u64;

    /// Coordinate vector of decimal strings.
    fn to_coords(&self, a: &Self::Elem) -> Vec<String>;
    fn from_coords(&self, coords: &[&str]) -> Result<Self::Elem>;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn sub_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        self.add_assign(acc, &t);
    }

    /// `acc -= a * b`
    fn mul_sub_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        self.sub_assign(acc, &t);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Fields that contain the `d`-th roots of unity for the family parameter `d`.
pub trait RootsOfUnity: Field {
    /// The chosen primitive `d`-th root of unity.
    fn zeta(&self) -> Self::Elem;

    /// The order `d` of [`RootsOfUnity::zeta`].
    fn zeta_order(&self) -> u64;

    /// `μ_d − {1}` as `[ζ^1, ζ^2, …, ζ^(d−1)]`.
    fn nontrivial_roots(&self) -> Vec<Self::Elem> {
        let z = self.zeta();
        let mut out = Vec::new();
        let mut cur = z.clone();
        for _ in 1..self.zeta_order() {
            out.push(cur.clone());
            cur = self.mul(&cur, &z);
        }
        out
    }
}
