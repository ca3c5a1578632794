use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rug::ops::DivRounding;
use rug::{Assign, Integer};

use super::Field;
use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
///
/// Integral values (denominator 1) take allocation-light fast paths; the
/// dynatomic polynomials are integral, so the hot kernels never normalize.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigRat {
    num: Integer,
    den: Integer,
}

impl BigRat {
    pub fn new(num: Integer, den: Integer) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        let mut r = BigRat { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_integer(num: Integer) -> Self {
        BigRat {
            num,
            den: Integer::from(1),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_integer(Integer::from(v))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn numer(&self) -> &Integer {
        &self.num
    }

    pub fn denom(&self) -> &Integer {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.num = -std::mem::take(&mut self.num);
            self.den = -std::mem::take(&mut self.den);
        }
        if self.den == 1 {
            return;
        }
        if self.num == 0 {
            self.den.assign(1);
            return;
        }
        let g = Integer::from(self.num.gcd_ref(&self.den));
        if g != 1 {
            self.num.div_exact_mut(&g);
            self.den.div_exact_mut(&g);
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut r = BigRat {
            num: self.den.clone(),
            den: self.num.clone(),
        };
        r.normalize();
        Some(r)
    }

    /// Largest integer `≤ self`.
    pub fn floor(&self) -> Integer {
        if self.is_integer() {
            return self.num.clone();
        }
        self.num.clone().div_floor(self.den.clone())
    }

    /// Smallest integer `≥ self`.
    pub fn ceil(&self) -> Integer {
        if self.is_integer() {
            return self.num.clone();
        }
        self.num.clone().div_ceil(self.den.clone())
    }

    /// `acc += a * b` without normalizing when everything is integral.
    pub fn mul_add_assign(&mut self, a: &BigRat, b: &BigRat) {
        if self.den == 1 && a.den == 1 && b.den == 1 {
            self.num += &a.num * &b.num;
        } else {
            *self = &*self + &(a * b);
        }
    }

    pub fn mul_sub_assign(&mut self, a: &BigRat, b: &BigRat) {
        if self.den == 1 && a.den == 1 && b.den == 1 {
            self.num -= &a.num * &b.num;
        } else {
            *self = &*self - &(a * b);
        }
    }

    pub fn add_assign_ref(&mut self, b: &BigRat) {
        if self.den == 1 && b.den == 1 {
            self.num += &b.num;
        } else {
            *self = &*self + b;
        }
    }

    pub fn sub_assign_ref(&mut self, b: &BigRat) {
        if self.den == 1 && b.den == 1 {
            self.num -= &b.num;
        } else {
            *self = &*self - b;
        }
    }
}

impl<'a> Add<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn add(self, rhs: &BigRat) -> BigRat {
        if self.den == 1 && rhs.den == 1 {
            return BigRat::from_integer(Integer::from(&self.num + &rhs.num));
        }
        let num = Integer::from(&self.num * &rhs.den) + &rhs.num * &self.den;
        let den = Integer::from(&self.den * &rhs.den);
        let mut r = BigRat { num, den };
        r.normalize();
        r
    }
}

impl<'a> Sub<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn sub(self, rhs: &BigRat) -> BigRat {
        if self.den == 1 && rhs.den == 1 {
            return BigRat::from_integer(Integer::from(&self.num - &rhs.num));
        }
        let num = Integer::from(&self.num * &rhs.den) - &rhs.num * &self.den;
        let den = Integer::from(&self.den * &rhs.den);
        let mut r = BigRat { num, den };
        r.normalize();
        r
    }
}

impl<'a> Mul<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn mul(self, rhs: &BigRat) -> BigRat {
        if self.den == 1 && rhs.den == 1 {
            return BigRat::from_integer(Integer::from(&self.num * &rhs.num));
        }
        let mut r = BigRat {
            num: Integer::from(&self.num * &rhs.num),
            den: Integer::from(&self.den * &rhs.den),
        };
        r.normalize();
        r
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat {
            num: Integer::from(-&self.num),
            den: self.den.clone(),
        }
    }
}

impl PartialOrd for BigRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigRat {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = Integer::from(&self.num * &other.den);
        let r = Integer::from(&other.num * &self.den);
        l.cmp(&r)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            Integer::from_str(t.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        match s.split_once('/') {
            Some((n, d)) => BigRat::new(parse(n)?, parse(d)?),
            None => Ok(BigRat::from_integer(parse(s)?)),
        }
    }
}

impl From<i64> for BigRat {
    fn from(v: i64) -> Self {
        BigRat::from_i64(v)
    }
}

/// The field ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRat;

    fn zero(&self) -> BigRat {
        BigRat::zero()
    }
    fn one(&self) -> BigRat {
        BigRat::one()
    }
    fn from_i64(&self, v: i64) -> BigRat {
        BigRat::from_i64(v)
    }
    fn from_integer(&self, v: &Integer) -> BigRat {
        BigRat::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRat) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRat) -> bool {
        a.den == 1 && a.num == 1
    }
    fn add(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a + b
    }
    fn sub(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a - b
    }
    fn neg(&self, a: &BigRat) -> BigRat {
        -a
    }
    fn mul(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a * b
    }
    fn inv(&self, a: &BigRat) -> Option<BigRat> {
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_coords(&self, a: &BigRat) -> Vec<String> {
        vec![a.to_string()]
    }
    fn from_coords(&self, coords: &[&str]) -> Result<BigRat> {
        match coords {
            [c] => c.parse(),
            _ => Err(Error::Parse(format!(
                "expected 1 rational coordinate, got {}",
                coords.len()
            ))),
        }
    }
    fn add_assign(&self, a: &mut BigRat, b: &BigRat) {
        a.add_assign_ref(b);
    }
    fn sub_assign(&self, a: &mut BigRat, b: &BigRat) {
        a.sub_assign_ref(b);
    }
    fn mul_add_assign(&self, acc: &mut BigRat, a: &BigRat, b: &BigRat) {
        acc.mul_add_assign(a, b);
    }
    fn mul_sub_assign(&self, acc: &mut BigRat, a: &BigRat, b: &BigRat) {
        acc.mul_sub_assign(a, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRat {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes() {
        let r = BigRat::new(Integer::from(6), Integer::from(-4)).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(q("0/7").to_string(), "0");
        assert!(BigRat::new(Integer::from(1), Integer::from(0)).is_err());
    }

    #[test]
    fn arithmetic_mixes_fast_and_slow_paths() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!(&q("1/2") - &q("1/2"), q("0"));
        assert_eq!(&q("3") * &q("2/3"), q("2"));
        let mut acc = q("1");
        acc.mul_add_assign(&q("2"), &q("3"));
        assert_eq!(acc, q("7"));
        acc.mul_sub_assign(&q("1/2"), &q("1/3"));
        assert_eq!(acc, q("41/6"));
        assert_eq!(q("-7/2").floor(), -4);
        assert_eq!(q("-7/2").ceil(), -3);
        assert_eq!(q("7/2").ceil(), 4);
        assert!(q("1/3") < q("1/2"));
    }
}
