use std::fmt;
use std::sync::Arc;

use rug::Integer;
use serde::Serialize;

use super::arith::{factorize, is_prime};
use super::cyclotomic::{CycNum, Cyclotomic};
use super::rational::BigRat;
use super::{Field, RootsOfUnity};
use crate::error::{Error, Result};

/// Largest extension degree `k` supported by the inline element layout.
pub const MAX_EXT_DEGREE: usize = 6;

/// Element of `F_q` as `k` residues mod `p` in the basis `1, x, …, x^(k−1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FqElem {
    c: [u32; MAX_EXT_DEGREE],
}

impl FqElem {
    pub fn coords(&self, k: usize) -> &[u32] {
        &self.c[..k]
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).unwrap_or(0);
        write!(f, "{:?}", &self.c[..=last])
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    d: u64,
    k: usize,
    q: u64,
    /// monic, constant term first, length k + 1
    modulus: Vec<u64>,
    gen_zeta: FqElem,
}

/// The finite field `F_q = F_p(μ_d)`: `k` is the least positive integer with
/// `d | p^k − 1`, and the modulus is the lexicographically smallest monic
/// irreducible polynomial of degree `k` (coefficients compared from `x^(k−1)`
/// down to the constant term).
#[derive(Clone, Debug)]
pub struct FqCtx(Arc<Inner>);

impl PartialEq for FqCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.d == other.0.d && self.0.modulus == other.0.modulus)
    }
}

/// Serializable description `(p, k, modulus, gen_zeta)`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FqCtxInfo {
    pub p: u64,
    pub d: u64,
    pub k: usize,
    pub q: u64,
    pub modulus: Vec<String>,
    pub gen_zeta: Vec<String>,
}

impl FqCtx {
    /// Builds `F_p(μ_d)`. Rejects `p | d` and moduli outside the supported range.
    pub fn new(p: u64, d: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidParameter(format!("p = {p} must be below 2^32")));
        }
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d = {d} must be at least 2")));
        }
        if d % p == 0 {
            return Err(Error::WildCharacteristic { p, d });
        }
        let mut k = 1usize;
        let mut pk_mod_d = p % d;
        while pk_mod_d != 1 % d {
            k += 1;
            pk_mod_d = pk_mod_d * p % d;
            if k > MAX_EXT_DEGREE {
                return Err(Error::InvalidParameter(format!(
                    "F_{p}(mu_{d}) has degree > {MAX_EXT_DEGREE} over F_{p}"
                )));
            }
        }
        let q = (p as u128).pow(k as u32);
        if q >= 1 << 63 {
            return Err(Error::InvalidParameter(format!("q = {p}^{k} is too large")));
        }
        let q = q as u64;
        let modulus = smallest_irreducible(p, k);
        let mut ctx = Inner {
            p,
            d,
            k,
            q,
            modulus,
            gen_zeta: FqElem::default(),
        };
        let tmp = FqCtx(Arc::new(Inner {
            gen_zeta: FqElem::default(),
            modulus: ctx.modulus.clone(),
            ..ctx
        }));
        ctx.gen_zeta = tmp.find_primitive_root(d);
        Ok(FqCtx(Arc::new(ctx)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn d(&self) -> u64 {
        self.0.d
    }
    pub fn k(&self) -> usize {
        self.0.k
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn gen_zeta(&self) -> FqElem {
        self.0.gen_zeta
    }

    pub fn info(&self) -> FqCtxInfo {
        FqCtxInfo {
            p: self.0.p,
            d: self.0.d,
            k: self.0.k,
            q: self.0.q,
            modulus: self.0.modulus.iter().map(|c| c.to_string()).collect(),
            gen_zeta: self.to_coords(&self.0.gen_zeta),
        }
    }

    /// The element whose coordinates are the base-`p` digits of `idx`
    /// (least significant digit = constant coordinate).
    pub fn element(&self, mut idx: u64) -> FqElem {
        let mut e = FqElem::default();
        for i in 0..self.0.k {
            e.c[i] = (idx % self.0.p) as u32;
            idx /= self.0.p;
        }
        e
    }

    pub fn index_of(&self, a: &FqElem) -> u64 {
        (0..self.0.k)
            .rev()
            .fold(0u64, |acc, i| acc * self.0.p + a.c[i] as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.q).map(move |i| self.element(i))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &FqElem) -> u64 {
        let mut n = self.0.q - 1;
        for (r, _) in factorize(self.0.q - 1) {
            while n % r == 0 && self.is_one(&self.pow(a, n / r)) {
                n /= r;
            }
        }
        n
    }

    fn find_primitive_root(&self, d: u64) -> FqElem {
        let e = (self.0.q - 1) / d;
        let primes: Vec<u64> = factorize(d).into_iter().map(|(r, _)| r).collect();
        for idx in 1..self.0.q {
            let b = self.pow(&self.element(idx), e);
            if primes.iter().all(|r| !self.is_one(&self.pow(&b, d / r))) {
                return b;
            }
        }
        unreachable!("F_q^* is cyclic of order divisible by d")
    }

    /// Reduction ℤ_(p) → F_p ⊂ F_q.
    pub fn reduce_rational(&self, r: &BigRat) -> Result<FqElem> {
        let p = Integer::from(self.0.p);
        let den = Integer::from(r.denom() % &p);
        if den == 0 {
            return Err(Error::NotInvertible);
        }
        let num = self.from_integer(r.numer());
        let den = self.from_integer(&den);
        Ok(self.mul(&num, &self.inv(&den).unwrap()))
    }

    /// Reduction ℤ_(p)[ζ_d] → F_q sending `ζ_d` to [`FqCtx::gen_zeta`].
    pub fn reduce_cyclotomic(&self, k: &Cyclotomic, a: &CycNum) -> Result<FqElem> {
        if k.d() != self.0.d {
            return Err(Error::MismatchedContexts);
        }
        let mut acc = self.zero();
        let mut zpow = self.one();
        for c in a.coords() {
            let r = self.reduce_rational(c)?;
            acc = self.add(&acc, &self.mul(&r, &zpow));
            zpow = self.mul(&zpow, &self.0.gen_zeta);
        }
        Ok(acc)
    }

    #[inline]
    fn mulmod(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0.p) as u32
    }
}

impl Field for FqCtx {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem::default()
    }
    fn one(&self) -> FqElem {
        let mut e = FqElem::default();
        e.c[0] = 1;
        e
    }
    fn from_i64(&self, v: i64) -> FqElem {
        let mut e = FqElem::default();
        e.c[0] = v.rem_euclid(self.0.p as i64) as u32;
        e
    }
    fn from_integer(&self, v: &Integer) -> FqElem {
        let mut e = FqElem::default();
        e.c[0] = v.mod_u(self.0.p as u32);
        e
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.c.iter().all(|&x| x == 0)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p;
        let mut e = FqElem::default();
        for i in 0..self.0.k {
            e.c[i] = ((a.c[i] as u64 + b.c[i] as u64) % p) as u32;
        }
        e
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.0.p;
        let mut e = FqElem::default();
        for i in 0..self.0.k {
            e.c[i] = ((a.c[i] as u64 + p - b.c[i] as u64) % p) as u32;
        }
        e
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.0.p;
        let mut e = FqElem::default();
        for i in 0..self.0.k {
            e.c[i] = ((p - a.c[i] as u64) % p) as u32;
        }
        e
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let k = self.0.k;
        let p = self.0.p;
        let mut e = FqElem::default();
        if k == 1 {
            e.c[0] = self.mulmod(a.c[0], b.c[0]);
            return e;
        }
        let mut conv = [0u64; 2 * MAX_EXT_DEGREE];
        for i in 0..k {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                conv[i + j] = (conv[i + j] + a.c[i] as u64 * b.c[j] as u64) % p;
            }
        }
        let m = &self.0.modulus;
        for top in (k..2 * k - 1).rev() {
            let t = conv[top];
            if t == 0 {
                continue;
            }
            conv[top] = 0;
            for i in 0..k {
                conv[top - k + i] = (conv[top - k + i] + (p - m[i]) * t) % p;
            }
        }
        for i in 0..k {
            e.c[i] = conv[i] as u32;
        }
        e
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.0.q - 2))
        }
    }
    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn to_coords(&self, a: &FqElem) -> Vec<String> {
        a.c[..self.0.k].iter().map(|x| x.to_string()).collect()
    }
    fn from_coords(&self, coords: &[&str]) -> Result<FqElem> {
        if coords.len() != self.0.k {
            return Err(Error::Parse(format!(
                "expected {} coordinates for F_{}, got {}",
                self.0.k,
                self.0.q,
                coords.len()
            )));
        }
        let mut e = FqElem::default();
        for (i, s) in coords.iter().enumerate() {
            let v: u64 = s
                .trim()
                .parse()
                .map_err(|err| Error::Parse(format!("{s:?}: {err}")))?;
            if v >= self.0.p {
                return Err(Error::Parse(format!("{v} is not reduced mod {}", self.0.p)));
            }
            e.c[i] = v as u32;
        }
        Ok(e)
    }
    fn mul_add_assign(&self, acc: &mut FqElem, a: &FqElem, b: &FqElem) {
        if self.0.k == 1 {
            acc.c[0] = ((acc.c[0] as u64 + a.c[0] as u64 * b.c[0] as u64) % self.0.p) as u32;
        } else {
            *acc = self.add(acc, &self.mul(a, b));
        }
    }
    fn mul_sub_assign(&self, acc: &mut FqElem, a: &FqElem, b: &FqElem) {
        if self.0.k == 1 {
            let p = self.0.p;
            let t = a.c[0] as u64 * b.c[0] as u64 % p;
            acc.c[0] = ((acc.c[0] as u64 + p - t) % p) as u32;
        } else {
            *acc = self.sub(acc, &self.mul(a, b));
        }
    }
}

impl RootsOfUnity for FqCtx {
    fn zeta(&self) -> FqElem {
        self.0.gen_zeta
    }
    fn zeta_order(&self) -> u64 {
        self.0.d
    }
}

// ---- small dense polynomials over F_p for the modulus search ----

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lc = fp_pow(m[dm], p - 2, p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let top = r.len() - 1;
        let t = r[top] * inv_lc % p;
        for i in 0..=dm {
            let idx = top - dm + i;
            r[idx] = (r[idx] + (p - m[i]) * t % p) % p;
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
        trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn fp_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x.len() == 1
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    // x^(p^i) mod f
    let mut xp = vec![0u64, 1];
    for _ in 1..=k / 2 {
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if !fp_gcd_is_one(f, &diff, p) {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let total = p.pow(k as u32);
    for idx in 0..total {
        let mut f = Vec::with_capacity(k + 1);
        let mut rest = idx;
        for _ in 0..k {
            f.push(rest % p);
            rest /= p;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}
