//! Slice-level kernels for dense univariate coefficient vectors
//! (constant term first). Everything above is built on these.

use crate::ring::Field;

pub(crate) fn trim<F: Field>(ring: &F, v: &mut Vec<F::Elem>) {
    while let Some(last) = v.last() {
        if ring.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
}

/// `acc += a · x^shift`
pub(crate) fn add_shifted<F: Field>(ring: &F, acc: &mut Vec<F::Elem>, a: &[F::Elem], shift: usize) {
    if acc.len() < a.len() + shift {
        acc.resize(a.len() + shift, ring.zero());
    }
    for (x, y) in acc[shift..].iter_mut().zip(a) {
        ring.add_assign(x, y);
    }
}

pub(crate) fn sub_shifted<F: Field>(ring: &F, acc: &mut Vec<F::Elem>, a: &[F::Elem], shift: usize) {
    if acc.len() < a.len() + shift {
        acc.resize(a.len() + shift, ring.zero());
    }
    for (x, y) in acc[shift..].iter_mut().zip(a) {
        ring.sub_assign(x, y);
    }
}

/// Nonzero entries of `v` as `(exponent, coefficient)` pairs.
pub(crate) fn support<F: Field>(ring: &F, v: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `acc ± dense · sparse`; the sparse operand drives the outer loop so the
/// long dense operand streams through cache once per sparse term.
pub(crate) fn mul_acc_sparse<F: Field>(
    ring: &F,
    acc: &mut Vec<F::Elem>,
    dense: &[F::Elem],
    sparse: &[(usize, F::Elem)],
    negate: bool,
) {
    if dense.is_empty() || sparse.is_empty() {
        return;
    }
    let need = dense.len() + sparse.last().unwrap().0;
    if acc.len() < need {
        acc.resize(need, ring.zero());
    }
    for (t, coef) in sparse {
        let window = &mut acc[*t..*t + dense.len()];
        if ring.is_one(coef) {
            if negate {
                for (x, y) in window.iter_mut().zip(dense) {
                    ring.sub_assign(x, y);
                }
            } else {
                for (x, y) in window.iter_mut().zip(dense) {
                    ring.add_assign(x, y);
                }
            }
        } else if negate {
            for (x, y) in window.iter_mut().zip(dense) {
                ring.mul_sub_assign(x, y, coef);
            }
        } else {
            for (x, y) in window.iter_mut().zip(dense) {
                ring.mul_add_assign(x, y, coef);
            }
        }
    }
}

/// `acc ± a · b`
pub(crate) fn mul_acc<F: Field>(
    ring: &F,
    acc: &mut Vec<F::Elem>,
    a: &[F::Elem],
    b: &[F::Elem],
    negate: bool,
) {
    let sa = a.iter().filter(|c| !ring.is_zero(c)).count();
    let sb = b.iter().filter(|c| !ring.is_zero(c)).count();
    if sa <= sb {
        mul_acc_sparse(ring, acc, b, &support(ring, a), negate);
    } else {
        mul_acc_sparse(ring, acc, a, &support(ring, b), negate);
    }
}

pub(crate) fn mul<F: Field>(ring: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = Vec::new();
    mul_acc(ring, &mut out, a, b, false);
    trim(ring, &mut out);
    out
}

pub(crate) fn scale<F: Field>(ring: &F, a: &[F::Elem], s: &F::Elem) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = a.iter().map(|x| ring.mul(x, s)).collect();
    trim(ring, &mut out);
    out
}

/// Division with remainder by a nonzero divisor over a field.
pub(crate) fn div_rem<F: Field>(
    ring: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    debug_assert!(!b.is_empty() && !ring.is_zero(b.last().unwrap()));
    let mut rem = a.to_vec();
    trim(ring, &mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lc_inv = ring.inv(&b[db]).expect("nonzero leading coefficient");
    let monic = ring.is_one(&b[db]);
    let tail = support(ring, &b[..db]);
    let mut quo = vec![ring.zero(); rem.len() - db];
    for top in (db..rem.len()).rev() {
        if ring.is_zero(&rem[top]) {
            continue;
        }
        let qc = if monic {
            rem[top].clone()
        } else {
            ring.mul(&rem[top], &lc_inv)
        };
        for (j, bj) in &tail {
            ring.mul_sub_assign(&mut rem[top - db + j], &qc, bj);
        }
        rem[top] = ring.zero();
        quo[top - db] = qc;
    }
    rem.truncate(db);
    trim(ring, &mut rem);
    trim(ring, &mut quo);
    (quo, rem)
}

pub(crate) fn eval<F: Field>(ring: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = ring.zero();
    for c in a.iter().rev() {
        acc = ring.mul(&acc, x);
        ring.add_assign(&mut acc, c);
    }
    acc
}
