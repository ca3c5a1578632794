use dynatomic::dynatomic::{
    check_product_identity, check_zeta_factorization, deg_d0, deg_d1, iterate, phi, phi_mn,
    reduce_mod_p, zeta_component, CurveLabel, FamilyParams, ZetaCheckMode,
};
use dynatomic::poly::BivarPoly;
use dynatomic::ring::{Cyclotomic, Field, FqCtx, Rationals};
use dynatomic::Error;
use proptest::prelude::*;

fn params(d: u64) -> FamilyParams<Rationals> {
    FamilyParams::new(d, Rationals).unwrap()
}

/// Trial-division Möbius function.
fn mu(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn oracle_d1(d: u64, n: u64) -> i128 {
    (1..=n)
        .filter(|e| n % e == 0)
        .map(|e| mu(n / e) as i128 * (d as i128).pow(e as u32))
        .sum()
}

/// `Φ_n` by repeated division of `f^n − z` by `Φ_e` for proper divisors.
fn oracle_phi(d: u64, n: u64) -> BivarPoly<Rationals> {
    let f = BivarPoly::from_i64_terms(Rationals, &[(d as usize, 0, 1), (0, 1, 1)]);
    let mut it = BivarPoly::z(Rationals);
    for _ in 0..n {
        it = f.compose_z(&it).unwrap();
    }
    let mut p = it.sub(&BivarPoly::z(Rationals)).unwrap();
    for e in (1..n).filter(|e| n % e == 0) {
        p = p.exact_div(&oracle_phi(d, e)).unwrap();
    }
    p
}

#[test]
fn quadratic_small_cases() {
    let p = params(2);
    assert_eq!(phi(&p, 1).unwrap().pretty(), "z^2 - z + c");
    assert_eq!(phi(&p, 2).unwrap().pretty(), "z^2 + z + c + 1");
}

#[test]
fn phi_matches_division_oracle() {
    for d in 2..=3 {
        for n in 1..=4 {
            assert_eq!(phi(&params(d), n).unwrap(), oracle_phi(d, n), "d={d} n={n}");
        }
    }
}

#[test]
fn degrees_match_moebius_oracle() {
    for d in 2..=5 {
        for n in 1..=10 {
            assert_eq!(deg_d1(d, n) as i128, oracle_d1(d, n), "d={d} n={n}");
            assert_eq!(deg_d0(d, n) * n as u128, deg_d1(d, n));
        }
    }
    assert_eq!(deg_d1(2, 6), 54);
    assert_eq!(deg_d0(2, 6), 9);
}

#[test]
fn phi_shape() {
    for d in 2..=3 {
        for n in 1..=4 {
            let f = phi(&params(d), n).unwrap();
            assert!(f.is_monic_z());
            assert_eq!(f.deg_z().unwrap() as u128, deg_d1(d, n));
            assert_eq!(f.deg_c().unwrap() as u128 * d as u128, deg_d1(d, n));
        }
    }
}

#[test]
fn product_identity_small() {
    for d in 2..=4 {
        for n in 1..=4 {
            assert!(check_product_identity(&params(d), n).unwrap());
        }
    }
}

/// Points of exact period `n` in `F_p` are roots of `Φ_n`.
#[test]
fn exact_period_points_are_roots() {
    let p = 101u64;
    let k = FqCtx::new(p, 2).unwrap();
    for d in [2u64, 4, 5] {
        let fam = FamilyParams::new(d, k.clone()).unwrap();
        let phis: Vec<_> = (1..=4).map(|n| phi(&fam, n).unwrap()).collect();
        for c0 in 0..p {
            let fc = |z: u64| (mod_pow(z, d, p) + c0) % p;
            for z0 in 0..p {
                let mut z = z0;
                let mut period = None;
                for t in 1..=4 {
                    z = fc(z);
                    if z == z0 {
                        period = Some(t);
                        break;
                    }
                }
                if let Some(n) = period {
                    let val = phis[n as usize - 1].eval_c(&k.from_i64(c0 as i64)).eval(&k.from_i64(z0 as i64));
                    assert!(k.is_zero(&val), "d={d} c={c0} z={z0} n={n}");
                }
            }
        }
    }
}

fn mod_pow(b: u64, e: u64, p: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % p)
}

#[test]
fn phi_mn_degree_and_quotient() {
    for d in 2..=3u64 {
        for m in 1..=2 {
            for n in 1..=3 {
                let fam = params(d);
                let q = phi_mn(&fam, m, n).unwrap();
                let expect = deg_d1(d, n) * (d as u128).pow(m as u32 - 1) * (d as u128 - 1);
                assert_eq!(q.deg_z().unwrap() as u128, expect);
                let fm1 = iterate(&fam, m - 1).unwrap();
                let fm = iterate(&fam, m).unwrap();
                let phin = phi(&fam, n).unwrap();
                let lhs = q.mul(&phin.compose_z(&fm1).unwrap()).unwrap();
                assert_eq!(lhs, phin.compose_z(&fm).unwrap());
            }
        }
    }
}

#[test]
fn zeta_factorization_small() {
    for d in 2..=3 {
        let fam = FamilyParams::new(d, Cyclotomic::new(d).unwrap()).unwrap();
        for m in 1..=2 {
            for n in 1..=2 {
                let r = check_zeta_factorization(&fam, m, n, u128::MAX).unwrap();
                assert!(r.holds);
                assert_eq!(r.mode, ZetaCheckMode::Explicit);
            }
        }
    }
}

#[test]
fn zeta_factorization_over_finite_field() {
    for (p, d) in [(3u64, 2u64), (2, 3), (5, 4)] {
        let fam = FamilyParams::new(d, FqCtx::new(p, d).unwrap()).unwrap();
        for m in 1..=2 {
            for n in 1..=2 {
                assert!(check_zeta_factorization(&fam, m, n, u128::MAX).unwrap().holds);
            }
        }
    }
}

#[test]
fn substitution_mode_agrees_with_explicit() {
    let fam = FamilyParams::new(3, Cyclotomic::new(3).unwrap()).unwrap();
    let a = check_zeta_factorization(&fam, 2, 2, u128::MAX).unwrap();
    let b = check_zeta_factorization(&fam, 2, 2, 0).unwrap();
    assert_eq!(a.mode, ZetaCheckMode::Explicit);
    assert_eq!(b.mode, ZetaCheckMode::Substitution);
    assert!(a.holds && b.holds);
}

#[test]
fn component_degree() {
    let fam = FamilyParams::new(3, Cyclotomic::new(3).unwrap()).unwrap();
    for j in 1..3 {
        let c = zeta_component(&fam, 2, 2, j).unwrap();
        assert_eq!(c.deg_z().unwrap() as u128, deg_d1(3, 2) * 3);
    }
    assert!(zeta_component(&fam, 2, 2, 0).is_err());
    assert!(zeta_component(&fam, 2, 2, 3).is_err());
}

#[test]
fn labels() {
    assert_eq!(CurveLabel::periodic(5).unwrap().to_string(), "Y1(5)");
    assert_eq!(CurveLabel::component(3, 2, 4, 1).unwrap().to_string(), "Y1(2,4)^zeta^1");
    assert!(CurveLabel::periodic(0).is_err());
}

#[test]
fn bad_parameters() {
    assert!(matches!(FamilyParams::new(1, Rationals), Err(Error::InvalidParameter(_))));
    assert!(matches!(
        FamilyParams::new(2, FqCtx::new(2, 3).unwrap()),
        Err(Error::WildCharacteristic { p: 2, d: 2 })
    ));
    let capped = params(3).with_degree_cap(100);
    assert!(matches!(phi(&capped, 6), Err(Error::DegreeCap { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Reducing `Φ_n` over `ℚ` commutes with computing it over `F_q`.
    #[test]
    fn reduction_commutes(d in 2u64..4, n in 1u64..4, p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        let k = FqCtx::new(p, d).unwrap();
        let over_q = phi(&params(d), n).unwrap();
        let direct = phi(&FamilyParams::new(d, k.clone()).unwrap(), n).unwrap();
        prop_assert_eq!(reduce_mod_p(&over_q, &k).unwrap(), direct);
    }
}
