use dynatomic::dynatomic::{iterates, FamilyParams};
use dynatomic::factor::{
    bounded_degree_scan, canonical_factor_list, gauss_bound_ok, ogg_gonality_bound,
    points_above_infinity, reduced_char0_factors, refine_by_scan, scan_candidate_count,
    subset_factor, DEFAULT_SCAN_CAP,
};
use dynatomic::poly::BivarPoly;
use dynatomic::ring::FqCtx;
use dynatomic::Error;

fn f3() -> FqCtx {
    FqCtx::new(3, 2).unwrap()
}

fn fp(k: &FqCtx, t: &[(usize, usize, i64)]) -> BivarPoly<FqCtx> {
    BivarPoly::from_i64_terms(k.clone(), t)
}

#[test]
fn scan_finds_the_quadratic_factors() {
    let k = f3();
    let minus = fp(&k, &[(2, 0, 1), (1, 0, -1), (0, 1, 1)]);
    let plus = fp(&k, &[(2, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)]);
    let s = bounded_degree_scan(&k, 2, 1, 0, DEFAULT_SCAN_CAP).unwrap();
    assert_eq!(s.polys, vec![minus.clone()]);
    let s = bounded_degree_scan(&k, 2, 2, 0, DEFAULT_SCAN_CAP).unwrap();
    assert_eq!(canonical_factor_list(&s.polys), canonical_factor_list(&[minus, plus]));
    for n in 1..=2 {
        assert!(bounded_degree_scan(&k, 1, n, 0, DEFAULT_SCAN_CAP).unwrap().polys.is_empty());
    }
}

#[test]
fn candidate_counts() {
    assert_eq!(scan_candidate_count(3, 2, 1), 3);
    assert_eq!(scan_candidate_count(3, 2, 2), 27);
    assert_eq!(scan_candidate_count(4, 3, 3), 4u128.pow(4));
    let k = f3();
    assert!(matches!(
        bounded_degree_scan(&k, 6, 3, 0, 1000),
        Err(Error::CapExceeded { .. })
    ));
}

/// Brute-force oracle: the product of the returned factors is `f^n − f^m`
/// and each factor has no proper divisor of lower degree.
#[test]
fn subset_factors_are_irreducible_and_complete() {
    for p in [3u64, 5, 7] {
        let k = FqCtx::new(p, 2).unwrap();
        let its = iterates(&FamilyParams::new(2, k.clone()).unwrap(), 3).unwrap();
        for n in 1..=3u64 {
            for m in 0..n.min(2) {
                let r = subset_factor(&k, n, m, 32, 64).unwrap();
                assert!(r.product_ok && r.gauss_bound_ok);
                let mut prod = BivarPoly::one(k.clone());
                for f in &r.polys {
                    prod = prod.mul(f).unwrap();
                    assert!(gauss_bound_ok(f, 2));
                    assert_eq!(refine_by_scan(&k, f, DEFAULT_SCAN_CAP).unwrap().len(), 1);
                }
                assert_eq!(prod, its[n as usize].sub(&its[m as usize]).unwrap());
            }
        }
    }
}

#[test]
fn cubic_over_f4() {
    let k = FqCtx::new(2, 3).unwrap();
    let r = subset_factor(&k, 2, 0, 32, 64).unwrap();
    assert!(r.product_ok);
    assert_eq!(r.degrees.iter().sum::<usize>(), 9);
    let oracle: Vec<_> = reduced_char0_factors(&k, 2, 0)
        .unwrap()
        .iter()
        .flat_map(|f| refine_by_scan(&k, f, DEFAULT_SCAN_CAP).unwrap())
        .collect();
    assert_eq!(canonical_factor_list(&r.polys), canonical_factor_list(&oracle));
}

#[test]
fn ogg_and_points() {
    assert_eq!(points_above_infinity(54, 2).unwrap(), 27);
    assert_eq!(ogg_gonality_bound(54, 2, 3).unwrap(), 7);
    assert_eq!(ogg_gonality_bound(8, 2, 3).unwrap(), 1);
    assert!(points_above_infinity(7, 2).is_err());
}
