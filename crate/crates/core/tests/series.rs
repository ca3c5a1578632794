use dynatomic::factor::local_orbits;
use dynatomic::ring::{Field, FqCtx};
use dynatomic::series::{
    branch_apply, coded_root, dth_root_auto, forward, forward_iterate, verify_splitting,
    BranchCode, TSeries,
};
use proptest::prelude::*;

fn ctx_for(i: usize) -> FqCtx {
    let (p, d) = [(3u64, 2u64), (2, 3), (5, 3), (5, 4), (7, 3)][i];
    FqCtx::new(p, d).unwrap()
}

fn series(k: &FqCtx, lo: i64, xs: &[u64], prec: i64) -> TSeries {
    let c: Vec<_> = xs.iter().map(|&x| k.element(x % k.q())).collect();
    TSeries::new(k.clone(), lo, c, prec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_undoes_each_branch(i in 0usize..5, lo_off in 0i64..4, xs in prop::collection::vec(any::<u64>(), 0..8), sym in 0u32..8) {
        let k = ctx_for(i);
        let d = k.d();
        let lo = -(d as i64) + 1 + lo_off;
        let z = series(&k, lo, &xs, 10);
        let w = branch_apply(&k, d, sym % d as u32, &z).unwrap();
        prop_assert_eq!(w.prec(), z.prec() + d as i64 - 1);
        let back = forward(&w, d);
        prop_assert!(back.agrees_with(&z));
        prop_assert!(back.prec() >= z.prec());
    }

    #[test]
    fn dth_root_powers_back(i in 0usize..5, xs in prop::collection::vec(any::<u64>(), 1..10)) {
        let k = ctx_for(i);
        let d = k.d();
        let mut xs = xs;
        xs[0] = 0;
        // leading coefficient 1, so a d-th root exists
        let mut u = series(&k, 0, &xs, 12);
        u = u.add(&TSeries::monomial(k.clone(), k.one(), 0, 12));
        let g = dth_root_auto(&u, d).unwrap();
        prop_assert!(g.pow(d as u32).agrees_with(&u));
    }

    #[test]
    fn inverse_and_product(i in 0usize..5, lo in -3i64..3, xs in prop::collection::vec(any::<u64>(), 1..8), ys in prop::collection::vec(any::<u64>(), 1..8)) {
        let k = ctx_for(i);
        let mut xs = xs;
        if xs[0] % k.q() == 0 { xs[0] = 1; }
        let a = series(&k, lo, &xs, lo + 12);
        let b = series(&k, 0, &ys, 12);
        let one = TSeries::monomial(k.clone(), k.one(), 0, 6);
        prop_assert!(a.mul(&a.inv().unwrap()).agrees_with(&one));
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
    }

    /// Each coded root with period part `(n, m)` satisfies `f^n = f^m`.
    #[test]
    fn coded_roots_are_preperiodic(i in 0usize..3, n in 1usize..4, m_raw in 0usize..3, seed in any::<u64>()) {
        let k = ctx_for(i);
        let d = k.d();
        let m = m_raw % n;
        let symbols: Vec<u32> = (0..n).map(|t| ((seed >> (3 * t)) % d) as u32).collect();
        let code = BranchCode::for_pair(n, m, symbols).unwrap();
        let prec = 16;
        let r = coded_root(&k, d, &code, prec + (d as i64).pow(n as u32)).unwrap();
        prop_assert_eq!(r.order(), Some(-1));
        let res = forward_iterate(&r, d, n as u64).sub(&forward_iterate(&r, d, m as u64));
        prop_assert!(res.order_bound() >= prec - 2);
    }
}

#[test]
fn splitting_small_grid() {
    for (p, d) in [(3u64, 2u64), (2, 3)] {
        let k = FqCtx::new(p, d).unwrap();
        for n in 1..=2 {
            for m in 0..n.min(2) {
                let r = verify_splitting(&k, n, m, 16).unwrap();
                assert!(r.passed, "p={p} d={d} n={n} m={m}");
                assert_eq!(r.root_count as u128, (d as u128).pow(n as u32));
            }
        }
    }
}

#[test]
fn codes_enumerate_all_symbol_strings() {
    let codes = BranchCode::all_for_pair(3, 2, 1).unwrap();
    assert_eq!(codes.len(), 9);
    assert_eq!(codes[0].to_string(), "[0(0)]");
    assert_eq!(codes[5].to_string(), "[1(2)]");
    assert!(BranchCode::for_pair(2, 2, vec![0, 0]).is_err());
}

#[test]
fn galois_action_permutes_roots() {
    let k = FqCtx::new(5, 2).unwrap();
    let lo = local_orbits(&k, 3, 0, 40).unwrap();
    let mut seen = lo.sigma.clone();
    seen.sort_unstable();
    assert_eq!(seen, (0..8).collect::<Vec<_>>());
    let total: usize = lo.orbits.iter().map(|o| o.len()).sum();
    assert_eq!(total, 8);
    // σ sends the leading coefficient ω to ζ^(−1) ω
    for (i, r) in lo.roots.iter().enumerate() {
        let img = &lo.roots[lo.sigma[i]];
        let expect = k.mul(&r.coeff(-1), &k.inv(&k.gen_zeta()).unwrap());
        assert_eq!(img.coeff(-1), expect);
    }
}
