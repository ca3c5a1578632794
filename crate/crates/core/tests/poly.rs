use dynatomic::poly::{from_text, gcd_uni, squarefree, to_text, BivarPoly, UniPoly};
use dynatomic::ring::{Field, FqCtx, Rationals};
use proptest::prelude::*;

type Terms = Vec<(usize, usize, i64)>;

fn terms(max_i: usize, max_j: usize, len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((0..=max_i, 0..=max_j, -5i64..=5), 0..len)
}

fn q(t: &Terms) -> BivarPoly<Rationals> {
    BivarPoly::from_i64_terms(Rationals, t)
}

/// Monic in `z` of degree `deg`, with lower terms from `t`.
fn monic(deg: usize, t: &Terms) -> BivarPoly<Rationals> {
    let mut all: Terms = t.iter().filter(|x| x.0 < deg).cloned().collect();
    all.push((deg, 0, 1));
    q(&all)
}

/// Coefficient-by-coefficient evaluation of `p(g(z, c), c)`: an oracle
/// for the composition routines.
fn compose_naive(p: &BivarPoly<Rationals>, g: &BivarPoly<Rationals>) -> BivarPoly<Rationals> {
    let mut acc = BivarPoly::zero(Rationals);
    for (i, j, a) in p.terms() {
        let mono = BivarPoly::from_terms(Rationals, vec![(0, j, a.clone())]);
        acc = acc.add(&mono.mul(&g.pow(i as u32)).unwrap()).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in terms(4, 3, 6), b in terms(4, 3, 6), c in terms(4, 3, 6)) {
        let (a, b, c) = (q(&a), q(&b), q(&c));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exact_div_round_trip(a in terms(4, 3, 6), deg in 1usize..4, b in terms(3, 3, 5)) {
        let a = q(&a);
        let b = monic(deg, &b);
        let prod = a.mul(&b).unwrap();
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn exact_div_rejects_remainders(a in terms(4, 3, 6), deg in 1usize..4, b in terms(3, 3, 5)) {
        let a = q(&a);
        let b = monic(deg, &b);
        let shifted = a.mul(&b).unwrap().add(&BivarPoly::one(Rationals)).unwrap();
        prop_assert!(shifted.exact_div(&b).is_err());
    }

    #[test]
    fn compose_associative(p in terms(3, 2, 5), g in terms(2, 2, 4), h in terms(2, 1, 4)) {
        let (p, g, h) = (q(&p), q(&g), q(&h));
        let left = p.compose_z(&g).unwrap().compose_z(&h).unwrap();
        let right = p.compose_z(&g.compose_z(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn compose_matches_naive(p in terms(4, 2, 6), g in terms(2, 2, 4)) {
        let (p, g) = (q(&p), q(&g));
        prop_assert_eq!(p.compose_z(&g).unwrap(), compose_naive(&p, &g));
    }

    #[test]
    fn zd_plus_c_matches_compose(p in terms(4, 3, 6), d in 2usize..5) {
        let p = q(&p);
        let f = q(&vec![(d, 0, 1), (0, 1, 1)]);
        prop_assert_eq!(p.compose_zd_plus_c(d), compose_naive(&p, &f));
    }

    #[test]
    fn scale_z_is_substitution(p in terms(5, 3, 6), s in -4i64..5) {
        let p = q(&p);
        let lam = Rationals.from_i64(s);
        let g = q(&vec![(1, 0, s)]);
        prop_assert_eq!(p.scale_z(&lam), compose_naive(&p, &g));
    }

    #[test]
    fn text_round_trip(p in terms(6, 4, 10)) {
        let p = q(&p);
        prop_assert_eq!(from_text(Rationals, &to_text(&p)).unwrap(), p);
    }

    #[test]
    fn text_round_trip_fq(xs in prop::collection::vec((0usize..5, 0usize..4, any::<u64>()), 0..10)) {
        let k = FqCtx::new(2, 7).unwrap();
        let t = xs.iter().map(|&(i, j, x)| (i, j, k.element(x % k.q()))).collect();
        let p = BivarPoly::from_terms(k.clone(), t);
        prop_assert_eq!(from_text(k, &to_text(&p)).unwrap(), p);
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(-6i64..6, 1..6), b in prop::collection::vec(-6i64..6, 1..6), g in prop::collection::vec(-6i64..6, 2..4)) {
        let g = UniPoly::from_i64s(Rationals, &g);
        prop_assume!(!g.is_zero() && g.degree() > Some(0));
        let a = UniPoly::from_i64s(Rationals, &a).mul(&g).unwrap();
        let b = UniPoly::from_i64s(Rationals, &b).mul(&g).unwrap();
        prop_assume!(!a.is_zero() && !b.is_zero());
        let h = gcd_uni(&a, &b).unwrap();
        prop_assert!(h.divides(&a).unwrap());
        prop_assert!(h.divides(&b).unwrap());
        prop_assert!(g.divides(&h).unwrap());
    }

    #[test]
    fn squares_are_not_squarefree(a in prop::collection::vec(-6i64..6, 2..5)) {
        let a = UniPoly::from_i64s(Rationals, &a);
        prop_assume!(a.degree() > Some(0));
        prop_assert!(!squarefree(&a.mul(&a).unwrap()));
    }

    #[test]
    fn eval_c_then_eval_z(p in terms(4, 3, 6), c0 in -3i64..4, z0 in -3i64..4) {
        let p = q(&p);
        let (c0, z0) = (Rationals.from_i64(c0), Rationals.from_i64(z0));
        let by_c = p.eval_c(&c0).eval(&z0);
        let by_z = p.eval_z(&UniPoly::constant(Rationals, z0.clone())).unwrap().eval(&c0);
        prop_assert_eq!(by_c, by_z);
    }
}

#[test]
fn pretty_and_text_format() {
    let p = q(&vec![(2, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)]);
    assert_eq!(p.pretty(), "z^2 + z + c + 1");
    assert_eq!(to_text(&p), "[1] z^2 c^0\n[1] z^1 c^0\n[1] z^0 c^1\n[1] z^0 c^0\n");
    assert_eq!(to_text(&BivarPoly::zero(Rationals)), "");
    assert!(from_text(Rationals, "[1] z^2").is_err());
    assert!(from_text(Rationals, "garbage").is_err());
}

#[test]
fn mismatched_contexts_are_rejected() {
    let a = BivarPoly::z(FqCtx::new(3, 2).unwrap());
    let b = BivarPoly::z(FqCtx::new(5, 2).unwrap());
    assert!(a.add(&b).is_err());
    assert!(a.mul(&b).is_err());
}
