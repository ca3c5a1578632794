use dynatomic::bounds::{
    castelnuovo_severi, finite_field_constant_bound, preperiodic_count_bound, tower_recursion,
    x0_case_bounds, x0_genus_leading_term, BoundMode, GenusInput, TowerInput,
};
use dynatomic::dynatomic::{deg_d0, iterates, FamilyParams};
use dynatomic::ring::Rationals;
use proptest::prelude::*;

proptest! {
    #[test]
    fn cs_symmetric(g1 in 0u64..10_000, g2 in 0u64..10_000, d1 in 1u64..1000, d2 in 1u64..1000) {
        prop_assert_eq!(castelnuovo_severi(g1, g2, d1, d2).unwrap(), castelnuovo_severi(g2, g1, d2, d1).unwrap());
    }

    #[test]
    fn cs_monotone(g1 in 0u64..10_000, g2 in 0u64..10_000, d1 in 1u64..1000, d2 in 1u64..1000) {
        let base = castelnuovo_severi(g1, g2, d1, d2).unwrap();
        prop_assert!(castelnuovo_severi(g1 + 1, g2, d1, d2).unwrap() > base);
        prop_assert!(castelnuovo_severi(g1, g2, d1 + 1, d2).unwrap() >= base);
    }

    #[test]
    fn x0_bound_at_most_d0(d in 2u64..5, n in 2u64..9, g in 0u64..100_000) {
        prop_assume!(deg_d0(d, n) > 1);
        let r = x0_case_bounds(d, n, GenusInput::Supplied(g)).unwrap();
        let v: u128 = r.value.parse().unwrap();
        prop_assert!(v >= 1 && v <= deg_d0(d, n));
        prop_assert_eq!(r.mode, BoundMode::UserSuppliedGenus);
    }

    #[test]
    fn tower_doubles_at_most(d in 2u64..5, n in 1u64..5, gamma1 in 1u64..50) {
        let steps = tower_recursion(d, n, gamma1, &TowerInput::Ramification, 8).unwrap();
        let mut prev = gamma1 as u128;
        for s in steps {
            let g: u128 = s.gamma.parse().unwrap();
            prop_assert!(g <= 2 * prev && g >= 1);
            prev = g;
        }
    }
}

#[test]
fn x0_examples() {
    // g = 10, D0 = 9: 1 + ⌈10/8⌉ = 3
    assert_eq!(x0_case_bounds(2, 6, GenusInput::Supplied(10)).unwrap().value, "3");
    // huge genus: case I wins
    assert_eq!(x0_case_bounds(2, 6, GenusInput::Supplied(1000)).unwrap().value, "9");
    let a = x0_case_bounds(2, 6, GenusInput::Asymptotic).unwrap();
    assert_eq!(a.mode, BoundMode::AsymptoticLeadingTerm);
    assert!(!a.caveats.is_empty());
    // (1/2 − 1/4 − 1/6) · 64 = 16/3
    assert_eq!(x0_genus_leading_term(2, 6).to_string(), "16/3");
    let small = x0_case_bounds(2, 2, GenusInput::Asymptotic);
    assert!(small.is_err() || small.unwrap().caveats.len() >= 2);
}

#[test]
fn tower_with_supplied_genera() {
    let s = tower_recursion(2, 1, 2, &TowerInput::Genera(vec![0, 3, 10]), 3).unwrap();
    // m=2: min(4, 1 + 3) = 4; m=3: min(8, 1 + 4) = 5
    assert_eq!(s[0].gamma, "4");
    assert_eq!(s[1].gamma, "5");
    assert!(tower_recursion(2, 1, 1, &TowerInput::Genera(vec![0]), 3).is_err());
}

#[test]
fn count_bound_matches_degrees() {
    for d in 2..=3u64 {
        for n in 1..=6u64 {
            let its = iterates(&FamilyParams::new(d, Rationals).unwrap(), n).unwrap();
            let total: u128 = (0..n)
                .map(|m| its[n as usize].sub(&its[m as usize]).unwrap().deg_z().unwrap() as u128)
                .sum();
            assert_eq!(preperiodic_count_bound(d, n).unwrap(), total);
        }
    }
}

#[test]
fn constant_field() {
    assert_eq!(finite_field_constant_bound(5, 3).unwrap(), 125);
    assert!(finite_field_constant_bound(1, 3).is_err());
}
