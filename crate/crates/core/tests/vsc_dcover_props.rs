use gwconics_core::dcover::{contribution_class, decompose2_with_table, degree1_invariant, valid_triples};
use gwconics_core::grassmann::SymClass;
use gwconics_core::vsc::{vsc_d1, Hypersurface, VscTable};
use gwconics_core::Rat;
use proptest::prelude::*;

#[test]
fn degree_one_constants_are_palindromic() {
    for k in 2..=12 {
        let l = vsc_d1(k).unwrap();
        let mut rev = l.clone();
        rev.reverse();
        assert_eq!(l, rev, "k = {k}");
        // the sum is k * k^(k-1), the value at w = 1
        let total: Rat = l.iter().sum();
        assert_eq!(total, Rat::from(i64::from(k).pow(k)));
    }
}

#[test]
fn calabi_yau_invariants_are_integral() {
    // k = N: no multiple-cover denominators, and the contribution is the constant 1/8
    for n in 5..=8 {
        let surface = Hypersurface::new(n, n).unwrap();
        let table = VscTable::build(surface, 2).unwrap();
        assert_eq!(contribution_class(n, n).value, SymClass::constant(Rat::new(1, 8)));
        for abc in valid_triples(surface).into_iter().filter(|t| t.contains(&1)) {
            let rep = decompose2_with_table(Some(&table), surface, abc, None).unwrap();
            assert!(rep.gw.is_integer(), "({n}, {abc:?}) gw = {}", rep.gw);
            assert!(rep.violations().is_empty(), "{:?}", rep.violations());
        }
    }
}

#[test]
fn decomposition_is_permutation_invariant() {
    for (n, k) in [(5, 5), (6, 6), (7, 7), (7, 8), (8, 9), (9, 10)] {
        let surface = Hypersurface::new(n, k).unwrap();
        let table = VscTable::build(surface, 2).unwrap();
        for abc in valid_triples(surface).into_iter().filter(|t| t.contains(&1)) {
            let base = decompose2_with_table(Some(&table), surface, abc, None).unwrap();
            let [a, b, c] = abc;
            for perm in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                let other = decompose2_with_table(Some(&table), surface, perm, None).unwrap();
                assert_eq!((&other.gw, &other.dcover_term), (&base.gw, &base.dcover_term), "({n},{k}) {perm:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contribution_class_is_homogeneous(n in 4u32..=9, excess in 0u32..=4) {
        let k = n + excess;
        let c = contribution_class(n, k).value;
        prop_assert!(!c.is_zero());
        prop_assert_eq!(c.homogeneous_codim(), Some(excess));
    }

    #[test]
    fn user_supplied_gw_splits_exactly(num in -10_000i64..10_000, den in 1i64..=64) {
        let surface = Hypersurface::new(7, 8).unwrap();
        let gw = Rat::new(num, den);
        let rep = decompose2_with_table(None, surface, [1, 1, 1], Some(gw.clone())).unwrap();
        prop_assert_eq!(&rep.conic_count + &rep.dcover_term, gw);
    }

    #[test]
    fn bookkeeping_violations_are_errors(n in 5u32..=8, extra in 0u32..=3, a in 1u32..=6) {
        // a single insertion whose codimension cannot balance the integrand
        let k = n;
        let need = 2 * (n - 2) - (k + 1);
        prop_assume!(a <= n - 2 && extra + a - 1 != need);
        let cls = SymClass::monomial(extra, 0, Rat::one());
        prop_assert!(degree1_invariant(n, k, &[a], &cls).is_err());
    }
}
