use gwconics_core::grassmann::{chern_sym_power, integrate, schur_class, schur_expand, segre, sigma, SymClass};
use gwconics_core::Rat;
use proptest::prelude::*;

fn class(max_codim: u32) -> impl Strategy<Value = SymClass> {
    prop::collection::vec(((0u32..=max_codim, 0u32..=max_codim / 2), -20i64..=20), 0..8).prop_map(|ts| {
        SymClass::from_terms(ts.into_iter().map(|((i, j), c)| ((i, j), Rat::from(c))))
    })
}

proptest! {
    #[test]
    fn schur_expansion_roundtrip(p in class(8)) {
        prop_assert_eq!(schur_expand(&p).to_symclass(), p);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in class(4), b in class(4), c in class(4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn segre_inverts_chern(m in 1u32..=6, cut in 1u32..=10) {
        let c = chern_sym_power(m);
        let s = segre(&c, m + 1, cut).unwrap();
        prop_assert_eq!(c.mul_truncated(&s, cut), SymClass::one());
    }

    #[test]
    fn unit_series_quotient(p in class(5), cut in 0u32..=8) {
        let denom = &SymClass::one() + &SymClass::e1().scale(&Rat::new(1, 3));
        let q = SymClass::series_quotient(&p, &denom, cut).unwrap();
        prop_assert_eq!(q.mul_truncated(&denom, cut), p.truncate(cut));
    }
}

#[test]
fn point_class_integrates_to_one() {
    for n in 4..=9 {
        assert_eq!(integrate(&schur_class(n - 2, n - 2), n), Rat::one(), "G(2,{n})");
        // any other Schur class of top degree integrates to zero
        assert_eq!(integrate(&schur_class(n - 1, n - 3), n), Rat::zero());
    }
}

#[test]
fn pieri_degree() {
    // sigma_1^{2(N-2)} is the degree of G(2,N) in the Pluecker embedding: a Catalan number
    let catalan = [1, 2, 5, 14, 42, 132];
    for (i, n) in (3..=8u32).enumerate() {
        let top = sigma(1).pow_truncated(2 * (n - 2), 2 * (n - 2));
        assert_eq!(integrate(&top, n), Rat::from(catalan[i]));
    }
}
