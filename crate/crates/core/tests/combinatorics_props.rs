mod common;

use depchoice::combinatorics::{central_coefficient, chain_product_polynomial, chain_product_width, width_bound};
use depchoice::order::{downsets, width, width_matching, FinitePoset};
use num_bigint::BigUint;
use proptest::prelude::*;

fn heights() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=6, 1..=4).prop_filter("at most 200 elements", |h| h.iter().product::<usize>() <= 200)
}

proptest! {
    #[test]
    fn chain_product_width_matches_matching(h in heights()) {
        let explicit = width_matching(&FinitePoset::chain_product(&h));
        prop_assert_eq!(chain_product_width(&h), BigUint::from(explicit));
    }

    #[test]
    fn chain_products_are_palindromic(h in prop::collection::vec(1usize..=8, 0..=6)) {
        let c = chain_product_polynomial(&h).coefficients().to_vec();
        let mut r = c.clone();
        r.reverse();
        prop_assert_eq!(c, r);
    }

    #[test]
    fn width_of_a_product_ignores_order(mut h in heights()) {
        let w = chain_product_width(&h);
        h.reverse();
        prop_assert_eq!(chain_product_width(&h), w);
    }
}

#[test]
fn sperner_values() {
    for n in 0..=5 {
        let brute = common::oracle::sperner_brute(n);
        assert_eq!(central_coefficient(2, n), BigUint::from(brute));
        assert_eq!(width(downsets(&FinitePoset::discrete(n)).poset()), brute);
    }
}

#[test]
fn bound_is_tight_on_discrete_posets() {
    for n in 1..=7 {
        let p = FinitePoset::discrete(n);
        assert_eq!(width_bound(&p), BigUint::from(width(downsets(&p).poset())));
    }
}

/// Smallest case where the product formula undercounts: two disjoint
/// 2-chains have the 3x3 grid as downsets.
#[test]
fn bound_fails_on_two_chains() {
    let p = FinitePoset::from_named(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap();
    assert_eq!(width_bound(&p), BigUint::from(2u32));
    assert_eq!(width(downsets(&p).poset()), 3);
}
