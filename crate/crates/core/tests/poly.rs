use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use canonsign::poly::{format_rational, parse_rational};
use canonsign::{
    canonical_order, expand_roots, moduli_order_of_roots, pattern_of_poly, poly_from_roots, sign_counts,
    Error, ExactPoly, RootSet,
};

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn root_strategy(max_d: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((1i64..=500, 1i64..=40, any::<bool>()), 1..=max_d).prop_map(|v| {
        v.into_iter()
            .map(|(n, d, neg)| {
                let r = BigRational::new(n.into(), d.into());
                if neg {
                    -r
                } else {
                    r
                }
            })
            .collect()
    })
}

#[test]
fn expansion_by_hand() {
    // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
    let roots = RootSet::from_integers(&[1, -2, 3]).unwrap();
    assert_eq!(poly_from_roots(&roots), ExactPoly::from_integers(&[6, -5, -2, 1]));
    let p = pattern_of_poly(&poly_from_roots(&roots)).unwrap();
    assert_eq!(p.to_string(), "+--+");
    assert_eq!(moduli_order_of_roots(&roots).compact(), "PNP");
}

#[test]
fn canonical_spread_example() {
    let roots = RootSet::from_integers(&[-1, 10, -100, 1000]).unwrap();
    let p = pattern_of_poly(&poly_from_roots(&roots)).unwrap();
    // Each coefficient is dominated by the product of the largest moduli.
    assert_eq!(p.to_string(), "+--++");
    assert_eq!(moduli_order_of_roots(&roots).compact(), "NPNP");
    assert_eq!(canonical_order(&p).unwrap(), moduli_order_of_roots(&roots));
}

#[test]
fn zero_coefficient_is_an_error() {
    // (x - 1)(x + 1) = x^2 - 1
    let poly = expand_roots(&[q("1"), q("-1")]);
    assert!(matches!(pattern_of_poly(&poly), Err(Error::ZeroCoefficient(1))));
    assert!(RootSet::from_integers(&[1, -1]).is_err());
    assert!(RootSet::from_integers(&[0, 2]).is_err());
    assert!(RootSet::from_integers(&[2, 2]).is_err());
}

#[test]
fn rational_text() {
    assert_eq!(format_rational(&q("6/4")), "3/2");
    assert_eq!(format_rational(&q("-7")), "-7/1");
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
    let set = RootSet::parse_list("9/10, -1, -11/10").unwrap();
    assert_eq!(set.len(), 3);
    let json = serde_json::to_string(&set).unwrap();
    assert_eq!(serde_json::from_str::<RootSet>(&json).unwrap(), set);
}

proptest! {
    #[test]
    fn descartes_counts(roots in root_strategy(9)) {
        prop_assume!(RootSet::new(roots.clone()).is_ok());
        let set = RootSet::new(roots).unwrap();
        let poly = poly_from_roots(&set);
        prop_assert!(poly.is_monic());
        prop_assert_eq!(poly.degree(), Some(set.len()));
        if let Ok(p) = pattern_of_poly(&poly) {
            prop_assert_eq!(sign_counts(&p), (set.positive_count(), set.negative_count()));
        }
    }

    #[test]
    fn vanishes_at_roots(roots in root_strategy(7)) {
        let poly = expand_roots(&roots);
        for r in &roots {
            prop_assert!(poly.eval(r).is_zero());
        }
    }

    #[test]
    fn permutation_invariant(roots in root_strategy(7), shift in 0usize..7) {
        let mut rotated = roots.clone();
        let k = shift % rotated.len();
        rotated.rotate_left(k);
        rotated.reverse();
        prop_assert_eq!(expand_roots(&roots), expand_roots(&rotated));
    }

    #[test]
    fn product_of_expansions(a in root_strategy(4), b in root_strategy(4)) {
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        prop_assert_eq!(expand_roots(&a).mul(&expand_roots(&b)), expand_roots(&all));
    }
}
