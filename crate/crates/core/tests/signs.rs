use proptest::prelude::*;

use canonsign::signs::pattern_with_canonical_order;
use canonsign::{
    canonical_order, classify_rigid, find_configurations, is_canonical, isolated_features, negate_variable,
    sign_counts, ConfigHit, ConfigKind, Letter, ModuliOrder, Rigidity, Sign, SignPattern,
};

fn pat(s: &str) -> SignPattern {
    s.parse().unwrap()
}

fn pattern_strategy(max_d: usize) -> impl Strategy<Value = SignPattern> {
    (0..=max_d).prop_flat_map(|d| {
        let top = if d == 0 { 1 } else { 1u64 << d };
        (Just(d), 0..top).prop_map(|(d, mask)| SignPattern::from_mask(d, mask))
    })
}

fn window_oracle(p: &SignPattern) -> Vec<ConfigHit> {
    let text = p.to_string();
    let mut hits = Vec::new();
    for i in 0..text.len().saturating_sub(3) {
        let kind = match &text[i..i + 4] {
            "++--" => ConfigKind::A,
            "--++" => ConfigKind::B,
            "+--+" => ConfigKind::C,
            "-++-" => ConfigKind::D,
            _ => continue,
        };
        hits.push(ConfigHit {
            position: i + 1,
            kind,
        });
    }
    hits
}

#[test]
fn parse_forms_agree() {
    let p = pat("++-+");
    assert_eq!(pat("(+,+,-,+)"), p);
    assert_eq!(pat("+,+,−,+"), p);
    assert!("-+".parse::<SignPattern>().is_err());
    assert!("".parse::<SignPattern>().is_err());
    assert!("+x".parse::<SignPattern>().is_err());
    let o: ModuliOrder = "N<P<N".parse().unwrap();
    assert_eq!(o, "NPN".parse().unwrap());
    assert_eq!(o.to_string(), "N<P<N");
}

#[test]
fn canonical_order_examples() {
    assert_eq!(canonical_order(&pat("++--")).unwrap().compact(), "NPN");
    assert_eq!(canonical_order(&pat("+--+")).unwrap().compact(), "PNP");
    assert_eq!(canonical_order(&pat("+++-")).unwrap().compact(), "PNN");
    assert!(canonical_order(&pat("+")).is_err());
}

#[test]
fn canonical_order_is_a_bijection() {
    for d in 1..=10 {
        let mut seen = std::collections::BTreeSet::new();
        for p in SignPattern::all_of_degree(d) {
            let o = canonical_order(&p).unwrap();
            assert_eq!(pattern_with_canonical_order(&o), p);
            assert!(seen.insert(o));
        }
        assert_eq!(seen.len(), 1 << d);
    }
}

#[test]
fn rigid_orders_per_degree() {
    for d in 2..=10 {
        let orders = (0..1u64 << d).map(|mask| {
            ModuliOrder::new(
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { Letter::P } else { Letter::N })
                    .collect(),
            )
        });
        let rigid: Vec<SignPattern> = orders
            .filter_map(|o| match classify_rigid(&o) {
                Rigidity::Rigid(p) => Some(p),
                Rigidity::NotRigid => None,
            })
            .collect();
        assert_eq!(rigid.len(), 4, "d={d}");
        let expected = ["+".repeat(d + 1), "+-".repeat(d + 1)[..d + 1].to_string()];
        let periodic = ["++--".repeat(d), "+--+".repeat(d)].map(|s| s[..d + 1].to_string());
        for p in &rigid {
            let text = p.to_string();
            if expected.contains(&text) {
                assert!(is_canonical(p));
            } else {
                assert!(periodic.contains(&text), "{text}");
                if d >= 3 {
                    // Every window of four is a configuration.
                    assert_eq!(find_configurations(p).len(), d - 2);
                }
            }
        }
    }
}

#[test]
fn configurations_iff_isolated_features() {
    for d in 0..=16 {
        for p in SignPattern::all_of_degree(d) {
            assert_eq!(is_canonical(&p), isolated_features(&p).is_empty(), "{p}");
        }
    }
}

#[test]
fn isolated_features_labels() {
    let f = isolated_features(&pat("+--++"));
    assert_eq!((f.changes, f.preservations), (vec![3], vec![2]));
    let f = isolated_features(&pat("+++-++"));
    assert!(is_canonical(&pat("+++-++")));
    assert_eq!((f.changes, f.preservations), (vec![], vec![]));
}

proptest! {
    #[test]
    fn configurations_match_window_oracle(p in pattern_strategy(24)) {
        prop_assert_eq!(find_configurations(&p), window_oracle(&p));
        prop_assert_eq!(is_canonical(&p), window_oracle(&p).is_empty());
    }

    #[test]
    fn counts_sum_to_degree(p in pattern_strategy(40)) {
        let (c, q) = sign_counts(&p);
        prop_assert_eq!(c + q, p.degree());
        if p.degree() > 0 {
            let o = canonical_order(&p).unwrap();
            prop_assert_eq!((o.count_p(), o.count_n()), (c, q));
        }
    }

    #[test]
    fn negation_is_an_involution(p in pattern_strategy(30)) {
        let n = negate_variable(&p);
        prop_assert_eq!(negate_variable(&n), p.clone());
        let (c, q) = sign_counts(&p);
        prop_assert_eq!(sign_counts(&n), (q, c));
        prop_assert_eq!(is_canonical(&n), is_canonical(&p));
    }

    #[test]
    fn negation_swaps_configuration_kinds(p in pattern_strategy(30)) {
        let a = find_configurations(&p);
        let b = find_configurations(&negate_variable(&p));
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.position, y.position);
            let ab = matches!(x.kind, ConfigKind::A | ConfigKind::B);
            prop_assert_eq!(ab, matches!(y.kind, ConfigKind::C | ConfigKind::D));
        }
    }

    #[test]
    fn reversal_preserves_canonicity(p in pattern_strategy(30)) {
        let r = p.reversed();
        prop_assert_eq!(r.degree(), p.degree());
        prop_assert_eq!(sign_counts(&r), sign_counts(&p));
        prop_assert_eq!(is_canonical(&r), is_canonical(&p));
        if p.degree() > 0 {
            prop_assert_eq!(canonical_order(&r).unwrap(), canonical_order(&p).unwrap().reversed());
        }
    }

    #[test]
    fn display_round_trips(p in pattern_strategy(30)) {
        prop_assert_eq!(p.to_string().parse::<SignPattern>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<SignPattern>(&json).unwrap(), p.clone());
        prop_assert_eq!(p.signs()[0], Sign::Plus);
    }
}
