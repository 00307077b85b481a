use std::collections::HashMap;

use canonsign::census::{canonical_family, census, census_with_ceiling, verify_theorem_small, Outcome};
use canonsign::{is_canonical, ConfigKind, Sign};

/// Counts leading-plus sign strings of length `d + 1` avoiding the four
/// windows, by dynamic programming over the last three signs.
fn canonical_count_dp(d: usize) -> u64 {
    let n = d + 1;
    if n < 4 {
        return 1 << d;
    }
    let bad = |w: [bool; 4]| {
        // `true` is a plus sign.
        matches!(
            w,
            [true, true, false, false]
                | [false, false, true, true]
                | [true, false, false, true]
                | [false, true, true, false]
        )
    };
    let mut states: HashMap<[bool; 3], u64> = HashMap::new();
    for mask in 0..4u8 {
        states.insert([true, mask & 2 != 0, mask & 1 != 0], 1);
    }
    for _ in 3..n {
        let mut next = HashMap::new();
        for (s, count) in &states {
            for x in [true, false] {
                if !bad([s[0], s[1], s[2], x]) {
                    *next.entry([s[1], s[2], x]).or_insert(0) += count;
                }
            }
        }
        states = next;
    }
    states.values().sum()
}

#[test]
fn canonical_counts_match_dp() {
    for d in 0..=20 {
        let row = census(d).unwrap();
        assert_eq!(row.total, 1 << d);
        assert_eq!(row.canonical + row.noncanonical, row.total);
        assert_eq!(row.canonical, canonical_count_dp(d), "d={d}");
    }
}

#[test]
fn window_totals_closed_form() {
    // The first window starts with the leading plus, so only A and C fit there.
    for d in 4..=18u32 {
        let row = census(d as usize).unwrap();
        let ac = u64::from(d - 1) << (d - 4);
        let bd = u64::from(d - 3) << (d - 4);
        assert_eq!(row.window_count(ConfigKind::A), ac);
        assert_eq!(row.window_count(ConfigKind::C), ac);
        assert_eq!(row.window_count(ConfigKind::B), bd);
        assert_eq!(row.window_count(ConfigKind::D), bd);
    }
}

#[test]
fn ceiling_is_enforced() {
    assert!(census_with_ceiling(10, 9).is_err());
    assert!(census_with_ceiling(9, 9).is_ok());
}

#[test]
fn family_members_are_canonical() {
    for d in 3..=20 {
        let family = canonical_family(d);
        for p in &family {
            assert_eq!(p.len(), d + 1);
            assert!(is_canonical(p), "{p}");
            assert!(p.signs().contains(&Sign::Minus));
            assert!(!p.signs().windows(2).any(|w| w == [Sign::Minus, Sign::Minus]));
        }
    }
    let three: Vec<String> = canonical_family(3).iter().map(ToString::to_string).collect();
    assert_eq!(three, vec!["+++-"]);
}

#[test]
fn theorem_check_small() {
    for d in 1..=4 {
        let report = verify_theorem_small(d, 50_000, 42).unwrap();
        assert!(report.passed(), "d={d}");
        assert_eq!(report.checks.len(), 1 << d);
        for check in &report.checks {
            match &check.outcome {
                Outcome::Witnessed { witness } => assert_ne!(witness.order, check.canonical_order),
                Outcome::CanonicalOnly => assert!(check.canonical),
                other => panic!("{}: {other:?}", check.pattern),
            }
        }
    }
    let v = serde_json::to_value(verify_theorem_small(3, 50_000, 42).unwrap()).unwrap();
    let statuses: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["outcome"]["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"witnessed") && statuses.contains(&"canonical_only"));
}
