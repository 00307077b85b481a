//! Exhaustive statistics over all sign patterns of a degree and desk-scale
//! checks of the canonicity criterion against witness search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realize::{first_noncanonical_witness, realizable_orders, OrderWitness};
use crate::signs::{
    canonical_order, find_configurations, is_canonical, ConfigKind, ModuliOrder, Sign, SignPattern,
};

/// Largest degree [`census`] enumerates unless told otherwise.
pub const DEFAULT_CENSUS_CEILING: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub d: usize,
    pub total: u64,
    pub canonical: u64,
    pub noncanonical: u64,
    /// Occurrences of A, B, C, D summed over all patterns.
    pub windows: [u64; 4],
}

pub fn census(d: usize) -> Result<CensusRow> {
    census_with_ceiling(d, DEFAULT_CENSUS_CEILING)
}

pub fn census_with_ceiling(d: usize, ceiling: usize) -> Result<CensusRow> {
    if d > ceiling || d >= 64 {
        return Err(Error::DegreeTooLarge(d, ceiling.min(63)));
    }
    let mut row = CensusRow {
        d,
        total: 0,
        canonical: 0,
        noncanonical: 0,
        windows: [0; 4],
    };
    for pattern in SignPattern::all_of_degree(d) {
        row.total += 1;
        if is_canonical(&pattern) {
            row.canonical += 1;
        } else {
            row.noncanonical += 1;
        }
        for hit in find_configurations(&pattern) {
            row.windows[hit.kind as usize] += 1;
        }
    }
    Ok(row)
}

impl CensusRow {
    pub fn window_count(&self, kind: ConfigKind) -> u64 {
        self.windows[kind as usize]
    }
}

/// Patterns made of runs of at least three `+` separated by single `-`,
/// starting with a run and containing at least one `-`, of length `d + 1`.
pub fn canonical_family(d: usize) -> Vec<SignPattern> {
    fn rec(remaining: usize, current: &mut Vec<Sign>, out: &mut Vec<SignPattern>) {
        // `current` ends right after a `-` (or is empty); place the next run.
        for run in 3..=remaining {
            current.extend(std::iter::repeat_n(Sign::Plus, run));
            let left = remaining - run;
            if left == 0 {
                if current.contains(&Sign::Minus) {
                    out.push(SignPattern::new(current.clone()).expect("starts with +"));
                }
            } else {
                current.push(Sign::Minus);
                if left == 1 {
                    out.push(SignPattern::new(current.clone()).expect("starts with +"));
                } else {
                    rec(left - 1, current, out);
                }
                current.pop();
            }
            current.truncate(current.len() - run);
        }
    }
    let mut out = Vec::new();
    rec(d + 1, &mut Vec::new(), &mut out);
    out
}

/// Every member of [`canonical_family`] of degree `d` is canonical.
pub fn canonical_family_check(d: usize) -> bool {
    canonical_family(d).iter().all(is_canonical)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    /// Non-canonical pattern realized by a non-canonical order.
    Witnessed { witness: OrderWitness },
    /// Non-canonical pattern with no non-canonical witness within budget.
    Missing,
    /// Canonical pattern for which only the canonical order was found.
    CanonicalOnly,
    /// Canonical pattern realized by another order; contradicts the criterion.
    Violated { witnesses: Vec<OrderWitness> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCheck {
    pub pattern: SignPattern,
    pub canonical: bool,
    pub canonical_order: ModuliOrder,
    pub samples_used: u64,
    pub outcome: Outcome,
}

impl PatternCheck {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Witnessed { .. } | Outcome::CanonicalOnly)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub d: usize,
    pub budget: u64,
    pub seed: u64,
    pub checks: Vec<PatternCheck>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PatternCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PatternCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// For each pattern of degree `d`: a non-canonical pattern must receive a
/// witness for some non-canonical order, a canonical one must show no order
/// other than its canonical order.
pub fn verify_theorem_small(d: usize, budget: u64, seed: u64) -> Result<TheoremReport> {
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let checks = SignPattern::all_of_degree(d)
        .map(|pattern| check_pattern(pattern, budget, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport {
        d,
        budget,
        seed,
        checks,
    })
}

fn check_pattern(pattern: SignPattern, budget: u64, seed: u64) -> Result<PatternCheck> {
    let canonical = is_canonical(&pattern);
    let canonical_order = canonical_order(&pattern)?;
    let (samples_used, outcome) = if canonical {
        let report = realizable_orders(&pattern, budget, seed)?;
        let others: Vec<OrderWitness> = report
            .orders
            .into_iter()
            .filter(|o| o.order != canonical_order)
            .collect();
        let outcome = if others.is_empty() {
            Outcome::CanonicalOnly
        } else {
            Outcome::Violated { witnesses: others }
        };
        (report.samples_used, outcome)
    } else {
        let (found, used) = first_noncanonical_witness(&pattern, budget, seed)?;
        let outcome = match found {
            Some(witness) => Outcome::Witnessed { witness },
            None => Outcome::Missing,
        };
        (used, outcome)
    };
    Ok(PatternCheck {
        pattern,
        canonical,
        canonical_order,
        samples_used,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census() {
        let r = census(2).unwrap();
        assert_eq!((r.total, r.canonical), (4, 4));
        let r = census(3).unwrap();
        assert_eq!((r.total, r.canonical, r.noncanonical), (8, 6, 2));
        assert_eq!(r.windows, [1, 0, 1, 0]);
        let r = census(4).unwrap();
        assert_eq!((r.total, r.canonical), (16, 10));
        assert_eq!(census(0).unwrap().total, 1);
        assert_eq!(census(25), Err(Error::DegreeTooLarge(25, 24)));
    }

    #[test]
    fn family_members() {
        let names = |d| -> Vec<String> { canonical_family(d).iter().map(|p| p.to_string()).collect() };
        assert_eq!(names(3), ["+++-"]);
        assert!(names(7).contains(&"+++-+++-".to_string()));
        assert!(names(6).contains(&"+++-+++".to_string()));
        assert!(!names(9).contains(&"+++-+++-+-".to_string()));
        assert!(canonical_family(2).is_empty());
        for d in 3..=12 {
            assert!(canonical_family_check(d));
        }
    }

    #[test]
    fn theorem_degree_two_and_three() {
        let r = verify_theorem_small(2, 5_000, 42).unwrap();
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.canonical));
        let r = verify_theorem_small(3, 20_000, 42).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.iter().filter(|c| !c.canonical).count(), 2);
    }
}
