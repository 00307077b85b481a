//! Sign patterns of `W = (x^2 - 1) W*`.
//!
//! Writing `W* = x^(d-2) + u_1 x^(d-3) + ... + u_(d-2)` and `u_0 = 1`, the
//! coefficients of `W` from `x^d` down are
//!
//! ```text
//! 1, u_1, u_2 - u_0, u_3 - u_1, ..., u_(d-2) - u_(d-4), -u_(d-3), -u_(d-2)
//! ```
//!
//! so the signs of `W*` fix every sign of `W` except the differences whose two
//! terms share a sign. Those are marked [`Ambiguous::Either`] and resolved in
//! all ways to get the set `S`; `T` keeps the members with exactly one more
//! sign change than `W*`. Every member of `T` must contain one of the
//! configurations A to D, which [`verify_proposition`] checks exhaustively.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{pattern_of_poly, ExactPoly};
use crate::signs::{find_configurations, sign_counts, ConfigHit, ConfigKind, Sign, SignPattern};

/// Largest degree verified by default.
pub const DEFAULT_MAX_DEGREE: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambiguous {
    Plus,
    Minus,
    Either,
}

impl From<Sign> for Ambiguous {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => Ambiguous::Plus,
            Sign::Minus => Ambiguous::Minus,
        }
    }
}

/// Signs of `W` as far as they are determined by the signs of `W*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmbiguousPattern {
    entries: Vec<Ambiguous>,
}

impl AmbiguousPattern {
    pub fn entries(&self) -> &[Ambiguous] {
        &self.entries
    }

    pub fn undetermined(&self) -> usize {
        self.entries.iter().filter(|&&e| e == Ambiguous::Either).count()
    }

    /// Whether `pattern` is one of the resolutions.
    pub fn admits(&self, pattern: &SignPattern) -> bool {
        self.entries.len() == pattern.len()
            && self
                .entries
                .iter()
                .zip(pattern.signs())
                .all(|(&e, &s)| e == Ambiguous::Either || e == Ambiguous::from(s))
    }
}

impl fmt::Display for AmbiguousPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(match e {
                Ambiguous::Plus => "+",
                Ambiguous::Minus => "-",
                Ambiguous::Either => "±",
            })?;
        }
        f.write_str(")")
    }
}

/// `(x^2 - 1) * wstar`.
pub fn lift_poly(wstar: &ExactPoly) -> ExactPoly {
    let factor = ExactPoly::from_integers(&[-1, 0, 1]);
    factor.mul(wstar)
}

/// Determined and undetermined signs of `(x^2 - 1) W*` given the signs of
/// `W*`, which must begin with `(+,+)`.
pub fn symbolic_lift(source: &SignPattern) -> Result<AmbiguousPattern> {
    let u = source.signs();
    if u.len() < 2 || u[1] != Sign::Plus {
        return Err(Error::BadNormalization);
    }
    let n = u.len() - 1; // index of the constant term u_(d-2)
    let mut entries = Vec::with_capacity(u.len() + 2);
    entries.push(Ambiguous::Plus);
    entries.push(Ambiguous::from(u[1]));
    for k in 2..=n {
        entries.push(if u[k] != u[k - 2] {
            Ambiguous::from(u[k])
        } else {
            Ambiguous::Either
        });
    }
    entries.push(Ambiguous::from(-u[n - 1]));
    entries.push(Ambiguous::from(-u[n]));
    Ok(AmbiguousPattern { entries })
}

/// Every resolution of the `±` entries (the set `S`).
pub fn expand_s(amb: &AmbiguousPattern) -> BTreeSet<SignPattern> {
    let free: Vec<usize> = (0..amb.entries.len())
        .filter(|&i| amb.entries[i] == Ambiguous::Either)
        .collect();
    let base: Vec<Sign> = amb
        .entries
        .iter()
        .map(|e| match e {
            Ambiguous::Minus => Sign::Minus,
            _ => Sign::Plus,
        })
        .collect();
    (0..1u64 << free.len())
        .map(|mask| {
            let mut signs = base.clone();
            for (bit, &i) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    signs[i] = Sign::Minus;
                }
            }
            SignPattern::new(signs).expect("leading entry is +")
        })
        .collect()
}

/// Members of `s` with exactly one sign change more than `source` (the set `T`).
pub fn filter_t(s: &BTreeSet<SignPattern>, source: &SignPattern) -> BTreeSet<SignPattern> {
    let target = sign_counts(source).0 + 1;
    s.iter().filter(|p| sign_counts(p).0 == target).cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pattern: SignPattern,
    pub hits: Vec<ConfigHit>,
}

/// The sets `S` and `T` for one sign pattern of `W*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StReport {
    pub source: SignPattern,
    #[serde(rename = "S")]
    pub s: Vec<SignPattern>,
    #[serde(rename = "T")]
    pub t: Vec<SignPattern>,
    /// Configurations found in each member of `T`.
    pub verdicts: Vec<Verdict>,
}

impl StReport {
    pub fn build(source: &SignPattern) -> Result<Self> {
        let s = expand_s(&symbolic_lift(source)?);
        let t = filter_t(&s, source);
        let verdicts = t
            .iter()
            .map(|p| Verdict {
                pattern: p.clone(),
                hits: find_configurations(p),
            })
            .collect();
        Ok(StReport {
            source: source.clone(),
            s: s.into_iter().collect(),
            t: t.into_iter().collect(),
            verdicts,
        })
    }

    /// Members of `T` containing none of A to D.
    pub fn violations(&self) -> impl Iterator<Item = &SignPattern> {
        self.verdicts
            .iter()
            .filter(|v| v.hits.is_empty())
            .map(|v| &v.pattern)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionCheck {
    pub degree: usize,
    pub reports: Vec<StReport>,
}

impl PropositionCheck {
    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn violations(&self) -> Vec<&SignPattern> {
        self.reports.iter().flat_map(StReport::violations).collect()
    }

    pub fn s_total(&self) -> usize {
        self.reports.iter().map(|r| r.s.len()).sum()
    }

    pub fn t_total(&self) -> usize {
        self.reports.iter().map(|r| r.t.len()).sum()
    }
}

/// All sign patterns of `W*` for degree `d`: length `d - 1`, starting `(+,+)`.
pub fn sources(d: usize) -> impl Iterator<Item = SignPattern> {
    let free = d.saturating_sub(3);
    (0..1u64 << free).map(move |mask| SignPattern::from_mask(d - 2, mask << 1))
}

/// Builds `S` and `T` for every source of degree `d` and checks that each
/// member of `T` contains a configuration.
pub fn verify_proposition(d: usize) -> Result<PropositionCheck> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d, 3));
    }
    if d > 60 {
        return Err(Error::DegreeTooLarge(d, 60));
    }
    let reports = sources(d)
        .map(|src| StReport::build(&src))
        .collect::<Result<Vec<_>>>()?;
    Ok(PropositionCheck { degree: d, reports })
}

/// Coefficients `u_1, ..., u_(d-2)` realizing `resolution` as the sign
/// pattern of `(x^2 - 1) W*`, with `W*` having sign pattern `source`.
///
/// Along each parity chain `u_0, u_2, u_4, ...` and `u_1, u_3, ...` the
/// magnitude is doubled or halved to force each undetermined difference.
/// Returns `W*`, or `None` if `resolution` is not admitted by the lift.
pub fn witness_wstar(source: &SignPattern, resolution: &SignPattern) -> Option<ExactPoly> {
    let amb = symbolic_lift(source).ok()?;
    if !amb.admits(resolution) {
        return None;
    }
    let u = source.signs();
    let r = resolution.signs();
    let two = BigRational::from_integer(2.into());
    let mut magnitudes: Vec<BigRational> = vec![BigRational::one(); u.len()];
    for k in 2..u.len() {
        if u[k] != u[k - 2] {
            continue;
        }
        // Entry k of the resolution is the sign of u_k - u_(k-2).
        let grow = (r[k] == Sign::Plus) == (u[k] == Sign::Plus);
        magnitudes[k] = if grow {
            &magnitudes[k - 2] * &two
        } else {
            &magnitudes[k - 2] / &two
        };
    }
    let coeffs: Vec<BigRational> = magnitudes
        .into_iter()
        .zip(u)
        .map(|(m, &s)| if s == Sign::Plus { m } else { -m })
        .rev()
        .collect();
    let wstar = ExactPoly::new(coeffs);
    (pattern_of_poly(&lift_poly(&wstar)).ok()? == *resolution).then_some(wstar)
}

/// Possible endings of the sign pattern of `W` one degree up.
///
/// `tail` is the ending of the sign pattern of `W_d`; its last two signs are
/// those of `-u_(d-3)` and `-u_(d-2)`. In `W_(d+1)` the entry `-u_(d-3)`
/// becomes `u_(d-1) - u_(d-3)` and `-u_(d-1)` is appended. Both signs of
/// `u_(d-1)` are tried and undetermined differences resolved both ways.
pub fn extend_tail(tail: &[Sign]) -> Vec<Vec<Sign>> {
    assert!(tail.len() >= 2, "tail must cover -u_(d-3) and -u_(d-2)");
    let n = tail.len();
    let u_prev = -tail[n - 2]; // sign of u_(d-3)
    let mut out = Vec::new();
    for u_new in [Sign::Plus, Sign::Minus] {
        let differences: &[Sign] = if u_new != u_prev {
            &[u_new][..]
        } else {
            &[Sign::Plus, Sign::Minus][..]
        };
        for &diff in differences {
            let mut next = tail.to_vec();
            next[n - 2] = diff;
            next.push(-u_new);
            out.push(next);
        }
    }
    out
}

/// The extension in which the entry formerly `-u_(d-3)` changes sign.
fn flipping_extension(tail: &[Sign]) -> Vec<Sign> {
    let n = tail.len();
    extend_tail(tail)
        .into_iter()
        .find(|t| t[n - 2] != tail[n - 2])
        .expect("a flip is always possible")
}

/// Endings of four signs forming a configuration, each with its five-sign
/// extension that breaks the configuration's third sign.
pub fn tail_table_last_window() -> Vec<(Vec<Sign>, Vec<Sign>)> {
    ConfigKind::ALL
        .iter()
        .map(|k| {
            let tail = k.window().to_vec();
            let next = flipping_extension(&tail);
            (tail, next)
        })
        .collect()
}

/// Endings of five signs whose first four, but not last four, form a
/// configuration, each with the six-sign extension that breaks that
/// configuration.
pub fn tail_table_second_window() -> Vec<(Vec<Sign>, Vec<Sign>)> {
    ConfigKind::ALL
        .iter()
        .flat_map(|k| {
            [Sign::Plus, Sign::Minus].into_iter().filter_map(move |s| {
                let mut tail = k.window().to_vec();
                tail.push(s);
                ConfigKind::of_window(&tail[1..]).is_none().then_some(tail)
            })
        })
        .map(|tail| {
            let next = flipping_extension(&tail);
            (tail, next)
        })
        .collect()
}
