//! Sign patterns, orders of moduli and the combinatorics relating them.
//!
//! A [`SignPattern`] lists coefficient signs from the leading term down to the
//! constant term and always starts with `+`. A [`ModuliOrder`] lists, from the
//! smallest modulus up, whether each root is negative (`N`) or positive (`P`).

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Coefficient signs of a real polynomial, leading coefficient first.
///
/// Index 0 is the sign of the `x^d` coefficient, index `d` the sign of the
/// constant term. The first sign is always `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    signs: Vec<Sign>,
}

impl SignPattern {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        match signs.first() {
            None => Err(Error::EmptyInput),
            Some(Sign::Minus) => Err(Error::LeadingMinus),
            Some(Sign::Plus) => Ok(SignPattern { signs }),
        }
    }

    /// Builds a pattern, negating every sign if the first one is `-`.
    pub fn normalized(mut signs: Vec<Sign>) -> Result<Self> {
        if signs.first() == Some(&Sign::Minus) {
            for s in signs.iter_mut() {
                *s = -*s;
            }
        }
        SignPattern::new(signs)
    }

    /// Pattern of degree `d` whose sign at index `i >= 1` is `-` iff bit
    /// `i - 1` of `mask` is set.
    pub fn from_mask(d: usize, mask: u64) -> Self {
        assert!(d < 64, "degree {d} does not fit a 64-bit mask");
        let mut signs = Vec::with_capacity(d + 1);
        signs.push(Sign::Plus);
        signs.extend((0..d).map(|i| {
            if mask >> i & 1 == 1 {
                Sign::Minus
            } else {
                Sign::Plus
            }
        }));
        SignPattern { signs }
    }

    /// All `2^d` patterns of degree `d`, in mask order.
    pub fn all_of_degree(d: usize) -> impl Iterator<Item = SignPattern> {
        assert!(d < 64, "degree {d} does not fit a 64-bit mask");
        (0..1u64 << d).map(move |mask| SignPattern::from_mask(d, mask))
    }

    pub fn degree(&self) -> usize {
        self.signs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Sign of the coefficient of `x^k`.
    pub fn coefficient_sign(&self, k: usize) -> Sign {
        self.signs[self.degree() - k]
    }

    /// The pattern read backwards (the pattern of `x^d Q(1/x)`), renormalized.
    pub fn reversed(&self) -> SignPattern {
        let signs = self.signs.iter().rev().copied().collect();
        SignPattern::normalized(signs).expect("nonempty")
    }

    /// Change/preservation labels of the `d` adjacent pairs, leftmost first.
    /// `true` marks a sign change.
    pub fn change_labels(&self) -> Vec<bool> {
        self.signs.windows(2).map(|w| w[0] != w[1]).collect()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    /// Accepts the compact form `++--` and the separated form `+,-,-,+`.
    /// Surrounding parentheses and whitespace are ignored.
    fn from_str(text: &str) -> Result<Self> {
        let body = text.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let mut signs = Vec::new();
        for (offset, ch) in body.char_indices() {
            match ch {
                '+' => signs.push(Sign::Plus),
                '-' | '\u{2212}' => signs.push(Sign::Minus),
                ',' => {}
                c if c.is_whitespace() => {}
                c => return Err(Error::IllegalCharacter(c, offset)),
            }
        }
        SignPattern::new(signs)
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignPattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Sign of the root whose modulus occupies a slot of an order of moduli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    N,
    P,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::N => 'N',
            Letter::P => 'P',
        }
    }
}

/// Relative position of the moduli of negative and positive roots,
/// smallest modulus first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliOrder {
    letters: Vec<Letter>,
}

impl ModuliOrder {
    pub fn new(letters: Vec<Letter>) -> Self {
        ModuliOrder { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of positive roots.
    pub fn count_p(&self) -> usize {
        self.letters.iter().filter(|&&l| l == Letter::P).count()
    }

    /// Number of negative roots.
    pub fn count_n(&self) -> usize {
        self.letters.len() - self.count_p()
    }

    pub fn reversed(&self) -> ModuliOrder {
        ModuliOrder::new(self.letters.iter().rev().copied().collect())
    }

    /// Compact form without separators, e.g. `NPN`.
    pub fn compact(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }
}

impl fmt::Display for ModuliOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for ModuliOrder {
    type Err = Error;

    /// Accepts `N<P<N` as well as the bare letter string `NPN`.
    fn from_str(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (offset, ch) in text.trim().char_indices() {
            match ch {
                'N' => letters.push(Letter::N),
                'P' => letters.push(Letter::P),
                '<' => {}
                c if c.is_whitespace() => {}
                c => return Err(Error::IllegalCharacter(c, offset)),
            }
        }
        if letters.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(ModuliOrder::new(letters))
    }
}

impl Serialize for ModuliOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModuliOrder {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The four forbidden windows of four consecutive signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConfigKind {
    A,
    B,
    C,
    D,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 4] = [ConfigKind::A, ConfigKind::B, ConfigKind::C, ConfigKind::D];

    pub fn window(self) -> [Sign; 4] {
        use Sign::{Minus as M, Plus as P};
        match self {
            ConfigKind::A => [P, P, M, M],
            ConfigKind::B => [M, M, P, P],
            ConfigKind::C => [P, M, M, P],
            ConfigKind::D => [M, P, P, M],
        }
    }

    pub fn of_window(w: &[Sign]) -> Option<ConfigKind> {
        // Every configuration has exactly one interior pair that differs from
        // its two neighbours: A/B are "same, change, same", C/D the reverse.
        if w.len() != 4 {
            return None;
        }
        let first = w[0] == w[1];
        let middle = w[1] == w[2];
        let last = w[2] == w[3];
        if first != last || first == middle {
            return None;
        }
        Some(match (first, w[0]) {
            (true, Sign::Plus) => ConfigKind::A,
            (true, Sign::Minus) => ConfigKind::B,
            (false, Sign::Plus) => ConfigKind::C,
            (false, Sign::Minus) => ConfigKind::D,
        })
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            ConfigKind::A => 'A',
            ConfigKind::B => 'B',
            ConfigKind::C => 'C',
            ConfigKind::D => 'D',
        };
        write!(f, "{c}")
    }
}

/// A configuration found at 1-based `position` (its leftmost sign).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConfigHit {
    pub position: usize,
    pub kind: ConfigKind,
}

impl fmt::Display for ConfigHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.position)
    }
}

/// Number of sign changes `c` and sign preservations `p`.
pub fn sign_counts(pattern: &SignPattern) -> (usize, usize) {
    let c = pattern.change_labels().iter().filter(|&&x| x).count();
    (c, pattern.degree() - c)
}

/// Reads the pattern right to left: a sign change between `x^k` and
/// `x^(k-1)` puts `P` in slot `k`, a preservation puts `N`.
pub fn canonical_order(pattern: &SignPattern) -> Result<ModuliOrder> {
    let d = pattern.degree();
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let letters = (1..=d)
        .map(|k| {
            if pattern.coefficient_sign(k) != pattern.coefficient_sign(k - 1) {
                Letter::P
            } else {
                Letter::N
            }
        })
        .collect();
    Ok(ModuliOrder::new(letters))
}

/// The unique leading-`+` pattern whose canonical order is `order`.
pub fn pattern_with_canonical_order(order: &ModuliOrder) -> SignPattern {
    let mut signs = Vec::with_capacity(order.len() + 1);
    let mut current = Sign::Plus;
    signs.push(current);
    for letter in order.letters().iter().rev() {
        if *letter == Letter::P {
            current = -current;
        }
        signs.push(current);
    }
    SignPattern { signs }
}

/// Pattern of `Q(-x)`: odd-degree signs flip, then the whole pattern is
/// negated if the leading sign became `-`.
pub fn negate_variable(pattern: &SignPattern) -> SignPattern {
    let d = pattern.degree();
    let signs = pattern
        .signs()
        .iter()
        .enumerate()
        .map(|(i, &s)| if (d - i) % 2 == 1 { -s } else { s })
        .collect();
    SignPattern::normalized(signs).expect("nonempty")
}

pub fn find_configurations(pattern: &SignPattern) -> Vec<ConfigHit> {
    pattern
        .signs()
        .windows(4)
        .enumerate()
        .filter_map(|(i, w)| {
            ConfigKind::of_window(w).map(|kind| ConfigHit {
                position: i + 1,
                kind,
            })
        })
        .collect()
}

/// A pattern is canonical iff it contains none of the configurations A to D.
pub fn is_canonical(pattern: &SignPattern) -> bool {
    pattern
        .signs()
        .windows(4)
        .all(|w| ConfigKind::of_window(w).is_none())
}

/// Isolated sign changes and isolated sign preservations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsolatedFeatures {
    /// 1-based label positions of changes flanked by two preservations.
    pub changes: Vec<usize>,
    /// 1-based label positions of preservations flanked by two changes.
    pub preservations: Vec<usize>,
}

impl IsolatedFeatures {
    pub fn is_empty(&self) -> bool {
        self.changes.is_empty() && self.preservations.is_empty()
    }
}

/// Scans the `d` change/preservation labels for interior `(p,c,p)` and
/// `(c,p,c)` triples. Boundary labels are never isolated.
pub fn isolated_features(pattern: &SignPattern) -> IsolatedFeatures {
    let labels = pattern.change_labels();
    let mut out = IsolatedFeatures::default();
    for (i, t) in labels.windows(3).enumerate() {
        if t[0] == t[2] && t[0] != t[1] {
            if t[1] {
                out.changes.push(i + 2);
            } else {
                out.preservations.push(i + 2);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rigidity {
    /// The order realizes exactly this pattern.
    Rigid(SignPattern),
    NotRigid,
}

/// Constant and strictly alternating orders are the rigid ones; each realizes
/// only the pattern it is the canonical order of.
pub fn classify_rigid(order: &ModuliOrder) -> Rigidity {
    let letters = order.letters();
    let constant = letters.windows(2).all(|w| w[0] == w[1]);
    let alternating = letters.windows(2).all(|w| w[0] != w[1]);
    if constant || alternating {
        Rigidity::Rigid(pattern_with_canonical_order(order))
    } else {
        Rigidity::NotRigid
    }
}
