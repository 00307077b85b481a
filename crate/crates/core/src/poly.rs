//! Exact polynomials over the rationals and generic root sets.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::signs::{Letter, ModuliOrder, Sign, SignPattern};

/// Dense polynomial, `coeffs[k]` is the coefficient of `x^k`.
///
/// Trailing zeros are stripped so the last entry is the (nonzero) leading
/// coefficient. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        ExactPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn one() -> Self {
        ExactPoly::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Product with the monic linear factor `x - root`.
    pub fn mul_linear(&self, root: &BigRational) -> ExactPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * root;
        }
        ExactPoly::new(out)
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ExactPoly::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Nonzero rational roots with pairwise distinct absolute values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    roots: Vec<BigRational>,
}

impl RootSet {
    pub fn new(roots: Vec<BigRational>) -> Result<Self> {
        if roots.iter().any(Zero::is_zero) {
            return Err(Error::InvalidRootSet("zero root".into()));
        }
        let mut moduli: Vec<BigRational> = roots.iter().map(Signed::abs).collect();
        moduli.sort();
        if let Some(w) = moduli.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidRootSet(format!(
                "tied moduli {}",
                format_rational(&w[0])
            )));
        }
        Ok(RootSet { roots })
    }

    pub fn from_integers(roots: &[i64]) -> Result<Self> {
        RootSet::new(
            roots
                .iter()
                .map(|&r| BigRational::from_integer(r.into()))
                .collect(),
        )
    }

    /// Parses a comma- or whitespace-separated list of `p/q` rationals.
    pub fn parse_list(text: &str) -> Result<Self> {
        let roots = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        RootSet::new(roots)
    }

    pub fn roots(&self) -> &[BigRational] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.roots.iter().filter(|r| r.is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.roots.len() - self.positive_count()
    }

    /// Roots sorted by increasing modulus.
    pub fn sorted_by_modulus(&self) -> Vec<BigRational> {
        let mut roots = self.roots.clone();
        roots.sort_by_key(Signed::abs);
        roots
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.roots.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RootSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        let roots = items
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RootSet::new(roots).map_err(serde::de::Error::custom)
    }
}

/// `p/q` in lowest terms; the denominator is always written.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Expands `prod (x - r)` exactly.
pub fn poly_from_roots(roots: &RootSet) -> ExactPoly {
    expand_roots(roots.roots())
}

/// Expansion without the genericity requirements of [`RootSet`].
pub fn expand_roots(roots: &[BigRational]) -> ExactPoly {
    roots.iter().fold(ExactPoly::one(), |acc, r| acc.mul_linear(r))
}

/// Coefficient signs from `x^d` down to `x^0`.
pub fn pattern_of_poly(q: &ExactPoly) -> Result<SignPattern> {
    match q.leading() {
        Some(lead) if lead.is_positive() => {}
        _ => return Err(Error::NonPositiveLeading),
    }
    let mut signs = Vec::with_capacity(q.coeffs().len());
    for (k, c) in q.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            return Err(Error::ZeroCoefficient(k));
        }
        signs.push(if c.is_positive() { Sign::Plus } else { Sign::Minus });
    }
    SignPattern::new(signs)
}

/// Letters of the roots sorted by increasing modulus.
pub fn moduli_order_of_roots(roots: &RootSet) -> ModuliOrder {
    ModuliOrder::new(
        roots
            .sorted_by_modulus()
            .iter()
            .map(|r| if r.is_positive() { Letter::P } else { Letter::N })
            .collect(),
    )
}
