//! Realizing sign patterns by orders of moduli.
//!
//! The canonical order of a pattern is realized constructively with widely
//! spread moduli. Any other order is probed by a seeded random search whose
//! candidates are confirmed with exact rational arithmetic; floating point is
//! only used to discard candidates whose signs are certainly wrong.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{moduli_order_of_roots, pattern_of_poly, poly_from_roots, RootSet};
use crate::signs::{canonical_order, sign_counts, Letter, ModuliOrder, Sign, SignPattern};

/// Starting spread for [`realize_canonical`].
pub const DEFAULT_RATIO: i64 = 4;
pub const DEFAULT_BUDGET: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 42;

const RATIO_CAP: i64 = 1 << 20;
const GRID_RATIOS: [(i64, i64); 4] = [(3, 2), (2, 1), (4, 1), (10, 1)];
/// Common denominator of randomly drawn moduli.
const DENOM: f64 = 10_000.0;
/// Keeps numerators below 2^53 so the float filter sees them exactly.
const MAX_LOG_SPAN: f64 = 27.0;
const MAX_PERTURBATIONS: usize = 8;

/// Realizes `pattern` by its canonical order of moduli.
///
/// The `k`-th smallest root has modulus `ratio^k` and is negative exactly when
/// slot `k` of the canonical order is `N`. The ratio is doubled until the
/// expansion reproduces the pattern.
pub fn realize_canonical(pattern: &SignPattern, ratio: &BigRational) -> Result<RootSet> {
    if ratio <= &BigRational::one() {
        return Err(Error::InvalidRatio);
    }
    if pattern.degree() == 0 {
        return RootSet::new(Vec::new());
    }
    let order = canonical_order(pattern)?;
    let cap = BigRational::from_integer(RATIO_CAP.into());
    let two = BigRational::from_integer(2.into());
    let mut ratio = ratio.clone();
    while ratio <= cap {
        let roots = geometric_roots(&order, &ratio);
        if pattern_of_poly(&poly_from_roots(&roots)).as_ref() == Ok(pattern) {
            return Ok(roots);
        }
        ratio *= &two;
    }
    Err(Error::RatioCapExceeded)
}

fn geometric_roots(order: &ModuliOrder, ratio: &BigRational) -> RootSet {
    let mut modulus = BigRational::one();
    let roots = order
        .letters()
        .iter()
        .map(|letter| {
            modulus *= ratio;
            match letter {
                Letter::P => modulus.clone(),
                Letter::N => -modulus.clone(),
            }
        })
        .collect();
    RootSet::new(roots).expect("geometric moduli are distinct and nonzero")
}

/// All orders with `c` letters `P` and `p` letters `N`, lexicographic (`N < P`).
pub fn enumerate_orders(c: usize, p: usize) -> Vec<ModuliOrder> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(c + p);
    fn rec(c: usize, p: usize, current: &mut Vec<Letter>, out: &mut Vec<ModuliOrder>) {
        if c == 0 && p == 0 {
            out.push(ModuliOrder::new(current.clone()));
            return;
        }
        if p > 0 {
            current.push(Letter::N);
            rec(c, p - 1, current, out);
            current.pop();
        }
        if c > 0 {
            current.push(Letter::P);
            rec(c - 1, p, current, out);
            current.pop();
        }
    }
    rec(c, p, &mut current, &mut out);
    out
}

/// Number of adjacent transpositions separating two orders with equal letter
/// counts.
pub fn transposition_distance(a: &ModuliOrder, b: &ModuliOrder) -> usize {
    // Positions of the P letters pair up in order; each unit of displacement
    // is one swap with a neighbouring N.
    let ps = |o: &ModuliOrder| -> Vec<usize> {
        o.letters()
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == Letter::P)
            .map(|(i, _)| i)
            .collect()
    };
    ps(a).iter().zip(ps(b)).map(|(x, y)| x.abs_diff(y)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRequest {
    pub pattern: SignPattern,
    pub order: ModuliOrder,
    /// Number of candidate root sets to try.
    pub budget: u64,
    pub seed: u64,
}

impl WitnessRequest {
    pub fn new(pattern: SignPattern, order: ModuliOrder, budget: u64, seed: u64) -> Self {
        WitnessRequest {
            pattern,
            order,
            budget,
            seed,
        }
    }

    fn check_counts(&self) -> Result<()> {
        let (c, p) = sign_counts(&self.pattern);
        let (order_p, order_n) = (self.order.count_p(), self.order.count_n());
        if (order_p, order_n) != (c, p) {
            return Err(Error::IncompatibleCounts {
                order_p,
                order_n,
                c,
                p,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<RootSet>,
    pub samples_used: u64,
}

/// Looks for a root set realizing `req.pattern` with moduli in `req.order`.
///
/// `None` means no witness within budget, not that none exists.
pub fn witness_search(req: &WitnessRequest) -> Result<Option<RootSet>> {
    witness_search_counted(req).map(|o| o.witness)
}

/// [`witness_search`] that also reports how many candidates were drawn.
pub fn witness_search_counted(req: &WitnessRequest) -> Result<SearchOutcome> {
    req.check_counts()?;
    let d = req.order.len();
    let target = req.pattern.signs();
    let negative: Vec<bool> = req.order.letters().iter().map(|&l| l == Letter::N).collect();
    let mut sampler = ModuliSampler::new(d, req.seed);
    let mut filter = FloatFilter::new(d);

    for sample in 0..req.budget {
        let found = match sampler.next_candidate() {
            Candidate::Exact(moduli) => {
                let roots = attach_signs(&moduli, &negative);
                RootSet::new(roots)
                    .ok()
                    .filter(|r| pattern_of_poly(&poly_from_roots(r)).as_ref() == Ok(&req.pattern))
            }
            Candidate::Scaled(mut numerators) => {
                if filter.rejects(&numerators, &negative, target) {
                    None
                } else {
                    confirm_scaled(&mut numerators, &negative, &req.pattern, &mut sampler.rng)
                }
            }
        };
        if let Some(roots) = found {
            debug_assert_eq!(moduli_order_of_roots(&roots), req.order);
            return Ok(SearchOutcome {
                witness: Some(roots),
                samples_used: sample + 1,
            });
        }
    }
    Ok(SearchOutcome {
        witness: None,
        samples_used: req.budget,
    })
}

fn attach_signs(moduli: &[BigRational], negative: &[bool]) -> Vec<BigRational> {
    moduli
        .iter()
        .zip(negative)
        .map(|(m, &neg)| if neg { -m.clone() } else { m.clone() })
        .collect()
}

fn scaled_to_rationals(numerators: &[f64]) -> Vec<BigRational> {
    let den = BigInt::from(DENOM as i64);
    numerators
        .iter()
        .map(|&n| BigRational::new(BigInt::from(n as i64), den.clone()))
        .collect()
}

/// Exact confirmation of a candidate that passed the float filter. A
/// vanishing coefficient means the sample sits on a boundary; the largest
/// modulus is nudged and the check repeated.
fn confirm_scaled(
    numerators: &mut [f64],
    negative: &[bool],
    pattern: &SignPattern,
    rng: &mut ChaCha8Rng,
) -> Option<RootSet> {
    for _ in 0..MAX_PERTURBATIONS {
        let roots = RootSet::new(attach_signs(&scaled_to_rationals(numerators), negative)).ok()?;
        match pattern_of_poly(&poly_from_roots(&roots)) {
            Ok(p) if &p == pattern => return Some(roots),
            Ok(_) => return None,
            Err(Error::ZeroCoefficient(_)) => {
                let last = numerators.len() - 1;
                numerators[last] += rng.gen_range(1..=3) as f64;
            }
            Err(_) => return None,
        }
    }
    None
}

enum Candidate {
    /// Moduli given exactly, ascending.
    Exact(Vec<BigRational>),
    /// Integer numerators over [`DENOM`], ascending and distinct.
    Scaled(Vec<f64>),
}

/// Draws ascending moduli: first the geometric grids, then alternating
/// log-uniform clouds and runs of log-uniform gaps. The clouds produce
/// clustered moduli, the gap runs mix near ties with wide separations.
struct ModuliSampler {
    d: usize,
    drawn: usize,
    rng: ChaCha8Rng,
    span_cap: f64,
}

impl ModuliSampler {
    fn new(d: usize, seed: u64) -> Self {
        let span_cap = if d == 0 {
            MAX_LOG_SPAN
        } else {
            MAX_LOG_SPAN.min(600.0 / d as f64)
        };
        ModuliSampler {
            d,
            drawn: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            span_cap,
        }
    }

    fn next_candidate(&mut self) -> Candidate {
        let index = self.drawn;
        self.drawn += 1;
        if let Some(&(n, m)) = GRID_RATIOS.get(index) {
            let ratio = BigRational::new(n.into(), m.into());
            let mut modulus = BigRational::one();
            let moduli = (0..self.d)
                .map(|_| {
                    modulus *= &ratio;
                    modulus.clone()
                })
                .collect();
            return Candidate::Exact(moduli);
        }
        let logs = if index.is_multiple_of(2) {
            self.cloud()
        } else {
            self.gap_run()
        };
        Candidate::Scaled(self.round(&logs))
    }

    /// Sorted uniform points on a log-uniformly sized interval.
    fn cloud(&mut self) -> Vec<f64> {
        let hi = (3.0 * self.d as f64).min(self.span_cap);
        let span = log_uniform(&mut self.rng, 1e-3, hi);
        let start: f64 = self.rng.gen_range(0.0..std::f64::consts::LN_2);
        let mut logs: Vec<f64> = (0..self.d)
            .map(|_| start + self.rng.gen_range(0.0..span))
            .collect();
        logs.sort_by(f64::total_cmp);
        logs
    }

    /// Cumulative sums of log-uniform gaps.
    fn gap_run(&mut self) -> Vec<f64> {
        let mut x: f64 = self.rng.gen_range(0.0..std::f64::consts::LN_2);
        let mut logs = Vec::with_capacity(self.d);
        for i in 0..self.d {
            if i > 0 {
                x += log_uniform(&mut self.rng, 1e-4, 4.0);
            }
            logs.push(x);
        }
        let total = logs.last().copied().unwrap_or(0.0);
        if total > self.span_cap {
            let scale = self.span_cap / total;
            logs.iter_mut().for_each(|v| *v *= scale);
        }
        logs
    }

    fn round(&self, logs: &[f64]) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::with_capacity(logs.len());
        for &x in logs {
            let mut n = (x.exp() * DENOM).round();
            if let Some(&prev) = out.last() {
                if n <= prev {
                    n = prev + 1.0;
                }
            }
            out.push(n);
        }
        out
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Float expansion with a running error bound. A coefficient whose magnitude
/// exceeds the bound has a certain sign; only those are compared.
struct FloatFilter {
    coeffs: Vec<f64>,
    bounds: Vec<f64>,
}

impl FloatFilter {
    fn new(d: usize) -> Self {
        FloatFilter {
            coeffs: vec![0.0; d + 1],
            bounds: vec![0.0; d + 1],
        }
    }

    fn rejects(&mut self, moduli: &[f64], negative: &[bool], target: &[Sign]) -> bool {
        let d = moduli.len();
        let (a, b) = (&mut self.coeffs, &mut self.bounds);
        a.iter_mut().for_each(|v| *v = 0.0);
        b.iter_mut().for_each(|v| *v = 0.0);
        // a[k] holds the coefficient of x^(deg - k) of the partial product.
        a[0] = 1.0;
        b[0] = 1.0;
        for (i, (&m, &neg)) in moduli.iter().zip(negative).enumerate() {
            // Multiply by (x - r) with r = -m for negative roots.
            let r = if neg { -m } else { m };
            for k in (1..=i + 1).rev() {
                a[k] -= r * a[k - 1];
                b[k] += m * b[k - 1];
            }
        }
        let tol = 8.0 * (d as f64 + 1.0) * f64::EPSILON;
        for k in 0..=d {
            let (coef, bound) = (a[k], b[k]);
            if !coef.is_finite() || !bound.is_finite() {
                return false;
            }
            if coef.abs() <= tol * bound {
                continue;
            }
            let sign = if coef > 0.0 { Sign::Plus } else { Sign::Minus };
            if sign != target[k] {
                return true;
            }
        }
        false
    }
}

/// One realizable order with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderWitness {
    pub order: ModuliOrder,
    pub witness: RootSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub pattern: SignPattern,
    pub canonical_order: ModuliOrder,
    /// Orders for which a witness was found, in lexicographic order.
    pub orders: Vec<OrderWitness>,
    pub samples_used: u64,
}

impl SearchReport {
    pub fn found_orders(&self) -> Vec<&ModuliOrder> {
        self.orders.iter().map(|o| &o.order).collect()
    }

    pub fn has_noncanonical(&self) -> bool {
        self.orders.iter().any(|o| o.order != self.canonical_order)
    }
}

/// Probes every order compatible with the sign counts of `pattern`.
pub fn realizable_orders(pattern: &SignPattern, budget: u64, seed: u64) -> Result<SearchReport> {
    let canonical = canonical_order(pattern)?;
    let (c, p) = sign_counts(pattern);
    let mut orders = Vec::new();
    let mut samples_used = 0;
    for order in enumerate_orders(c, p) {
        if order == canonical {
            let ratio = BigRational::from_integer(DEFAULT_RATIO.into());
            let witness = realize_canonical(pattern, &ratio)?;
            orders.push(OrderWitness { order, witness });
            continue;
        }
        let req = WitnessRequest::new(pattern.clone(), order.clone(), budget, seed);
        let outcome = witness_search_counted(&req)?;
        samples_used += outcome.samples_used;
        if let Some(witness) = outcome.witness {
            orders.push(OrderWitness { order, witness });
        }
    }
    Ok(SearchReport {
        pattern: pattern.clone(),
        canonical_order: canonical,
        orders,
        samples_used,
    })
}

/// Searches the non-canonical orders of `pattern`, nearest to the canonical
/// order first, and stops at the first witness.
pub fn first_noncanonical_witness(
    pattern: &SignPattern,
    budget: u64,
    seed: u64,
) -> Result<(Option<OrderWitness>, u64)> {
    let canonical = canonical_order(pattern)?;
    let (c, p) = sign_counts(pattern);
    let mut candidates: Vec<ModuliOrder> = enumerate_orders(c, p)
        .into_iter()
        .filter(|o| o != &canonical)
        .collect();
    candidates.sort_by_key(|o| transposition_distance(o, &canonical));
    let mut samples_used = 0;
    for order in candidates {
        let req = WitnessRequest::new(pattern.clone(), order.clone(), budget, seed);
        let outcome = witness_search_counted(&req)?;
        samples_used += outcome.samples_used;
        if let Some(witness) = outcome.witness {
            return Ok((Some(OrderWitness { order, witness }), samples_used));
        }
    }
    Ok((None, samples_used))
}

/// Draws `samples` random root sets with moduli in `order` and tallies the
/// sign patterns of their expansions. Samples with a vanishing coefficient
/// are skipped.
pub fn observed_patterns(order: &ModuliOrder, samples: u64, seed: u64) -> BTreeMap<SignPattern, u64> {
    let negative: Vec<bool> = order.letters().iter().map(|&l| l == Letter::N).collect();
    let mut sampler = ModuliSampler::new(order.len(), seed);
    let mut tally = BTreeMap::new();
    for _ in 0..samples {
        let moduli = match sampler.next_candidate() {
            Candidate::Exact(m) => m,
            Candidate::Scaled(n) => scaled_to_rationals(&n),
        };
        let Ok(roots) = RootSet::new(attach_signs(&moduli, &negative)) else {
            continue;
        };
        if let Ok(p) = pattern_of_poly(&poly_from_roots(&roots)) {
            *tally.entry(p).or_insert(0) += 1;
        }
    }
    tally
}

/// Moduli of a root set as floats, for reporting.
pub fn approximate_moduli(roots: &RootSet) -> Vec<f64> {
    roots
        .sorted_by_modulus()
        .iter()
        .map(|r| r.abs().to_f64().unwrap_or(f64::NAN))
        .collect()
}
