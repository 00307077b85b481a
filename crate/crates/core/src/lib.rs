//! Canonical sign patterns of real polynomials with all roots real.
//!
//! A generic hyperbolic polynomial (real roots, distinct moduli, no vanishing
//! coefficient) has as many positive roots as its coefficient sequence has
//! sign changes. Which moduli belong to positive roots is not always fixed by
//! the signs alone: a sign pattern is *canonical* when only its canonical
//! order of moduli realizes it, which happens exactly when it contains none
//! of the windows `++--`, `--++`, `+--+`, `-++-`.
//!
//! * [`signs`]: patterns, orders of moduli, configurations, rigidity.
//! * [`poly`]: exact rational polynomials built from root sets.
//! * [`realize`]: canonical realizations and seeded witness search.
//! * [`adjacency`]: sign patterns of `(x^2 - 1) W*` and the exhaustive check
//!   that the relevant ones always contain a configuration.
//! * [`census`]: enumeration over all patterns of a degree.

pub mod adjacency;
pub mod census;
pub mod error;
pub mod poly;
pub mod realize;
pub mod signs;

pub use error::{Error, Result};
pub use poly::{expand_roots, moduli_order_of_roots, pattern_of_poly, poly_from_roots, ExactPoly, RootSet};
pub use signs::{
    canonical_order, classify_rigid, find_configurations, is_canonical, isolated_features, negate_variable,
    sign_counts, ConfigHit, ConfigKind, Letter, ModuliOrder, Rigidity, Sign, SignPattern,
};
