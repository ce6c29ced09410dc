//! Rapidly convergent series for the sums-of-divisors functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: factorization, `σ_s`, `φ`, `μ`, divisors and central binomials.
//! * [`ramanujan`]: Ramanujan sums `c_k(N)`, exactly (Hölder) and by the
//!   defining exponential sum.
//! * [`zetakit`]: arbitrary-precision reals and every `ζ(s)` evaluator the
//!   series layer compares against.
//! * [`series`]: divisor-convolved coefficients and exact partial sums of the
//!   binomial, geometric and squarefree divisor series, plus convergence
//!   profiles.
//! * [`identities`]: the prime-power correction factors relating `σ_s(N)/N^s`
//!   to `σ(N)/N`.
//!
//! Rational quantities are carried as [`rug::Rational`] (always canonical);
//! irrational ones as [`zetakit::BigReal`] with an explicit precision.

pub mod arith;
mod error;
pub mod identities;
pub mod ramanujan;
pub mod series;
pub mod zetakit;

pub use error::{Error, Result};

/// Exact rational carrier. `rug` keeps every value in lowest terms with a
/// positive denominator.
pub type ExactRational = rug::Rational;
