//! Exact prime counting and the primorial-scale structures that turn the
//! Prime Number Theorem into finite, checkable statements.
//!
//! The crate keeps arithmetic exact (big integers and rationals) up to the
//! final conversion to f64, counts primes by sieve, combinatorial recurrence,
//! or embedded exact checkpoints, decomposes reals against the prime and
//! primorial successions, and evaluates the family of logarithm variants and
//! totient-based estimators that arise from that decomposition.

pub mod config;
pub mod error;
pub mod exactnum;
pub mod log_family;
pub mod pnt_report;
pub mod prime_engine;
pub mod primorial;
pub mod representation;
pub mod rng;
pub mod theorem_checks;
pub mod totative_estimator;

pub use config::Config;
pub use error::{Error, Result};
pub use exactnum::{Natural, Ratio, Real64};
pub use prime_engine::{CountMethod, PrimeEngine, PrimeTable};
