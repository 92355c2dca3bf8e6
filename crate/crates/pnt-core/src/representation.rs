//! Decomposition of an integer against a monotone succession.
//!
//! For a strictly increasing succession a_1, a_2, ... every x ≥ a_1 lands in
//! exactly one half-open cell [a_n, a_{n+1}); the decomposition records that
//! index plus the exact rational remainder r = (x - a_n)/(a_{n+1} - a_n) and
//! scale s = 1 + (a_{n+1}/a_n - 1) r, so that a_n * s = x holds exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{ratio_from_natural, Natural, Ratio};
use crate::prime_engine::PrimeEngine;
use crate::primorial::primorial;

/// The two successions instantiated here: primes p_n and primorials #(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuccessionKind {
    Prime,
    Primorial,
}

impl SuccessionKind {
    /// The nth element of the succession, 1-based.
    pub fn element(&self, engine: &PrimeEngine, n: u64) -> Result<Natural> {
        if n == 0 {
            return Err(Error::Index("succession indices are 1-based".into()));
        }
        match self {
            SuccessionKind::Prime => engine.nth_prime(n).map(Natural::from),
            SuccessionKind::Primorial => primorial(engine, n),
        }
    }
}

impl std::fmt::Display for SuccessionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuccessionKind::Prime => write!(f, "prime"),
            SuccessionKind::Primorial => write!(f, "primorial"),
        }
    }
}

impl std::str::FromStr for SuccessionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuccessionKind> {
        match s {
            "prime" => Ok(SuccessionKind::Prime),
            "primorial" => Ok(SuccessionKind::Primorial),
            _ => Err(Error::Parse(format!(
                "unknown succession {s:?} (expected prime or primorial)"
            ))),
        }
    }
}

/// Where x sits inside its succession cell. `index` is absent when the
/// decomposition ran beyond the prime table's reach; the neighboring values
/// are always present and are all the downstream formulas consume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub index: Option<u64>,
    pub lower: Natural,
    pub upper: Natural,
    pub remainder: Ratio,
    pub scale: Ratio,
}

fn diff_ratio(hi: &Natural, lo: &Natural) -> BigInt {
    BigInt::from(hi.clone()) - BigInt::from(lo.clone())
}

fn make_parts(x: &Natural, lower: &Natural, upper: &Natural) -> (Ratio, Ratio) {
    let remainder = Ratio::new(diff_ratio(x, lower), diff_ratio(upper, lower));
    let span = Ratio::new(BigInt::from(upper.clone()), BigInt::from(lower.clone()));
    let scale = Ratio::one() + (span - Ratio::one()) * &remainder;
    (remainder, scale)
}

/// Locate x in its succession cell. The primorial succession is walked
/// directly (it grows super-exponentially); the prime succession uses the
/// table when x is inside it and neighbor scanning beyond.
pub fn decompose(engine: &PrimeEngine, x: &Natural, kind: SuccessionKind) -> Result<Representation> {
    let first = Natural::from(2u32);
    if x < &first {
        return Err(Error::Domain(format!(
            "{x} lies below the first {kind} element 2"
        )));
    }
    match kind {
        SuccessionKind::Prime => {
            let (lower, upper) = engine.neighbor_primes(x)?;
            let index = lower.to_u64().and_then(|p| engine.prime_index(p));
            let (remainder, scale) = make_parts(x, &lower, &upper);
            Ok(Representation {
                index,
                lower,
                upper,
                remainder,
                scale,
            })
        }
        SuccessionKind::Primorial => {
            let mut n = 1u64;
            let mut lower = first;
            let mut upper = Natural::from(6u32);
            while &upper <= x {
                n += 1;
                let p = engine.nth_prime(n + 1)?;
                lower = upper;
                upper = &lower * p;
            }
            let (remainder, scale) = make_parts(x, &lower, &upper);
            Ok(Representation {
                index: Some(n),
                lower,
                upper,
                remainder,
                scale,
            })
        }
    }
}

/// Evaluate the succession at a fractional position: y(n, r) is the convex
/// combination a_{n+1} r + a_n (1 - r), exact as a rational.
pub fn compose(engine: &PrimeEngine, n: u64, r: &Ratio, kind: SuccessionKind) -> Result<Ratio> {
    if r.is_negative() || r >= &Ratio::one() {
        return Err(Error::Domain(format!("remainder {r} outside [0, 1)")));
    }
    let lower = ratio_from_natural(kind.element(engine, n)?);
    let upper = ratio_from_natural(kind.element(engine, n + 1)?);
    Ok(&upper * r + &lower * (Ratio::one() - r))
}
