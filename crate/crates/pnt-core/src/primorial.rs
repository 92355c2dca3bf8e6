//! Primorials, their totients, and totative enumeration.
//!
//! The totatives of order n are the elements of {2, ..., #(n)+1} coprime to
//! the primorial #(n); their count equals the totient of #(n), and every
//! prime above the nth one appears among them as long as it fits the range.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::Natural;
use crate::prime_engine::PrimeEngine;

/// Ordered totatives of #(n) within {2, ..., #(n)+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotativeSet {
    pub n: u64,
    pub members: Vec<u64>,
}

/// Balanced product of a slice; keeps operand sizes even so large products
/// stay near the fast end of big-integer multiplication.
fn product_tree(parts: &[u64]) -> Natural {
    match parts.len() {
        0 => Natural::one(),
        1 => Natural::from(parts[0]),
        len => {
            let (a, b) = parts.split_at(len / 2);
            product_tree(a) * product_tree(b)
        }
    }
}

/// Exact primorial #(n), the product of the first n primes; #(0) = 1.
pub fn primorial(engine: &PrimeEngine, n: u64) -> Result<Natural> {
    engine.with_first_primes(n, product_tree)
}

/// Totient of #(n): the product of (p - 1) over the first n primes, taken
/// straight from the prime table rather than by factoring.
pub fn totient_of_primorial(engine: &PrimeEngine, n: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::Index(
            "totient of a primorial is defined for n >= 1".into(),
        ));
    }
    engine.with_first_primes(n, |primes| {
        let shifted: Vec<u64> = primes.iter().map(|p| p - 1).collect();
        product_tree(&shifted)
    })
}

/// Number of totatives of order n; equal to the totient of #(n).
pub fn totative_count(engine: &PrimeEngine, n: u64) -> Result<Natural> {
    totient_of_primorial(engine, n)
}

/// Materialize the totatives of order n. Memory and time grow with #(n), so
/// the configured enumeration bound gates the request.
pub fn enumerate_totatives(engine: &PrimeEngine, n: u64) -> Result<TotativeSet> {
    if n == 0 {
        return Err(Error::Index("totatives are defined for n >= 1".into()));
    }
    let value = primorial(engine, n)?;
    let bound = engine.config().totative_enumeration_bound;
    let value: u64 = value.try_into().map_err(|_| Error::Resource {
        what: format!("totative enumeration at order {n}"),
        bound,
    })?;
    if value > bound {
        return Err(Error::Resource {
            what: format!("totative enumeration at order {n} (primorial {value})"),
            bound,
        });
    }

    // mark multiples of the first n primes across {2, ..., value + 1}
    let lo = 2u64;
    let hi = value + 1;
    let slots = (hi - lo + 1) as usize;
    let mut marked = vec![0u64; slots.div_ceil(64)];
    engine.with_first_primes(n, |primes| {
        for &p in primes {
            let mut m = p.max(lo.div_ceil(p) * p);
            while m <= hi {
                let i = (m - lo) as usize;
                marked[i / 64] |= 1 << (i % 64);
                m += p;
            }
        }
    })?;
    let members = (lo..=hi)
        .filter(|&v| {
            let i = (v - lo) as usize;
            marked[i / 64] & (1 << (i % 64)) == 0
        })
        .collect();
    Ok(TotativeSet { n, members })
}
