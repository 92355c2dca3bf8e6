//! Prime generation, exact counting, and nearest-prime search.
//!
//! A `PrimeEngine` owns a growable prime table plus the configured limits and
//! picks the cheapest exact strategy per query: direct table lookup, streaming
//! segmented sieve, a Meissel-style counting recurrence, or embedded exact
//! checkpoints at powers of ten.

mod lucy;
mod primality;
mod sieve;

pub use primality::{is_prime_natural, is_prime_u64};

use std::sync::RwLock;

use num_traits::ToPrimitive;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactnum::Natural;

/// Exact values of π(10^k) for k = 1..25, as published in the computational
/// record (verified against OEIS A006880).
const PI_POWERS_OF_TEN: [&str; 25] = [
    "4",
    "25",
    "168",
    "1229",
    "9592",
    "78498",
    "664579",
    "5761455",
    "50847534",
    "455052511",
    "4118054813",
    "37607912018",
    "346065536839",
    "3204941750802",
    "29844570422669",
    "279238341033925",
    "2623557157654233",
    "24739954287740860",
    "234057667276344607",
    "2220819602560918840",
    "21127269486018731928",
    "201467286689315906290",
    "1925320391606803968923",
    "18435599767349200867866",
    "176846309399143769411680",
];

/// Largest bound the engine will sieve implicitly when a query needs more
/// primes; explicit `sieve` calls are not capped.
const MAX_IMPLICIT_BOUND: u64 = 100_000_000;

/// All primes up to a bound, in increasing order.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    primes: Vec<u64>,
    bound: u64,
}

impl PrimeTable {
    /// Sieve all primes ≤ bound. Memory for the sieve itself stays
    /// proportional to `segment_size`; the result holds every prime found.
    pub fn new(bound: u64, segment_size: usize) -> Result<PrimeTable> {
        if bound < 2 {
            return Err(Error::EmptyTable(bound));
        }
        Ok(PrimeTable {
            primes: sieve::primes_up_to(bound, segment_size),
            bound,
        })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The nth prime, 1-based: nth(1) = 2.
    pub fn nth(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.primes.get(n as usize - 1).copied()
    }

    /// π(x), valid for x ≤ bound.
    pub fn count_le(&self, x: u64) -> u64 {
        debug_assert!(x <= self.bound);
        self.primes.partition_point(|&p| p <= x) as u64
    }

    /// 1-based index of p if p is prime and within bound.
    pub fn index_of(&self, p: u64) -> Option<u64> {
        let i = self.primes.partition_point(|&q| q < p);
        (self.primes.get(i) == Some(&p)).then(|| i as u64 + 1)
    }
}

/// Exact π at a power of ten, held as an embedded constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiCheckpoint {
    pub exponent: u32,
    pub pi_value: Natural,
}

/// Strategy selector for `count_primes`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Pick the cheapest exact method for the value.
    Auto,
    /// Streaming segmented sieve.
    Sieve,
    /// Meissel-style recurrence, O(x^{3/4}).
    Combinatorial,
    /// Embedded exact values at 10^k, 1 ≤ k ≤ 25.
    Checkpoint,
}

impl std::str::FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<CountMethod> {
        match s {
            "auto" => Ok(CountMethod::Auto),
            "sieve" => Ok(CountMethod::Sieve),
            "combinatorial" => Ok(CountMethod::Combinatorial),
            "checkpoint" => Ok(CountMethod::Checkpoint),
            _ => Err(Error::Parse(format!(
                "unknown counting method {s:?} (expected auto, sieve, combinatorial, or checkpoint)"
            ))),
        }
    }
}

/// Sieve all primes up to `bound` into a standalone table.
pub fn sieve(bound: u64, segment_size: usize) -> Result<PrimeTable> {
    PrimeTable::new(bound, segment_size)
}

/// Visit each prime ≤ bound in order without materializing the list.
pub fn for_each_prime(bound: u64, segment_size: usize, visit: impl FnMut(u64)) {
    sieve::for_each_prime(bound, segment_size, visit)
}

/// π(10^k) for 1 ≤ k ≤ 25.
pub fn checkpoint(k: u32) -> Option<Natural> {
    let i = k.checked_sub(1)? as usize;
    PI_POWERS_OF_TEN
        .get(i)
        .map(|s| s.parse().expect("checkpoint constants parse"))
}

/// All embedded checkpoints in exponent order.
pub fn checkpoints() -> Vec<PiCheckpoint> {
    (1..=25)
        .map(|exponent| PiCheckpoint {
            exponent,
            pi_value: checkpoint(exponent).expect("k in 1..=25"),
        })
        .collect()
}

/// Some(k) when x = 10^k with k ≥ 1.
pub fn power_of_ten(x: &Natural) -> Option<u32> {
    let s = x.to_string();
    let mut digits = s.chars();
    if digits.next() != Some('1') || !digits.all(|c| c == '0') {
        return None;
    }
    (s.len() > 1).then_some((s.len() - 1) as u32)
}

pub struct PrimeEngine {
    config: Config,
    table: RwLock<PrimeTable>,
}

impl PrimeEngine {
    pub fn new(config: Config) -> PrimeEngine {
        let table = PrimeTable::new(1 << 12, config.segment_size).expect("seed table");
        PrimeEngine {
            config,
            table: RwLock::new(table),
        }
    }

    pub fn with_defaults() -> PrimeEngine {
        PrimeEngine::new(Config::default())
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    fn implicit_cap(&self) -> u64 {
        self.config.sieve_threshold.min(MAX_IMPLICIT_BOUND)
    }

    /// Grow the shared table to cover `bound`. Doubling amortizes repeated
    /// small extensions; the implicit cap bounds memory.
    fn grow_to(&self, bound: u64) -> Result<()> {
        let current = self.table.read().expect("table lock").bound();
        if bound <= current {
            return Ok(());
        }
        let cap = self.implicit_cap();
        if bound > cap {
            return Err(Error::Resource {
                what: format!("prime table through {bound}"),
                bound: cap,
            });
        }
        let target = bound.max(current.saturating_mul(2)).min(cap);
        let grown = PrimeTable::new(target, self.config.segment_size)?;
        let mut table = self.table.write().expect("table lock");
        if grown.bound() > table.bound() {
            *table = grown;
        }
        Ok(())
    }

    /// Sieve an explicit standalone table using the configured segment size.
    pub fn sieve(&self, bound: u64) -> Result<PrimeTable> {
        PrimeTable::new(bound, self.config.segment_size)
    }

    /// The nth prime, 1-based; the internal table extends on demand.
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Index("prime indices are 1-based".into()));
        }
        if let Some(p) = self.table.read().expect("table lock").nth(n) {
            return Ok(p);
        }
        self.grow_to(nth_prime_upper_bound(n))?;
        self.table
            .read()
            .expect("table lock")
            .nth(n)
            .ok_or_else(|| Error::Index(format!("prime table cannot reach index {n}")))
    }

    /// Run `f` over the first n primes without copying them out of the table.
    pub fn with_first_primes<R>(&self, n: u64, f: impl FnOnce(&[u64]) -> R) -> Result<R> {
        if n == 0 {
            return Ok(f(&[]));
        }
        self.nth_prime(n)?;
        let table = self.table.read().expect("table lock");
        Ok(f(&table.primes()[..n as usize]))
    }

    /// 1-based index of a prime p, when p is within implicit table reach.
    /// Values beyond the cap get no index; callers carry the primes by value.
    pub fn prime_index(&self, p: u64) -> Option<u64> {
        if p > self.implicit_cap() {
            return None;
        }
        self.grow_to(p).ok()?;
        self.table.read().expect("table lock").index_of(p)
    }

    /// Exact π(x) by the requested method.
    pub fn count_primes(&self, x: &Natural, method: CountMethod) -> Result<Natural> {
        if x < &Natural::from(2u32) {
            return Err(Error::Domain(format!("prime counting requires x >= 2, got {x}")));
        }
        match method {
            CountMethod::Sieve => {
                let u = self.u64_within(x, self.config.sieve_threshold, "sieve count of")?;
                Ok(Natural::from(sieve::count_up_to(u, self.config.segment_size)))
            }
            CountMethod::Combinatorial => {
                let u = self.u64_within(
                    x,
                    self.config.combinatorial_threshold,
                    "combinatorial count of",
                )?;
                Ok(Natural::from(lucy::count(u)))
            }
            CountMethod::Checkpoint => match power_of_ten(x).and_then(checkpoint) {
                Some(pi) => Ok(pi),
                None => Err(Error::UnsupportedRange(format!(
                    "checkpoints cover x = 10^k with 1 <= k <= 25, got {x}"
                ))),
            },
            CountMethod::Auto => self.count_auto(x),
        }
    }

    fn count_auto(&self, x: &Natural) -> Result<Natural> {
        if let Some(u) = x.to_u64() {
            {
                let table = self.table.read().expect("table lock");
                if u <= table.bound() {
                    return Ok(Natural::from(table.count_le(u)));
                }
            }
            if u <= self.config.combinatorial_threshold {
                return Ok(Natural::from(lucy::count(u)));
            }
            if u <= self.config.sieve_threshold {
                return Ok(Natural::from(sieve::count_up_to(u, self.config.segment_size)));
            }
        }
        if let Some(pi) = power_of_ten(x).and_then(checkpoint) {
            return Ok(pi);
        }
        Err(Error::UnsupportedRange(format!(
            "{x} exceeds every counting threshold (sieve {}, combinatorial {}) and is not 10^k with k <= 25",
            self.config.sieve_threshold, self.config.combinatorial_threshold
        )))
    }

    /// (p, q) with p the largest prime ≤ x and q the smallest prime > x.
    pub fn neighbor_primes(&self, x: &Natural) -> Result<(Natural, Natural)> {
        if x < &Natural::from(2u32) {
            return Err(Error::Domain(format!("no prime lies at or below {x}")));
        }
        if let Some(u) = x.to_u64() {
            {
                let table = self.table.read().expect("table lock");
                if u < table.bound() {
                    let primes = table.primes();
                    let i = primes.partition_point(|&p| p <= u);
                    if i > 0 && i < primes.len() {
                        return Ok((Natural::from(primes[i - 1]), Natural::from(primes[i])));
                    }
                }
            }
            if u <= u64::MAX - 2048 {
                return Ok((
                    Natural::from(prev_at_or_below_u64(u)),
                    Natural::from(next_above_u64(u)),
                ));
            }
        }
        Ok((prev_at_or_below_wide(x), next_above_wide(x)))
    }

    /// Largest prime strictly below a prime p.
    pub fn prev_prime_before(&self, p: &Natural) -> Result<Natural> {
        if *p == Natural::from(2u32) {
            return Err(Error::NoPredecessor);
        }
        if !is_prime_natural(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let below = p - 1u32;
        let (prev, _) = self.neighbor_primes(&below)?;
        Ok(prev)
    }

    /// Primality through the engine: deterministic below 2^64, strong
    /// probable-prime test above.
    pub fn is_prime(&self, n: &Natural) -> bool {
        is_prime_natural(n)
    }

    fn u64_within(&self, x: &Natural, limit: u64, what: &str) -> Result<u64> {
        x.to_u64()
            .filter(|&u| u <= limit)
            .ok_or_else(|| Error::Resource {
                what: format!("{what} {x}"),
                bound: limit,
            })
    }
}

/// Rosser-type bound: p_n < n (ln n + ln ln n) for n ≥ 6.
fn nth_prime_upper_bound(n: u64) -> u64 {
    if n < 6 {
        return 16;
    }
    let nf = n as f64;
    (nf * (nf.ln() + nf.ln().ln())).ceil() as u64 + 16
}

fn prev_at_or_below_u64(x: u64) -> u64 {
    debug_assert!(x >= 2);
    if x == 2 {
        return 2;
    }
    let mut c = if x.is_multiple_of(2) { x - 1 } else { x };
    loop {
        if c == 1 {
            return 2;
        }
        if is_prime_u64(c) {
            return c;
        }
        c -= 2;
    }
}

fn next_above_u64(x: u64) -> u64 {
    let mut c = x + 1;
    if c.is_multiple_of(2) {
        if c == 2 {
            return 2;
        }
        c += 1;
    }
    while !is_prime_u64(c) {
        c += 2;
    }
    c
}

fn prev_at_or_below_wide(x: &Natural) -> Natural {
    use num_integer::Integer;
    let mut c = if x.is_even() { x - 1u32 } else { x.clone() };
    while !is_prime_natural(&c) {
        c -= 2u32;
    }
    c
}

fn next_above_wide(x: &Natural) -> Natural {
    use num_integer::Integer;
    let mut c = x + 1u32;
    if c.is_even() {
        c += 1u32;
    }
    while !is_prime_natural(&c) {
        c += 2u32;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_natural, pow10};

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn sieve_matches_listed_primes() {
        let t = sieve(31, 1 << 16).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
        assert_eq!(t.bound(), 31);
        let single = sieve(2, 1 << 16).unwrap();
        assert_eq!(single.primes(), &[2]);
        assert_eq!(sieve(1_000_000, 1 << 18).unwrap().len(), 78_498);
    }

    #[test]
    fn sieve_rejects_empty_range() {
        assert!(matches!(sieve(1, 64), Err(Error::EmptyTable(1))));
        assert!(matches!(sieve(0, 64), Err(Error::EmptyTable(0))));
    }

    #[test]
    fn table_lookups() {
        let t = sieve(100, 1 << 16).unwrap();
        assert_eq!(t.nth(1), Some(2));
        assert_eq!(t.nth(25), Some(97));
        assert_eq!(t.nth(26), None);
        assert_eq!(t.nth(0), None);
        assert_eq!(t.count_le(97), 25);
        assert_eq!(t.count_le(96), 24);
        assert_eq!(t.index_of(2), Some(1));
        assert_eq!(t.index_of(31), Some(11));
        assert_eq!(t.index_of(32), None);
    }

    #[test]
    fn nth_prime_examples() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(engine.nth_prime(1).unwrap(), 2);
        assert_eq!(engine.nth_prime(5).unwrap(), 11);
        assert_eq!(engine.nth_prime(11).unwrap(), 31);
        assert!(matches!(engine.nth_prime(0), Err(Error::Index(_))));
    }

    #[test]
    fn nth_prime_extends_past_seed_table() {
        let engine = PrimeEngine::with_defaults();
        // seed table holds ~564 primes; force several growth steps
        assert_eq!(engine.nth_prime(10_000).unwrap(), 104_729);
        assert_eq!(engine.nth_prime(100_000).unwrap(), 1_299_709);
    }

    #[test]
    fn nth_prime_strictly_increases() {
        let engine = PrimeEngine::with_defaults();
        let mut last = 1;
        for n in 1..=100_000u64 {
            let p = engine.nth_prime(n).unwrap();
            assert!(p > last, "p_{n} = {p} after {last}");
            last = p;
        }
    }

    #[test]
    fn count_examples() {
        let engine = PrimeEngine::with_defaults();
        for method in [CountMethod::Auto, CountMethod::Sieve, CountMethod::Combinatorial] {
            assert_eq!(engine.count_primes(&nat(10), method).unwrap(), nat(4));
            assert_eq!(engine.count_primes(&nat(100), method).unwrap(), nat(25));
        }
        assert!(engine.count_primes(&nat(1), CountMethod::Auto).is_err());
    }

    #[test]
    fn count_methods_agree_on_random_values() {
        let engine = PrimeEngine::with_defaults();
        let mut rng = crate::rng::SplitMix64::new(0x00c0ffee);
        for _ in 0..100 {
            let x = rng.range(2, 10_000_000);
            let s = engine.count_primes(&nat(x), CountMethod::Sieve).unwrap();
            let c = engine
                .count_primes(&nat(x), CountMethod::Combinatorial)
                .unwrap();
            assert_eq!(s, c, "x = {x}");
        }
    }

    #[test]
    fn checkpoints_cover_all_exponents() {
        let all = checkpoints();
        assert_eq!(all.len(), 25);
        assert_eq!(all[0].pi_value, nat(4));
        assert_eq!(all[8].pi_value, nat(50_847_534));
        assert_eq!(
            all[24].pi_value,
            parse_natural("176846309399143769411680").unwrap()
        );
        assert!(checkpoint(0).is_none());
        assert!(checkpoint(26).is_none());
    }

    #[test]
    fn checkpoints_match_computed_counts() {
        let engine = PrimeEngine::with_defaults();
        for k in 1..=8u32 {
            let computed = engine
                .count_primes(&pow10(k), CountMethod::Combinatorial)
                .unwrap();
            assert_eq!(computed, checkpoint(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn checkpoint_method_requires_power_of_ten() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(
            engine
                .count_primes(&pow10(13), CountMethod::Checkpoint)
                .unwrap(),
            parse_natural("346065536839").unwrap()
        );
        assert!(matches!(
            engine.count_primes(&nat(99), CountMethod::Checkpoint),
            Err(Error::UnsupportedRange(_))
        ));
        assert!(matches!(
            engine.count_primes(&pow10(26), CountMethod::Checkpoint),
            Err(Error::UnsupportedRange(_))
        ));
    }

    #[test]
    fn auto_uses_checkpoints_beyond_thresholds() {
        let engine = PrimeEngine::new(Config {
            combinatorial_threshold: 1_000_000,
            sieve_threshold: 1_000_000,
            ..Config::default()
        });
        assert_eq!(
            engine.count_primes(&pow10(12), CountMethod::Auto).unwrap(),
            parse_natural("37607912018").unwrap()
        );
        assert!(matches!(
            engine.count_primes(&nat(2_000_003), CountMethod::Auto),
            Err(Error::UnsupportedRange(_))
        ));
    }

    #[test]
    fn explicit_methods_respect_thresholds() {
        let engine = PrimeEngine::new(Config {
            sieve_threshold: 1_000,
            combinatorial_threshold: 10_000,
            ..Config::default()
        });
        assert!(matches!(
            engine.count_primes(&nat(2_000), CountMethod::Sieve),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            engine.count_primes(&nat(20_000), CountMethod::Combinatorial),
            Err(Error::Resource { .. })
        ));
        assert_eq!(
            engine.count_primes(&nat(2_000), CountMethod::Combinatorial).unwrap(),
            nat(303)
        );
    }

    #[test]
    fn neighbor_examples() {
        let engine = PrimeEngine::with_defaults();
        let pair = |x: u64| {
            let (p, q) = engine.neighbor_primes(&nat(x)).unwrap();
            (p.to_u64().unwrap(), q.to_u64().unwrap())
        };
        assert_eq!(pair(10), (7, 11));
        assert_eq!(pair(7), (7, 11));
        assert_eq!(pair(30), (29, 31));
        assert_eq!(pair(2), (2, 3));
        assert_eq!(pair(3), (3, 5));
        assert_eq!(pair(4), (3, 5));
        assert!(engine.neighbor_primes(&nat(1)).is_err());
    }

    #[test]
    fn neighbor_scan_beyond_table() {
        let engine = PrimeEngine::with_defaults();
        let (p, q) = engine.neighbor_primes(&pow10(18)).unwrap();
        assert_eq!(p, parse_natural("999999999999999989").unwrap());
        assert_eq!(q, parse_natural("1000000000000000003").unwrap());
        let (p, q) = engine.neighbor_primes(&pow10(20)).unwrap();
        assert_eq!(p, parse_natural("99999999999999999989").unwrap());
        assert_eq!(q, parse_natural("100000000000000000039").unwrap());
        let (p, q) = engine.neighbor_primes(&(Natural::from(1u32) << 70)).unwrap();
        assert_eq!(p, parse_natural("1180591620717411303389").unwrap());
        assert_eq!(q, parse_natural("1180591620717411303449").unwrap());
    }

    #[test]
    fn neighbor_brackets_are_tight() {
        let engine = PrimeEngine::with_defaults();
        let mut rng = crate::rng::SplitMix64::new(0xfeed);
        for _ in 0..200 {
            let x = rng.range(2, 1_000_000);
            let (p, q) = engine.neighbor_primes(&nat(x)).unwrap();
            let (p, q) = (p.to_u64().unwrap(), q.to_u64().unwrap());
            assert!(p <= x && x < q);
            assert!(is_prime_u64(p) && is_prime_u64(q));
            for between in (p + 1)..q {
                assert!(!is_prime_u64(between), "missed prime {between} in ({p},{q})");
            }
        }
    }

    #[test]
    fn prev_prime_examples() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(engine.prev_prime_before(&nat(3)).unwrap(), nat(2));
        assert_eq!(engine.prev_prime_before(&nat(7)).unwrap(), nat(5));
        assert!(matches!(
            engine.prev_prime_before(&nat(2)),
            Err(Error::NoPredecessor)
        ));
        assert!(matches!(
            engine.prev_prime_before(&nat(4)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn prime_index_within_cap() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(engine.prime_index(2), Some(1));
        assert_eq!(engine.prime_index(31), Some(11));
        assert_eq!(engine.prime_index(30), None);
        assert_eq!(engine.prime_index(104_729), Some(10_000));
    }

    #[test]
    fn power_of_ten_detection() {
        assert_eq!(power_of_ten(&nat(10)), Some(1));
        assert_eq!(power_of_ten(&pow10(25)), Some(25));
        assert_eq!(power_of_ten(&nat(1)), None);
        assert_eq!(power_of_ten(&nat(20)), None);
        assert_eq!(power_of_ten(&nat(101)), None);
    }
}
