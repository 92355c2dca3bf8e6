//! Runtime limits for the counting and enumeration machinery.

/// Tunable limits. Every field has a safe default; raising a threshold trades
/// time or memory for reach.
#[derive(Debug, Clone)]
pub struct Config {
    /// Largest x the segmented sieve will count primes below.
    pub sieve_threshold: u64,
    /// Largest x the divisor-grouped counting recurrence will accept.
    pub combinatorial_threshold: u64,
    /// Numbers covered per sieve segment; controls the working-set size.
    pub segment_size: usize,
    /// Largest primorial for which totatives may be materialized.
    pub totative_enumeration_bound: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            sieve_threshold: 1_000_000_000,
            combinatorial_threshold: 1_000_000_000_000,
            segment_size: 1 << 20,
            totative_enumeration_bound: 100_000_000,
        }
    }
}
