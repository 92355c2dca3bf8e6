//! Prime counting by a Meissel-style sieve recurrence.
//!
//! Maintains S(v) = how many of 2..=v survive sieving by all primes up to p,
//! but only at the O(sqrt x) distinct values v = floor(x / i). Once every
//! prime p ≤ sqrt(x) has been applied, S(v) = π(v). Runs in O(x^{3/4}) time
//! and O(sqrt x) memory.

use super::sieve::isqrt;

/// Exact π(x).
pub fn count(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let r = isqrt(x);
    // small[v] = S(v) for v ≤ r; large[i] = S(x / i) for i ≤ x / r
    let imax = x / r;
    let mut small: Vec<u64> = (0..=r).map(|v| v.saturating_sub(1)).collect();
    let mut large: Vec<u64> = vec![0; imax as usize + 1];
    for i in 1..=imax {
        large[i as usize] = x / i - 1;
    }
    for p in 2..=r {
        // small[v] for v < p^2 is already final, so this detects primes
        if small[p as usize] == small[p as usize - 1] {
            continue;
        }
        let below = small[p as usize - 1]; // primes strictly below p
        let p2 = p * p;
        let ilim = (x / p2).min(imax);
        for i in 1..=ilim {
            let d = i * p;
            let inner = if d <= imax {
                large[d as usize]
            } else {
                small[(x / d) as usize]
            };
            large[i as usize] -= inner - below;
        }
        let mut v = r;
        while v >= p2 {
            small[v as usize] -= small[(v / p) as usize] - below;
            v -= 1;
        }
    }
    large[1]
}
