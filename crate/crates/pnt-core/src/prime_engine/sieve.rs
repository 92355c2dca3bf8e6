//! Segmented sieve of Eratosthenes over odd numbers.
//!
//! Memory use is proportional to the segment size, never to the bound, so
//! counting primes below 10^9 needs only a fixed working set.

/// Integer square root without relying on float precision at the boundary.
pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Primes up to `limit` inclusive by a plain odd-only sieve. Intended for
/// base-prime generation, so `limit` should stay near sqrt of the real bound.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut out = vec![2u64];
    if limit < 3 {
        return out;
    }
    // slot i holds the odd number 2i + 3
    let slots = ((limit - 3) / 2 + 1) as usize;
    let mut composite = vec![false; slots];
    let mut i = 0usize;
    loop {
        let p = 2 * i as u64 + 3;
        if p * p > limit {
            break;
        }
        if !composite[i] {
            let mut m = ((p * p) - 3) / 2;
            while (m as usize) < slots {
                composite[m as usize] = true;
                m += p;
            }
        }
        i += 1;
    }
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 3),
    );
    out
}

/// Visit every prime ≤ bound in increasing order. `segment_size` is the count
/// of integers covered per segment.
pub fn for_each_prime(bound: u64, segment_size: usize, mut visit: impl FnMut(u64)) {
    if bound >= 2 {
        visit(2);
    }
    if bound < 3 {
        return;
    }
    let base = small_primes(isqrt(bound));
    // even span keeps segment starts odd
    let span = (segment_size.max(1 << 14) as u64 + 1) & !1;
    let mut mark: Vec<bool> = Vec::new();
    let mut low = 3u64;
    while low <= bound {
        let high = low.saturating_add(span - 1).min(bound);
        let slots = ((high - low) / 2 + 1) as usize;
        mark.clear();
        mark.resize(slots, false);
        for &p in base.iter().skip(1) {
            if p * p > high {
                break;
            }
            let mut m = if p * p >= low {
                p * p
            } else {
                let first = low.div_ceil(p) * p;
                if first % 2 == 0 {
                    first + p
                } else {
                    first
                }
            };
            while m <= high {
                mark[((m - low) / 2) as usize] = true;
                match m.checked_add(2 * p) {
                    Some(next) => m = next,
                    None => break,
                }
            }
        }
        for (i, &c) in mark.iter().enumerate() {
            if !c {
                visit(low + 2 * i as u64);
            }
        }
        match low.checked_add(span) {
            Some(next) => low = next,
            None => break,
        }
    }
}

/// Collect all primes ≤ bound.
pub fn primes_up_to(bound: u64, segment_size: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_prime(bound, segment_size, |p| out.push(p));
    out
}

/// π(bound) by streaming over segments, storing nothing.
pub fn count_up_to(bound: u64, segment_size: usize) -> u64 {
    let mut n = 0u64;
    for_each_prime(bound, segment_size, |_| n += 1);
    n
}
