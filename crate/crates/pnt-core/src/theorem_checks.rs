//! Finite-range verification of the inequalities the estimator chain rests
//! on: the prime-gap bound, the primorial-versus-prime-power threshold, the
//! Mertens product ratio, and the bracket invariants of the log families.
//!
//! Every statement checked here is proved, so a nonzero violation count is
//! an implementation bug, not a mathematical discovery. The reports say
//! exactly which range was scanned; nothing is claimed past it.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{ln_natural, ratio_from_natural, Natural, Real64};
use crate::log_family::{prime_cell, primorial_cell, PrimeLogVariant, PrimorialLogVariant};
use crate::prime_engine::{for_each_prime, PrimeEngine};
use crate::rng::SplitMix64;
use crate::totative_estimator::{mertens_products_exact, tot_star, EXP_EULER_GAMMA};

/// Outcome of one finite scan. `violations` counts failed instances and
/// `witness` pins the first one (or, for the threshold scan, the threshold
/// itself). `elapsed` is wall-clock and intentionally kept out of `Display`
/// so rendered reports stay byte-stable.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check_name: String,
    pub range_tested: (Natural, Natural),
    pub violations: u64,
    pub witness: Option<Natural>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: range [{}, {}], violations {}",
            self.check_name, self.range_tested.0, self.range_tested.1, self.violations
        )?;
        if let Some(w) = &self.witness {
            write!(f, ", witness {w}")?;
        }
        Ok(())
    }
}

/// Scan the prime-gap bound p_{n+1} <= 2 p_n - 1 for n = 1..max_n, together
/// with its two-step consequence ln(p_{n+2} / p_n) < 2.
pub fn check_bertrand(engine: &PrimeEngine, max_n: u64) -> Result<CheckReport> {
    if max_n < 1 {
        return Err(Error::Domain("the gap scan needs max_n >= 1".into()));
    }
    let start = Instant::now();
    let mut violations = 0u64;
    let mut witness = None;
    engine.with_first_primes(max_n + 2, |primes| {
        for n in 1..=max_n as usize {
            let p = primes[n - 1];
            // the bound is stated with its exact constant, equality allowed
            #[allow(clippy::int_plus_one)]
            let gap_ok = primes[n] <= 2 * p - 1;
            let log_ok = (primes[n + 1] as f64 / p as f64).ln() < 2.0;
            if !(gap_ok && log_ok) {
                violations += 1;
                if witness.is_none() {
                    witness = Some(Natural::from(n as u64));
                }
            }
        }
    })?;
    Ok(CheckReport {
        check_name: "bertrand".into(),
        range_tested: (Natural::one(), Natural::from(max_n)),
        violations,
        witness,
        elapsed: start.elapsed(),
    })
}

/// Smallest N such that p_{n+1}^m < #(n) for every n in [N, scan_limit],
/// decided by exact big-integer comparison. The inequality eventually holds
/// for all n, but a finite scan can only certify it up to scan_limit, so the
/// returned N is an empirical threshold for that range.
pub fn suzuki_threshold(engine: &PrimeEngine, m: u64, scan_limit: u64) -> Result<u64> {
    if m < 1 {
        return Err(Error::Domain("the exponent m must be at least 1".into()));
    }
    if scan_limit < 1 {
        return Err(Error::Domain("scan_limit must be at least 1".into()));
    }
    let exp = u32::try_from(m)
        .map_err(|_| Error::Domain(format!("exponent {m} is far past any primorial scan")))?;
    let last_fail = engine.with_first_primes(scan_limit + 1, |primes| {
        let mut primorial = Natural::one();
        let mut last_fail = 0u64;
        for n in 1..=scan_limit as usize {
            primorial *= primes[n - 1];
            if Natural::from(primes[n]).pow(exp) >= primorial {
                last_fail = n as u64;
            }
        }
        last_fail
    })?;
    if last_fail >= scan_limit {
        return Err(Error::NotFound(format!(
            "no index below {scan_limit} where p^{m} stays under the primorial"
        )));
    }
    Ok(last_fail + 1)
}

/// Find the threshold for exponent m, then verify the equivalent log form
/// ln(p_{n+1}) / ln(#(n)) < 1/m over [N, scan_limit]. The witness is the
/// threshold N.
pub fn check_suzuki(engine: &PrimeEngine, m: u64, scan_limit: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let threshold = suzuki_threshold(engine, m, scan_limit)?;
    let bound = 1.0 / m as f64;
    let mut violations = 0u64;
    engine.with_first_primes(scan_limit + 1, |primes| {
        let mut primorial = Natural::one();
        for n in 1..=scan_limit as usize {
            primorial *= primes[n - 1];
            if (n as u64) < threshold {
                continue;
            }
            let ratio = ln_natural(&Natural::from(primes[n]))
                .expect("prime is positive")
                / ln_natural(&primorial).expect("primorial past the threshold exceeds 1");
            if ratio >= bound {
                violations += 1;
            }
        }
    })?;
    Ok(CheckReport {
        check_name: "suzuki".into(),
        range_tested: (Natural::from(threshold), Natural::from(scan_limit)),
        violations,
        witness: Some(Natural::from(threshold)),
        elapsed: start.elapsed(),
    })
}

/// The product of p/(p-1) over primes p <= x, divided by e^gamma ln x. Tends
/// to 1; the factors are streamed off the sieve and accumulated as a
/// compensated sum of ln(1 + 1/(p-1)) to keep float error flat across
/// millions of terms.
pub fn mertens_ratio(engine: &PrimeEngine, x: &Natural) -> Result<Real64> {
    if *x < Natural::from(2u32) {
        return Err(Error::Domain("the prime product starts at 2".into()));
    }
    let cap = engine.config().sieve_threshold;
    let bound = x
        .to_u64()
        .filter(|&v| v <= cap)
        .ok_or_else(|| Error::Resource {
            what: "prime stream for the Mertens product".into(),
            bound: cap,
        })?;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for_each_prime(bound, engine.config().segment_size, |p| {
        let term = (1.0 / (p - 1) as f64).ln_1p();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    });
    Ok(sum.exp() / (EXP_EULER_GAMMA * ln_natural(x)?))
}

/// One sampled x passes when every fixed variant of both log families sits
/// inside its family's [minus, plus] bracket (which also contains ln x) and
/// the exact rational squeeze f <= x/tot* < g holds.
fn squeeze_holds_at(engine: &PrimeEngine, x: &Natural) -> Result<bool> {
    let lnx = ln_natural(x)?;

    let pc = prime_cell(engine, x)?;
    // x = 2 sits in the first prime cell, which has nothing below it; the
    // bracket floor falls back to the center there
    let lo = if pc.prev.is_some() {
        pc.eval(&PrimeLogVariant::Minus)?
    } else {
        pc.eval(&PrimeLogVariant::StarCenter)?
    };
    let hi = pc.eval(&PrimeLogVariant::Plus)?;
    if !(lo <= lnx && lnx <= hi) {
        return Ok(false);
    }
    for v in PrimeLogVariant::FIXED {
        if pc.prev.is_none()
            && matches!(v, PrimeLogVariant::Minus | PrimeLogVariant::StarBlend)
        {
            continue;
        }
        let val = pc.eval(&v)?;
        if !(lo <= val && val <= hi) {
            return Ok(false);
        }
    }

    let cell = primorial_cell(engine, x)?;
    let lo = cell.eval(&PrimorialLogVariant::Minus)?;
    let hi = cell.eval(&PrimorialLogVariant::Plus)?;
    if !(lo <= lnx && lnx <= hi) {
        return Ok(false);
    }
    for v in PrimorialLogVariant::FIXED {
        let val = cell.eval(&v)?;
        if !(lo <= val && val <= hi) {
            return Ok(false);
        }
    }

    let ts = tot_star(engine, x)?;
    let (f, g) = mertens_products_exact(engine, x)?;
    let quotient = ratio_from_natural(x.clone()) / ts;
    Ok(f <= quotient && quotient < g)
}

/// Draw `samples` values of x uniformly from [2, x_max] and count the ones
/// where a bracket or the rational squeeze fails. The seed makes reruns
/// reproducible.
pub fn check_squeeze_brackets(
    engine: &PrimeEngine,
    samples: u64,
    x_max: &Natural,
    seed: u64,
) -> Result<CheckReport> {
    if samples < 1 {
        return Err(Error::Domain("at least one sample is needed".into()));
    }
    let hi = x_max
        .to_u64()
        .ok_or_else(|| Error::Range("sampling bound must fit in 64 bits".into()))?;
    if hi < 2 {
        return Err(Error::Domain("sampling range starts at 2".into()));
    }
    let start = Instant::now();
    let mut rng = SplitMix64::new(seed);
    let mut violations = 0u64;
    let mut witness = None;
    for _ in 0..samples {
        let x = Natural::from(rng.range(2, hi));
        if !squeeze_holds_at(engine, &x)? {
            violations += 1;
            if witness.is_none() {
                witness = Some(x);
            }
        }
    }
    Ok(CheckReport {
        check_name: "squeeze".into(),
        range_tested: (Natural::from(2u32), x_max.clone()),
        violations,
        witness,
        elapsed: start.elapsed(),
    })
}
