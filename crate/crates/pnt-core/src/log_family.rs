//! Families of functions asymptotic to ln(x), indexed by the prime and
//! primorial successions.
//!
//! Each family reads the exact cell decomposition of x and replaces ln(x)
//! with the log of a nearby succession element, optionally corrected by an
//! exact rational blend; the true ln(x) always lies between the minus and
//! plus variants of each family.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{ln_natural, ln_ratio, ratio_from_natural, Natural, Ratio, Real64};
use crate::prime_engine::PrimeEngine;
use crate::representation::{decompose, SuccessionKind};

/// Which succession a variant is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFamily {
    Prime,
    Primorial,
}

impl std::str::FromStr for LogFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<LogFamily> {
        match s {
            "prime" => Ok(LogFamily::Prime),
            "primorial" => Ok(LogFamily::Primorial),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?} (expected prime or primorial)"
            ))),
        }
    }
}

/// Prime-indexed variants around x: with p = largest prime ≤ x, q = next
/// prime, and o = prime before p,
/// minus = ln o, plus = ln q, star_center = ln p,
/// star_blend = ln o + ln(1 + (p/o - 1) r), parametric(a) = ln o + ln a.
#[derive(Debug, Clone, PartialEq)]
pub enum PrimeLogVariant {
    Minus,
    Plus,
    StarCenter,
    StarBlend,
    Parametric(Ratio),
}

impl PrimeLogVariant {
    /// The variants that need no caller-supplied parameter.
    pub const FIXED: [PrimeLogVariant; 4] = [
        PrimeLogVariant::Minus,
        PrimeLogVariant::StarBlend,
        PrimeLogVariant::StarCenter,
        PrimeLogVariant::Plus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PrimeLogVariant::Minus => "minus",
            PrimeLogVariant::Plus => "plus",
            PrimeLogVariant::StarCenter => "star_center",
            PrimeLogVariant::StarBlend => "star_blend",
            PrimeLogVariant::Parametric(_) => "parametric",
        }
    }
}

/// Primorial-indexed variants around x: with n the cell index, so that
/// #(n) ≤ x < #(n+1),
/// minus = ln #(n-1), plus = ln #(n+1), hash_center = ln #(n),
/// star_blend = ln #(n-1) + ln(1 + (p_n - 1) r),
/// diamond = ln #(n-1) + ln(n + r), parametric(a) = ln #(n-1) + ln a.
#[derive(Debug, Clone, PartialEq)]
pub enum PrimorialLogVariant {
    Minus,
    Plus,
    HashCenter,
    StarBlend,
    Diamond,
    Parametric(Ratio),
}

impl PrimorialLogVariant {
    /// The variants that need no caller-supplied parameter.
    pub const FIXED: [PrimorialLogVariant; 5] = [
        PrimorialLogVariant::Minus,
        PrimorialLogVariant::StarBlend,
        PrimorialLogVariant::HashCenter,
        PrimorialLogVariant::Diamond,
        PrimorialLogVariant::Plus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PrimorialLogVariant::Minus => "minus",
            PrimorialLogVariant::Plus => "plus",
            PrimorialLogVariant::HashCenter => "hash_center",
            PrimorialLogVariant::StarBlend => "star_blend",
            PrimorialLogVariant::Diamond => "diamond",
            PrimorialLogVariant::Parametric(_) => "parametric",
        }
    }
}

/// A variant from either family.
#[derive(Debug, Clone, PartialEq)]
pub enum LogVariant {
    Prime(PrimeLogVariant),
    Primorial(PrimorialLogVariant),
}

/// Prime-cell data shared by all prime-family variants. `prev` is absent
/// exactly when the cell starts at 2, which has no predecessor prime.
pub(crate) struct PrimeCell {
    pub prev: Option<Natural>,
    pub lower: Natural,
    pub upper: Natural,
    pub remainder: Ratio,
}

pub(crate) fn prime_cell(engine: &PrimeEngine, x: &Natural) -> Result<PrimeCell> {
    let rep = decompose(engine, x, SuccessionKind::Prime)?;
    let prev = if rep.lower == Natural::from(2u32) {
        None
    } else {
        Some(engine.prev_prime_before(&rep.lower)?)
    };
    Ok(PrimeCell {
        prev,
        lower: rep.lower,
        upper: rep.upper,
        remainder: rep.remainder,
    })
}

impl PrimeCell {
    fn predecessor(&self) -> Result<&Natural> {
        self.prev.as_ref().ok_or_else(|| {
            Error::Domain("x < 3 leaves no prime below the cell; minus-based variants need x >= 3".into())
        })
    }

    pub(crate) fn eval(&self, v: &PrimeLogVariant) -> Result<Real64> {
        match v {
            PrimeLogVariant::Plus => ln_natural(&self.upper),
            PrimeLogVariant::StarCenter => ln_natural(&self.lower),
            PrimeLogVariant::Minus => ln_natural(self.predecessor()?),
            PrimeLogVariant::StarBlend => {
                let prev = self.predecessor()?;
                let span = Ratio::new(self.lower.clone().into(), prev.clone().into());
                let blend = Ratio::one() + (span - Ratio::one()) * &self.remainder;
                Ok(ln_natural(prev)? + ln_ratio(&blend)?)
            }
            PrimeLogVariant::Parametric(a) => {
                let prev = self.predecessor()?;
                let upper = Ratio::new(self.upper.clone().into(), prev.clone().into());
                if a < &Ratio::one() || a > &upper {
                    return Err(Error::Domain(format!(
                        "parameter {a} outside the admissible range [1, {upper}]"
                    )));
                }
                Ok(ln_natural(prev)? + ln_ratio(a)?)
            }
        }
    }
}

/// Primorial-cell data shared by all primorial-family variants.
pub(crate) struct PrimorialCell {
    pub n: u64,
    pub prev: Natural,
    pub lower: Natural,
    pub upper: Natural,
    pub p_n: u64,
    pub p_next: u64,
    pub remainder: Ratio,
}

pub(crate) fn primorial_cell(engine: &PrimeEngine, x: &Natural) -> Result<PrimorialCell> {
    let rep = decompose(engine, x, SuccessionKind::Primorial)?;
    let n = rep.index.expect("primorial index is always in reach");
    let p_n = engine.nth_prime(n)?;
    let p_next = engine.nth_prime(n + 1)?;
    let prev = &rep.lower / p_n;
    Ok(PrimorialCell {
        n,
        prev,
        lower: rep.lower,
        upper: rep.upper,
        p_n,
        p_next,
        remainder: rep.remainder,
    })
}

impl PrimorialCell {
    pub(crate) fn eval(&self, v: &PrimorialLogVariant) -> Result<Real64> {
        match v {
            PrimorialLogVariant::Minus => ln_natural(&self.prev),
            PrimorialLogVariant::Plus => ln_natural(&self.upper),
            PrimorialLogVariant::HashCenter => ln_natural(&self.lower),
            PrimorialLogVariant::StarBlend => {
                let blend =
                    Ratio::one() + Ratio::from_integer((self.p_n - 1).into()) * &self.remainder;
                Ok(ln_natural(&self.prev)? + ln_ratio(&blend)?)
            }
            PrimorialLogVariant::Diamond => {
                let shifted = ratio_from_natural(Natural::from(self.n)) + &self.remainder;
                Ok(ln_natural(&self.prev)? + ln_ratio(&shifted)?)
            }
            PrimorialLogVariant::Parametric(a) => {
                let upper = ratio_from_natural(Natural::from(self.p_n) * self.p_next);
                if a < &Ratio::one() || a > &upper {
                    return Err(Error::Domain(format!(
                        "parameter {a} outside the admissible range [1, {upper}]"
                    )));
                }
                Ok(ln_natural(&self.prev)? + ln_ratio(a)?)
            }
        }
    }
}

/// Evaluate a prime-family variant at x. Variants that reference the prime
/// below the cell require x ≥ 3.
pub fn eval_prime_family(
    engine: &PrimeEngine,
    x: &Natural,
    v: &PrimeLogVariant,
) -> Result<Real64> {
    prime_cell(engine, x)?.eval(v)
}

/// Evaluate a primorial-family variant at x ≥ 2. At n = 1 the cell below is
/// #(0) = 1, so minus-based variants are 0 plus their correction.
pub fn eval_primorial_family(
    engine: &PrimeEngine,
    x: &Natural,
    v: &PrimorialLogVariant,
) -> Result<Real64> {
    primorial_cell(engine, x)?.eval(v)
}

/// Evaluate a variant from either family.
pub fn eval(engine: &PrimeEngine, x: &Natural, v: &LogVariant) -> Result<Real64> {
    match v {
        LogVariant::Prime(v) => eval_prime_family(engine, x, v),
        LogVariant::Primorial(v) => eval_primorial_family(engine, x, v),
    }
}

/// The admissible (lower, upper) range for the parametric variant's a at x.
pub fn parametric_bounds(
    engine: &PrimeEngine,
    x: &Natural,
    family: LogFamily,
) -> Result<(Ratio, Ratio)> {
    match family {
        LogFamily::Prime => {
            let cell = prime_cell(engine, x)?;
            let prev = cell.predecessor()?;
            Ok((
                Ratio::one(),
                Ratio::new(cell.upper.clone().into(), prev.clone().into()),
            ))
        }
        LogFamily::Primorial => {
            let cell = primorial_cell(engine, x)?;
            Ok((
                Ratio::one(),
                ratio_from_natural(Natural::from(cell.p_n) * cell.p_next),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ln_natural, pow10, ratio};
    use crate::rng::SplitMix64;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen expected values
    fn prime_family_at_ten() {
        let engine = PrimeEngine::with_defaults();
        let x = nat(10);
        let at = |v: &PrimeLogVariant| eval_prime_family(&engine, &x, v).unwrap();
        close(at(&PrimeLogVariant::Minus), 1.60943791243410);
        close(at(&PrimeLogVariant::StarCenter), 1.94591014905531);
        close(at(&PrimeLogVariant::Plus), 2.39789527279837);
        close(at(&PrimeLogVariant::StarBlend), 1.87180217690159);
        close(
            at(&PrimeLogVariant::Parametric(ratio(2, 1))),
            2.30258509299405,
        );
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen expected values
    fn primorial_family_at_ten() {
        let engine = PrimeEngine::with_defaults();
        let x = nat(10);
        let at = |v: &PrimorialLogVariant| eval_primorial_family(&engine, &x, v).unwrap();
        close(at(&PrimorialLogVariant::Minus), 0.693147180559945);
        close(at(&PrimorialLogVariant::HashCenter), 1.79175946922806);
        close(at(&PrimorialLogVariant::Plus), 3.40119738166216);
        close(at(&PrimorialLogVariant::StarBlend), 0.980829253011726);
        close(at(&PrimorialLogVariant::Diamond), 1.46633706879343);
        close(
            at(&PrimorialLogVariant::Parametric(ratio(13, 6))),
            1.46633706879343,
        );
    }

    #[test]
    fn bounds_examples() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(
            parametric_bounds(&engine, &nat(10), LogFamily::Prime).unwrap(),
            (ratio(1, 1), ratio(11, 5))
        );
        assert_eq!(
            parametric_bounds(&engine, &nat(10), LogFamily::Primorial).unwrap(),
            (ratio(1, 1), ratio(15, 1))
        );
        assert_eq!(
            parametric_bounds(&engine, &nat(7), LogFamily::Prime).unwrap(),
            (ratio(1, 1), ratio(11, 5))
        );
    }

    #[test]
    fn parametric_rejects_out_of_range() {
        let engine = PrimeEngine::with_defaults();
        let x = nat(10);
        assert!(eval_prime_family(&engine, &x, &PrimeLogVariant::Parametric(ratio(3, 1))).is_err());
        assert!(
            eval_prime_family(&engine, &x, &PrimeLogVariant::Parametric(ratio(1, 2))).is_err()
        );
        assert!(eval_primorial_family(
            &engine,
            &x,
            &PrimorialLogVariant::Parametric(ratio(16, 1))
        )
        .is_err());
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen expected values
    fn minus_variants_reject_x_two() {
        let engine = PrimeEngine::with_defaults();
        let x = nat(2);
        assert!(matches!(
            eval_prime_family(&engine, &x, &PrimeLogVariant::Minus),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_prime_family(&engine, &x, &PrimeLogVariant::StarBlend),
            Err(Error::Domain(_))
        ));
        // non-minus variants stay defined at 2
        close(
            eval_prime_family(&engine, &x, &PrimeLogVariant::StarCenter).unwrap(),
            0.693147180559945,
        );
        close(
            eval_prime_family(&engine, &x, &PrimeLogVariant::Plus).unwrap(),
            1.09861228866811,
        );
    }

    #[test]
    fn primorial_family_defined_down_to_two() {
        let engine = PrimeEngine::with_defaults();
        let at = |x: u64, v: &PrimorialLogVariant| {
            eval_primorial_family(&engine, &nat(x), v).unwrap()
        };
        // first cell sits on #(0) = 1, so the minus variant is exactly 0
        assert_eq!(at(2, &PrimorialLogVariant::Minus), 0.0);
        assert_eq!(at(2, &PrimorialLogVariant::StarBlend), 0.0);
        assert_eq!(at(2, &PrimorialLogVariant::Diamond), 0.0);
        close(at(3, &PrimorialLogVariant::StarBlend), 0.223143551314210);
        close(at(3, &PrimorialLogVariant::Diamond), 0.223143551314210);
    }

    #[test]
    fn exact_decomposition_identity() {
        // center variant plus ln of the cell scale reproduces ln x
        let engine = PrimeEngine::with_defaults();
        let mut rng = SplitMix64::new(0x1dea);
        for _ in 0..1000 {
            let x = nat(rng.range(3, 1_000_000_000_000));
            let lnx = ln_natural(&x).unwrap();
            let prime = decompose(&engine, &x, SuccessionKind::Prime).unwrap();
            let v = eval_prime_family(&engine, &x, &PrimeLogVariant::StarCenter).unwrap()
                + crate::exactnum::ln_ratio(&prime.scale).unwrap();
            assert!((v - lnx).abs() < 1e-10, "prime identity at {x}");
            let cell = decompose(&engine, &x, SuccessionKind::Primorial).unwrap();
            let v = eval_primorial_family(&engine, &x, &PrimorialLogVariant::HashCenter).unwrap()
                + crate::exactnum::ln_ratio(&cell.scale).unwrap();
            assert!((v - lnx).abs() < 1e-10, "primorial identity at {x}");
        }
    }

    #[test]
    fn all_variants_sit_inside_their_bracket() {
        let engine = PrimeEngine::with_defaults();
        let mut rng = SplitMix64::new(0xb1ac);
        for _ in 0..1000 {
            let x = nat(rng.range(3, 1_000_000_000));
            let lnx = ln_natural(&x).unwrap();
            let pc = prime_cell(&engine, &x).unwrap();
            let lo = pc.eval(&PrimeLogVariant::Minus).unwrap();
            let hi = pc.eval(&PrimeLogVariant::Plus).unwrap();
            assert!(lo <= lnx && lnx <= hi, "ln {x} outside prime bracket");
            for v in PrimeLogVariant::FIXED {
                let val = pc.eval(&v).unwrap();
                assert!(lo <= val && val <= hi, "prime {} at {x}", v.name());
            }
            assert!(hi - lo < 2.0, "prime bracket width at {x}");

            let cell = primorial_cell(&engine, &x).unwrap();
            let lo = cell.eval(&PrimorialLogVariant::Minus).unwrap();
            let hi = cell.eval(&PrimorialLogVariant::Plus).unwrap();
            assert!(lo <= lnx && lnx <= hi, "ln {x} outside primorial bracket");
            for v in PrimorialLogVariant::FIXED {
                let val = cell.eval(&v).unwrap();
                assert!(lo <= val && val <= hi, "primorial {} at {x}", v.name());
            }
            let width_cap = 2.0 * (cell.p_next as f64).ln();
            assert!(hi - lo < width_cap, "primorial bracket width at {x}");
        }
    }

    #[test]
    fn variants_tighten_toward_ln_as_x_grows() {
        let engine = PrimeEngine::with_defaults();
        let spread = |k: u32| {
            let x = pow10(k);
            let lnx = ln_natural(&x).unwrap();
            let v = eval_prime_family(&engine, &x, &PrimeLogVariant::StarBlend).unwrap();
            (v / lnx - 1.0).abs()
        };
        assert!(spread(8) < spread(4));
        assert!(spread(8) < 1e-3);
    }
}
