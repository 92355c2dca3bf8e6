//! Totative-count estimators and the Mertens-product chain that squeezes
//! x / tot*(x) between two explicit products over the first primes.
//!
//! tot*(x) interpolates the totative count between consecutive primorials
//! with an exact rational correction, and combining it with the Mertens
//! asymptotic for the product of p/(p-1) yields h°(x), an explicit function
//! asymptotically equal to x.

use num_traits::One;

use crate::error::Result;
use crate::exactnum::{
    ln_ratio, ratio_from_natural, ratio_to_real, Natural, Ratio, Real64,
};
use crate::log_family::primorial_cell;
use crate::prime_engine::PrimeEngine;
use crate::primorial::totient_of_primorial;

/// Euler-Mascheroni constant; enters only through the final float stage.
pub const EULER_GAMMA: Real64 = 0.577215664901533;
/// e^γ, fixed to the same precision.
pub const EXP_EULER_GAMMA: Real64 = 1.781072417990198;

/// Every estimator evaluated at one x. The rational fields are exact; the
/// float fields are single conversions of exact quantities (times e^γ where
/// the formula says so).
#[derive(Debug, Clone)]
pub struct EstimatorBundle {
    pub x: Natural,
    pub t_star: Ratio,
    pub tot_star: Ratio,
    pub y_val: Ratio,
    pub f_val: Real64,
    pub g_val: Real64,
    pub f_circ: Real64,
    pub g_circ: Real64,
    pub h_circ: Real64,
}

fn ratio_u64(n: u64) -> Ratio {
    ratio_from_natural(Natural::from(n))
}

/// Interpolated totative count: tot(n) scaled by t* = 1 + (p_{n+1} - 2) r,
/// where n and r come from the primorial cell of x. Exact rational.
pub fn tot_star(engine: &PrimeEngine, x: &Natural) -> Result<Ratio> {
    let cell = primorial_cell(engine, x)?;
    let tot = totient_of_primorial(engine, cell.n)?;
    let t = Ratio::one() + ratio_u64(cell.p_next - 2) * &cell.remainder;
    Ok(ratio_from_natural(tot) * t)
}

/// The two Mertens-style products at x, exact: f over the first n primes,
/// g extending f by one more factor.
pub fn mertens_products_exact(engine: &PrimeEngine, x: &Natural) -> Result<(Ratio, Ratio)> {
    let cell = primorial_cell(engine, x)?;
    let f = engine.with_first_primes(cell.n, |primes| {
        primes
            .iter()
            .map(|&p| Ratio::new(p.into(), (p - 1).into()))
            .product::<Ratio>()
    })?;
    let g = &f * Ratio::new(cell.p_next.into(), (cell.p_next - 1).into());
    Ok((f, g))
}

/// f and g as floats.
pub fn mertens_products(engine: &PrimeEngine, x: &Natural) -> Result<(Real64, Real64)> {
    let (f, g) = mertens_products_exact(engine, x)?;
    Ok((ratio_to_real(&f), ratio_to_real(&g)))
}

/// The prime-value blend point where the Mertens product is evaluated:
/// y = p_n (1 + (p_{n+1}/p_n - 1) r), i.e. prime values blended by the
/// primorial remainder. Exact rational, always ≥ 2.
pub fn y_of_x(engine: &PrimeEngine, x: &Natural) -> Result<Ratio> {
    let cell = primorial_cell(engine, x)?;
    Ok(ratio_u64(cell.p_n) + ratio_u64(cell.p_next - cell.p_n) * &cell.remainder)
}

/// Evaluate the whole estimator chain at x ≥ 2.
pub fn estimator_bundle(engine: &PrimeEngine, x: &Natural) -> Result<EstimatorBundle> {
    let cell = primorial_cell(engine, x)?;
    let tot = ratio_from_natural(totient_of_primorial(engine, cell.n)?);
    let t_star = Ratio::one() + ratio_u64(cell.p_next - 2) * &cell.remainder;
    let tot_star = tot * &t_star;
    let y_val = ratio_u64(cell.p_n) + ratio_u64(cell.p_next - cell.p_n) * &cell.remainder;
    let (f, g) = mertens_products_exact(engine, x)?;

    let ln_y = ln_ratio(&y_val)?;
    debug_assert!(ln_y > 0.0, "y > 1 for every x >= 2");
    let f_circ = ratio_to_real(&(ratio_from_natural(x.clone()) / &tot_star));
    let g_circ = EXP_EULER_GAMMA * ln_y;
    let h_circ = ratio_to_real(&tot_star) * EXP_EULER_GAMMA * ln_y;

    Ok(EstimatorBundle {
        x: x.clone(),
        t_star,
        tot_star,
        y_val,
        f_val: ratio_to_real(&f),
        g_val: ratio_to_real(&g),
        f_circ,
        g_circ,
        h_circ,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{pow10, ratio};
    use crate::primorial::primorial;
    use crate::rng::SplitMix64;
    use num_traits::{ToPrimitive, Zero};

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn tot_star_examples() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(tot_star(&engine, &nat(10)).unwrap(), ratio(3, 1));
        assert_eq!(tot_star(&engine, &nat(30)).unwrap(), ratio(8, 1));
        assert_eq!(tot_star(&engine, &nat(6)).unwrap(), ratio(2, 1));
    }

    #[test]
    fn tot_star_at_primorials_is_the_totative_count() {
        let engine = PrimeEngine::with_defaults();
        for n in 1..=12u64 {
            let x = primorial(&engine, n).unwrap();
            let t = tot_star(&engine, &x).unwrap();
            assert!(t.is_integer(), "n = {n}");
            assert_eq!(
                t,
                ratio_from_natural(totient_of_primorial(&engine, n).unwrap()),
                "n = {n}"
            );
        }
    }

    #[test]
    fn mertens_product_examples() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(
            mertens_products_exact(&engine, &nat(10)).unwrap(),
            (ratio(3, 1), ratio(15, 4))
        );
        assert_eq!(
            mertens_products_exact(&engine, &nat(2)).unwrap(),
            (ratio(2, 1), ratio(3, 1))
        );
        assert_eq!(
            mertens_products_exact(&engine, &nat(30)).unwrap(),
            (ratio(15, 4), ratio(35, 8))
        );
        let (f, g) = mertens_products(&engine, &nat(10)).unwrap();
        close(f, 3.0);
        close(g, 3.75);
    }

    #[test]
    fn y_examples() {
        let engine = PrimeEngine::with_defaults();
        assert_eq!(y_of_x(&engine, &nat(10)).unwrap(), ratio(10, 3));
        assert_eq!(y_of_x(&engine, &nat(30)).unwrap(), ratio(5, 1));
        assert_eq!(y_of_x(&engine, &nat(6)).unwrap(), ratio(3, 1));
    }

    #[test]
    fn bundle_at_ten() {
        let engine = PrimeEngine::with_defaults();
        let b = estimator_bundle(&engine, &nat(10)).unwrap();
        assert_eq!(b.t_star, ratio(3, 2));
        assert_eq!(b.tot_star, ratio(3, 1));
        assert_eq!(b.y_val, ratio(10, 3));
        close(b.f_val, 3.0);
        close(b.g_val, 3.75);
        close(b.f_circ, 10.0 / 3.0);
        close(b.g_circ, 2.14436275379523);
        close(b.h_circ, 6.43308826138570);
    }

    #[test]
    fn bundle_at_boundaries() {
        let engine = PrimeEngine::with_defaults();
        let b = estimator_bundle(&engine, &nat(30)).unwrap();
        assert_eq!(b.tot_star, ratio(8, 1));
        assert_eq!(b.y_val, ratio(5, 1));
        close(b.h_circ, 22.9322037944328);
        let b = estimator_bundle(&engine, &nat(6)).unwrap();
        assert_eq!(b.tot_star, ratio(2, 1));
        assert_eq!(b.y_val, ratio(3, 1));
        close(b.h_circ, 3.91341609082371);
    }

    #[test]
    fn totative_ratio_is_bracketed_by_products() {
        let engine = PrimeEngine::with_defaults();
        let mut rng = SplitMix64::new(0xb0a);
        for _ in 0..10_000 {
            let x = nat(rng.range(2, 1_000_000_000_000_000_000));
            let (f, g) = mertens_products_exact(&engine, &x).unwrap();
            let t = tot_star(&engine, &x).unwrap();
            let q = ratio_from_natural(x.clone()) / t;
            assert!(f <= q && q < g, "brackets fail at {x}: {f} <= {q} < {g}");
        }
    }

    #[test]
    fn blend_ratio_inequality() {
        // 1 <= (1 + (a-1) r) / (1 + (a-2) r) < a / (a-1) for a > 1, 0 <= r < 1
        let mut rng = SplitMix64::new(0x1e44a);
        let one = Ratio::one();
        for _ in 0..10_000 {
            let a = one.clone() + ratio(rng.range(1, 1000), rng.range(1, 1000));
            let r = ratio(rng.below(997), 997);
            let lhs = (&one + (&a - &one) * &r) / (&one + (&a - ratio(2, 1)) * &r);
            assert!(lhs >= one, "lower bound at a={a} r={r}");
            assert!(
                &lhs * (&a - &one) < a,
                "upper bound at a={a} r={r}"
            );
            if r.is_zero() {
                assert!(lhs.is_one());
            }
        }
    }

    #[test]
    fn f_is_the_product_over_primes_up_to_y() {
        let engine = PrimeEngine::with_defaults();
        let mut rng = SplitMix64::new(0xf00);
        for _ in 0..200 {
            let x = nat(rng.range(2, 1_000_000));
            let (f, _) = mertens_products_exact(&engine, &x).unwrap();
            let y = y_of_x(&engine, &x).unwrap();
            let y_floor = y.floor().to_integer().to_u64().unwrap();
            let mut direct = Ratio::one();
            crate::prime_engine::for_each_prime(y_floor, 1 << 16, |p| {
                direct *= Ratio::new(p.into(), (p - 1).into());
            });
            assert_eq!(f, direct, "x = {x}, y floor = {y_floor}");
        }
    }

    #[test]
    fn h_circ_converges_toward_x() {
        let engine = PrimeEngine::with_defaults();
        let rel = |k: u32| {
            let x = pow10(k);
            let b = estimator_bundle(&engine, &x).unwrap();
            (b.h_circ / ratio_to_real(&ratio_from_natural(x)) - 1.0).abs()
        };
        let near = rel(3);
        let far = rel(12);
        assert!(far < near, "|h°/x - 1|: {far} at 1e12 vs {near} at 1e3");
        assert!(near < 0.25 && far < 0.1);
    }
}
