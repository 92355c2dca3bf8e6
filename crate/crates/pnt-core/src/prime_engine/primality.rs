//! Primality testing: deterministic Miller-Rabin below 2^64, Baillie-PSW above.
//!
//! The u64 witness set is known to have no strong pseudoprimes below 2^64, so
//! that path is fully deterministic. The wide path (base-2 Miller-Rabin plus a
//! strong Lucas test with Selfridge parameters) has no known counterexample;
//! callers treat it as probabilistic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

/// Witnesses with no strong pseudoprime below 2^64.
const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// One Miller-Rabin round; true means "no witness of compositeness".
fn strong_probable_prime(n: u64, witness: u64) -> bool {
    let a = witness % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for u64.
pub fn is_prime_u64(n: u64) -> bool {
    for &p in &TRIAL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 2 {
        return false;
    }
    WITNESSES.iter().all(|&w| strong_probable_prime(n, w))
}

/// Primality for arbitrary-size integers: exact below 2^64, Baillie-PSW above.
pub fn is_prime_natural(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &TRIAL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !strong_probable_prime_base2(n) {
        return false;
    }
    // a perfect square has no D with Jacobi(D, n) = -1; rule it out up front
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    strong_lucas_selfridge(n)
}

fn strong_probable_prime_base2(n: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().expect("n > 1");
    let d = &nm1 >> s;
    let mut x = BigUint::from(2u32).modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let m8 = (&n % 8u32).to_u32().expect("residue");
            if m8 == 3 || m8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

/// Halve x modulo odd n.
fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = x.mod_floor(n);
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
/// Caller must have excluded perfect squares and small factors.
fn strong_lucas_selfridge(n_u: &BigUint) -> bool {
    let n = BigInt::from(n_u.clone());

    // first D in 5, -7, 9, -11, ... with Jacobi(D, n) = -1
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &n) {
            -1 => break,
            0 => return false,
            _ => {}
        }
        d = if d.is_positive() {
            -(&d + 2i32)
        } else {
            -(&d - 2i32)
        };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;

    // n + 1 = t * 2^s with t odd
    let np1 = &n + 1u32;
    let s = np1.trailing_zeros().expect("n + 1 > 0");
    let t = &np1 >> s;

    // binary chain for U_t, V_t, Q^t (mod n), most significant bit first
    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.clone();
    let bits = t.magnitude().bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&n);
        v = (&v * &v - &qk * 2i32).mod_floor(&n);
        qk = (&qk * &qk).mod_floor(&n);
        if t.magnitude().bit(i) {
            let nu = half_mod(&p * &u + &v, &n);
            let nv = half_mod(&d * &u + &p * &v, &n);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&n);
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2i32).mod_floor(&n);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&n);
    }
    false
}
