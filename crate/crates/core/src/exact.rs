//! Exact integer and rational arithmetic helpers.
//!
//! All counts produced by this crate are exact: arbitrary-precision integers
//! for final answers, arbitrary-precision rationals for intermediate values
//! (group-ring coefficients, `1/q^i` weights, generalized binomials). There
//! is no floating-point fallback anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input_err, Result};

/// Möbius function: 0 if `n` has a squared prime factor, otherwise
/// (-1)^(number of distinct prime factors).
pub fn mobius(n: u64) -> Result<i64> {
    if n == 0 {
        return input_err("mobius: argument must be positive");
    }
    let mut n = n;
    let mut factors = 0i64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(0);
            }
            factors += 1;
        }
        d += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return input_err("divisors: argument must be positive");
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// Integer binomial coefficient C(n, k). Returns 0 when `k > n`, so sums
/// with out-of-range indices vanish without special-casing.
pub fn binom_int(n: &BigInt, k: u64) -> BigInt {
    debug_assert!(!n.is_negative(), "binom_int expects a nonnegative n");
    let mut res = BigInt::one();
    for i in 0..k {
        let factor = n - BigInt::from(i);
        if factor.is_zero() {
            return BigInt::zero();
        }
        res = res * factor / BigInt::from(i + 1);
    }
    res
}

/// Generalized binomial coefficient C(x, k) = x(x-1)...(x-k+1)/k! for
/// rational (possibly negative) `x`. Agrees with [`binom_int`] when `x` is
/// a nonnegative integer.
pub fn binom_rat(x: &BigRational, k: u64) -> BigRational {
    let mut num = BigRational::one();
    for i in 0..k {
        num *= x - BigRational::from(BigInt::from(i));
        num /= BigRational::from(BigInt::from(i + 1));
    }
    num
}

/// q^exp as a `BigInt`.
pub fn big_pow(q: u64, exp: u32) -> BigInt {
    BigInt::from(q).pow(exp)
}

/// q^exp as a `BigRational` (supports negative exponents).
pub fn rat_pow(q: u64, exp: i64) -> BigRational {
    let mag = BigInt::from(q).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

pub fn rat_from_int(n: &BigInt) -> BigRational {
    BigRational::from(n.clone())
}

/// Extract the integer value of a rational that is required to be integral.
/// Panics otherwise: a fractional value here means a formula was transcribed
/// wrong, and silent truncation would corrupt counts downstream.
pub fn expect_integer(x: &BigRational, what: &str) -> BigInt {
    assert!(x.is_integer(), "{what}: expected an integer, got {x}");
    x.to_integer()
}

/// Like [`expect_integer`] but also requires the value to be a count
/// (nonnegative).
pub fn expect_count(x: &BigRational, what: &str) -> BigInt {
    let n = expect_integer(x, what);
    assert!(
        !n.is_negative(),
        "{what}: expected a nonnegative count, got {n}"
    );
    n
}
