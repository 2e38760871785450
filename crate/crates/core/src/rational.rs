//! Thin helpers over the `num` bignum types.
//!
//! All arithmetic in this crate bottoms out in [`Int`] (arbitrary-precision
//! integers) and [`Rat`] (exact rationals). The helpers here cover the small
//! amount of p-adic bookkeeping that several modules share: factoring powers
//! of a prime out of integers and rationals, and testing denominators.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Exact rational with [`Int`] numerator and denominator.
pub type Rat = BigRational;

/// `n` as an [`Int`].
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// `n/d` as a reduced [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Writes `n = p^e * m` with `p` not dividing `m`, returning `(e, m)`.
/// Panics if `n == 0` or `p < 2`.
pub fn factor_out(p: u64, n: &Int) -> (u64, Int) {
    assert!(p >= 2, "factor_out: modulus must be >= 2");
    assert!(!n.is_zero(), "factor_out: zero has no finite valuation");
    let p = Int::from(p);
    let mut e = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = num::Integer::div_rem(&m, &p);
        if r.is_zero() {
            e += 1;
            m = q;
        } else {
            return (e, m);
        }
    }
}

/// The exponent of `p` in `n`, i.e. the p-adic valuation of a nonzero integer.
pub fn padic_val_int(p: u64, n: &Int) -> u64 {
    factor_out(p, n).0
}

/// The p-adic valuation of a nonzero rational.
pub fn padic_val_rat(p: u64, r: &Rat) -> i64 {
    assert!(!r.is_zero(), "padic_val_rat: zero has no finite valuation");
    let num = padic_val_int(p, r.numer()) as i64;
    let den = padic_val_int(p, r.denom()) as i64;
    num - den
}

/// Whether `r` is an integer (denominator one after reduction).
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Whether the reduced denominator of `r` factors entirely into the given
/// primes. An empty prime list asks whether `r` is an integer.
pub fn denom_supported_by(r: &Rat, primes: &[u64]) -> bool {
    let mut d = r.denom().abs();
    for &p in primes {
        d = factor_out(p, &d).1;
    }
    d.is_one()
}
