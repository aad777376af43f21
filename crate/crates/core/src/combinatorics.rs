//! Exact binomials, factorials and logarithms of big integers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `C(a, b)` as an exact big integer. Out-of-range `b` (negative or larger
/// than `a`) counts zero subsets.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        // acc * (a - i) / (i + 1) stays integral at every step
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Natural logarithm of a positive big integer, accurate to f64 precision
/// even when the value overflows f64.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("finite");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
