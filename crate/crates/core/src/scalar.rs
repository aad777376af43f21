//! Exact-rational and double-precision scalar modes.
//!
//! The Taylor engine is generic over [`Scalar`]. Exact mode is closed under
//! every operation the engine performs because the weight scale is rational.
//! Float mode sums through a Neumaier accumulator so that results depend only
//! on the (fixed) enumeration order.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarMode {
    #[default]
    Exact,
    Float,
}

pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + Zero + One + 'static {
    type Acc: Accumulator<Self>;

    fn from_rational(r: &BigRational) -> Self;
    fn from_biguint(x: &BigUint) -> Self;
    fn from_u64(x: u64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn over(&self, rhs: &Self) -> Self;
    /// Nearest double, saturating to infinity.
    fn to_f64_lossy(&self) -> f64;
    /// Lossless text form: `p/q` for rationals, shortest round-trip decimal for floats.
    fn to_exact_string(&self) -> String;
}

/// Order-sensitive running sum.
pub trait Accumulator<S>: Clone + Send {
    fn new() -> Self;
    fn push(&mut self, x: &S);
    /// Fold a partial sum produced by another worker into this one.
    fn merge(&mut self, other: &Self);
    fn total(&self) -> S;
}

impl Scalar for BigRational {
    type Acc = ExactSum;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn from_biguint(x: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(x.clone()))
    }
    fn from_u64(x: u64) -> Self {
        BigRational::from_integer(BigInt::from(x))
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }
    fn to_exact_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Scalar for f64 {
    type Acc = CompensatedSum;

    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }
    fn from_biguint(x: &BigUint) -> Self {
        x.to_f64().unwrap_or(f64::INFINITY)
    }
    fn from_u64(x: u64) -> Self {
        x as f64
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
    fn to_exact_string(&self) -> String {
        format!("{self:?}")
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or_else(|| {
        if Zero::is_zero(r) {
            0.0
        } else if r.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[derive(Debug, Clone, Default)]
pub struct ExactSum(BigRational);

impl Accumulator<BigRational> for ExactSum {
    fn new() -> Self {
        ExactSum(<BigRational as Zero>::zero())
    }
    fn push(&mut self, x: &BigRational) {
        self.0 += x;
    }
    fn merge(&mut self, other: &Self) {
        self.0 += &other.0;
    }
    fn total(&self) -> BigRational {
        self.0.clone()
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    fn add_one(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }
}

impl Accumulator<f64> for CompensatedSum {
    fn new() -> Self {
        Self::default()
    }
    #[inline]
    fn push(&mut self, x: &f64) {
        self.add_one(*x);
    }
    fn merge(&mut self, other: &Self) {
        self.add_one(other.sum);
        self.add_one(other.comp);
    }
    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        let mut acc = CompensatedSum::new();
        for x in &xs {
            acc.push(x);
        }
        assert_eq!(acc.total(), 2.0);
        // naive left-to-right summation loses the first 1.0
        assert_eq!(xs.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn merge_is_order_deterministic() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 7919) % 1000) as f64 * 1e-3 - 0.5).collect();
        let mut a = CompensatedSum::new();
        let mut b = CompensatedSum::new();
        for x in &xs[..500] {
            a.push(x);
        }
        for x in &xs[500..] {
            b.push(x);
        }
        let mut first = CompensatedSum::new();
        first.merge(&a);
        first.merge(&b);
        let mut second = CompensatedSum::new();
        second.merge(&a);
        second.merge(&b);
        assert_eq!(first.total().to_bits(), second.total().to_bits());
    }

    #[test]
    fn rational_strings() {
        let r = BigRational::new(BigInt::from(3), BigInt::from(50));
        assert_eq!(r.to_exact_string(), "3/50");
        assert!((r.to_f64_lossy() - 0.06).abs() < 1e-17);
    }
}
