//! Weight matrices near the all-ones matrix and the per-subset weight curve.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::AlgorithmParams;

/// Symmetric `n x n` rational weights with `|w_ij - 1| <= delta` off the
/// diagonal. Diagonal entries are stored as 1 and never read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    entries: Vec<BigRational>,
    delta: BigRational,
}

impl WeightMatrix {
    /// The all-ones matrix `J` (delta = 0).
    pub fn ones(n: usize) -> Self {
        WeightMatrix { n, entries: vec![BigRational::one(); n * n], delta: BigRational::zero() }
    }

    /// Builds a matrix from an entry function evaluated on `i < j`, checking
    /// the deviation bound.
    pub fn from_fn(n: usize, delta: BigRational, mut entry: impl FnMut(usize, usize) -> BigRational) -> Result<Self> {
        if delta.is_negative() {
            return Err(Error::Parameter("delta must be nonnegative".into()));
        }
        let mut w = WeightMatrix::ones(n);
        w.delta = delta;
        for i in 0..n {
            for j in i + 1..n {
                let x = entry(i, j);
                if (&x - BigRational::one()).abs() > w.delta {
                    return Err(Error::Parameter(format!(
                        "weight w[{},{}] = {x} deviates from 1 by more than {}",
                        i + 1,
                        j + 1,
                        w.delta
                    )));
                }
                w.entries[i * n + j] = x.clone();
                w.entries[j * n + i] = x;
            }
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> &BigRational {
        &self.delta
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    /// `J + t (W - J)`; the deviation bound scales by `|t|`.
    pub fn interpolate(&self, t: &BigRational) -> WeightMatrix {
        let one = BigRational::one();
        let entries = self.entries.iter().map(|w| &one + t * (w - &one)).collect();
        WeightMatrix { n: self.n, entries, delta: &self.delta * t.abs() }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> WeightMatrix {
        let n = self.n;
        let mut entries = vec![BigRational::one(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    entries[perm[i] * n + perm[j]] = self.get(i, j).clone();
                }
            }
        }
        WeightMatrix { n, entries, delta: self.delta.clone() }
    }

    /// Off-diagonal entries as f64, row-major, diagonal set to 1.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(crate::scalar::rational_to_f64).collect()
    }
}

/// Graph-derived weights: `1 + gamma/(m-1)` on edges, `1 - gamma/(m-1)` on
/// non-edges.
pub fn weights_from_graph(g: &Graph, p: &AlgorithmParams) -> Result<WeightMatrix> {
    p.validate_for(g.n())?;
    let delta = p.delta();
    let hi = BigRational::one() + &delta;
    let lo = BigRational::one() - &delta;
    WeightMatrix::from_fn(g.n(), delta, |i, j| if g.has_edge(i, j) { hi.clone() } else { lo.clone() })
}

/// Natural log of the weight curve `w(t) = e^{gamma m} (1+delta)^{(t-1)M} (1-delta)^{(1-t)M}`.
pub fn ln_weight_curve(t: f64, p: &AlgorithmParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("density t = {t} outside [0, 1]")));
    }
    let delta = p.delta_f64();
    let pairs = p.pair_count() as f64;
    Ok(p.gamma_f64() * p.m() as f64 + (t - 1.0) * pairs * delta.ln_1p() + (1.0 - t) * pairs * (-delta).ln_1p())
}

/// Weight of an m-subset with density `t`, in exact closed form.
pub fn weight_curve(t: f64, p: &AlgorithmParams) -> Result<f64> {
    ln_weight_curve(t, p).map(f64::exp)
}

/// Rational part of `w(e / M)`: `(1+delta)^{e-M} (1-delta)^{M-e}`, so that
/// `w(e/M) = e^{gamma m}` times this value.
pub fn weight_curve_rational_part(edges: usize, p: &AlgorithmParams) -> BigRational {
    let pairs = p.pair_count();
    assert!(edges <= pairs);
    let delta = p.delta();
    let hi = BigRational::one() + &delta;
    let lo = BigRational::one() - &delta;
    let missing = (pairs - edges) as i32;
    let lo_pow = num_traits::pow(lo, missing as usize);
    let hi_pow = num_traits::pow(hi, missing as usize);
    lo_pow / hi_pow
}
