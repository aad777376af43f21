//! Brute-force ground truth by exhaustive m-subset enumeration.
//!
//! Subsets are visited in lexicographic order; the product of pair weights
//! is extended incrementally, so each step multiplies in only the weights
//! between the newly added vertex and those already chosen.

use std::ops::{AddAssign, Mul};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::AlgorithmParams;
use crate::scalar::rational_to_f64;
use crate::taylor::AnchorSet;
use crate::weights::{weight_curve_rational_part, WeightMatrix};

pub const DEFAULT_CAP: usize = 20;

/// Sum over m-subsets `S ⊇ anchor` of `prod_{i<j in S} weight(i, j)`.
pub(crate) fn subset_product_sum<T>(n: usize, m: usize, anchor: &[usize], weight: &dyn Fn(usize, usize) -> T) -> T
where
    T: Clone + Zero + One + for<'a> Mul<&'a T, Output = T> + for<'a> AddAssign<&'a T>,
{
    let mut chosen: Vec<usize> = anchor.to_vec();
    let mut base = T::one();
    for (a, &u) in anchor.iter().enumerate() {
        for &v in &anchor[a + 1..] {
            base = base * &weight(u, v);
        }
    }
    let free: Vec<usize> = (0..n).filter(|v| !anchor.contains(v)).collect();
    let mut total = T::zero();
    fn rec<T>(
        free: &[usize],
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        prod: &T,
        total: &mut T,
        weight: &dyn Fn(usize, usize) -> T,
    ) where
        T: Clone + Zero + One + for<'a> Mul<&'a T, Output = T> + for<'a> AddAssign<&'a T>,
    {
        if remaining == 0 {
            *total += prod;
            return;
        }
        for idx in start..=free.len() - remaining {
            let v = free[idx];
            let mut next = prod.clone();
            for &u in chosen.iter() {
                next = next * &weight(u, v);
            }
            chosen.push(v);
            rec(free, idx + 1, remaining - 1, chosen, &next, total, weight);
            chosen.pop();
        }
    }
    if m >= anchor.len() && m - anchor.len() <= free.len() {
        rec(&free, 0, m - anchor.len(), &mut chosen, &base, &mut total, weight);
    }
    total
}

/// Visits every m-subset in lexicographic order.
pub fn for_each_subset(n: usize, m: usize, mut f: impl FnMut(&[usize])) {
    if m > n {
        return;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        f(&idx);
        let mut i = m;
        while i > 0 && idx[i - 1] == n - m + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of m-subsets spanning exactly `e` edges, for `e = 0..=C(m,2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityHistogram {
    pub n: usize,
    pub m: usize,
    pub counts: Vec<u64>,
}

impl DensityHistogram {
    pub fn pair_count(&self) -> usize {
        self.m * (self.m - 1) / 2
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Subsets whose density `e / C(m,2)` is at least `sigma`.
    pub fn count_at_least(&self, sigma: f64) -> u64 {
        let pairs = self.pair_count();
        self.counts
            .iter()
            .enumerate()
            // e / M >= sigma, compared without dividing
            .filter(|(e, _)| *e as f64 >= sigma * pairs as f64 - 1e-9)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn max_density(&self) -> f64 {
        let e = self.counts.iter().rposition(|&c| c > 0).unwrap_or(0);
        e as f64 / self.pair_count() as f64
    }

    /// `Density_m(G) / e^{gamma m}` as an exact rational: the sum of
    /// `(1+delta)^{e-M} (1-delta)^{M-e}` over subsets.
    pub fn density_rational_part(&self, p: &AlgorithmParams) -> BigRational {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).fold(BigRational::zero(), |acc, (e, &c)| {
            acc + weight_curve_rational_part(e, p) * BigRational::from_integer(c.into())
        })
    }

    /// `ln Density_m(G)`.
    pub fn ln_density(&self, p: &AlgorithmParams) -> f64 {
        p.gamma_f64() * p.m() as f64 + rational_to_f64(&self.density_rational_part(p)).ln()
    }
}

/// Exhaustive evaluator with a vertex-count cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap }
    }

    pub(crate) fn check(&self, n: usize, m: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::CapExceeded { n, cap: self.cap });
        }
        if m < 2 || m > n {
            return Err(Error::Parameter(format!("need 1 < m <= n, got m = {m}, n = {n}")));
        }
        Ok(())
    }

    /// `P_m(W)`.
    pub fn partition_function(&self, w: &WeightMatrix, m: usize) -> Result<BigRational> {
        self.restricted_partition_function(w, m, &AnchorSet::empty())
    }

    /// `P_Omega(W)`: the sum restricted to m-subsets containing the anchor.
    pub fn restricted_partition_function(&self, w: &WeightMatrix, m: usize, anchor: &AnchorSet) -> Result<BigRational> {
        self.check(w.n(), m)?;
        if anchor.len() > m {
            return Err(Error::Parameter(format!("anchor of size {} exceeds m = {m}", anchor.len())));
        }
        if anchor.vertices().last().is_some_and(|&v| v >= w.n()) {
            return Err(Error::Parameter("anchor vertex outside the matrix".into()));
        }
        Ok(subset_product_sum(w.n(), m, anchor.vertices(), &|i, j| w.get(i, j).clone()))
    }

    /// `g(t) = P_Omega(J + t (W - J))` at a rational point.
    pub fn g_of_t(&self, w: &WeightMatrix, m: usize, t: &BigRational, anchor: &AnchorSet) -> Result<BigRational> {
        self.check(w.n(), m)?;
        self.restricted_partition_function(&w.interpolate(t), m, anchor)
    }

    pub fn density_histogram(&self, g: &Graph, m: usize) -> Result<DensityHistogram> {
        self.check(g.n(), m)?;
        let mut counts = vec![0u64; m * (m - 1) / 2 + 1];
        for_each_subset(g.n(), m, |s| counts[g.edges_within(s)] += 1);
        Ok(DensityHistogram { n: g.n(), m, counts })
    }
}

pub fn exact_partition_function(w: &WeightMatrix, m: usize) -> Result<BigRational> {
    Oracle::default().partition_function(w, m)
}

pub fn exact_restricted_pf(w: &WeightMatrix, m: usize, anchor: &AnchorSet) -> Result<BigRational> {
    Oracle::default().restricted_partition_function(w, m, anchor)
}

pub fn exact_g_of_t(w: &WeightMatrix, m: usize, t: &BigRational, anchor: &AnchorSet) -> Result<BigRational> {
    Oracle::default().g_of_t(w, m, t, anchor)
}

pub fn density_histogram(g: &Graph, m: usize) -> Result<DensityHistogram> {
    Oracle::default().density_histogram(g, m)
}
