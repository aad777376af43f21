//! Taylor coefficients of `g(t) = P_Omega(J + t (W - J))` at `t = 0`.
//!
//! The k-th coefficient `g^(k)(0) / k!` is a sum over k-sets `I` of distinct
//! vertex pairs of `C(n - rho, m - rho) * prod_{ij in I} (w_ij - 1)`, where
//! `rho = |Omega ∪ points(I)|`. Sets with `rho > m` contribute nothing and
//! are pruned as soon as the vertex budget is exhausted.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{AnchorSet, DerivativeVector};
use crate::combinatorics::{binomial, ln_biguint};
use crate::error::{Error, Result};
use crate::scalar::{Accumulator, Scalar};
use crate::weights::WeightMatrix;

struct Context<S: Scalar> {
    m: usize,
    depth_cap: usize,
    /// `(i, j, w_ij - 1)` for `i < j` with a nonzero deviation.
    pairs: Vec<(usize, usize, S)>,
    /// `C(n - rho, m - rho)` indexed by `rho`.
    completion: Vec<S>,
}

fn check_inputs(w: &WeightMatrix, m: usize, anchor: &AnchorSet) -> Result<()> {
    if m < 2 || m > w.n() {
        return Err(Error::Parameter(format!("need 1 < m <= n, got m = {m}, n = {}", w.n())));
    }
    if anchor.len() > m {
        return Err(Error::Parameter(format!("anchor of size {} exceeds m = {m}", anchor.len())));
    }
    if let Some(&v) = anchor.vertices().last() {
        if v >= w.n() {
            return Err(Error::Parameter(format!("anchor vertex {} outside 1..={}", v + 1, w.n())));
        }
    }
    Ok(())
}

fn completion_table<S: Scalar>(n: usize, m: usize) -> Vec<S> {
    (0..=m).map(|rho| S::from_biguint(&binomial((n - rho) as u64, (m - rho) as i64))).collect()
}

fn base_count(n: usize, m: usize, anchor: &AnchorSet) -> num_bigint::BigUint {
    binomial((n - anchor.len()) as u64, (m - anchor.len()) as i64)
}

impl<S: Scalar> Context<S> {
    fn new(w: &WeightMatrix, m: usize, order: usize) -> Self {
        let n = w.n();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let dev = w.get(i, j) - BigRational::one();
                if !Zero::is_zero(&dev) {
                    pairs.push((i, j, S::from_rational(&dev)));
                }
            }
        }
        Context { m, depth_cap: order.min(m * (m - 1) / 2), pairs, completion: completion_table(n, m) }
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(&self, start: usize, depth: usize, prod: &S, covered: &mut [u16], distinct: usize, acc: &mut [S::Acc]) {
        acc[depth].push(&prod.times(&self.completion[distinct]));
        if depth == self.depth_cap {
            return;
        }
        for (q, (i, j, dev)) in self.pairs.iter().enumerate().skip(start) {
            let (i, j) = (*i, *j);
            let grow = (covered[i] == 0) as usize + (covered[j] == 0) as usize;
            if distinct + grow > self.m {
                continue;
            }
            covered[i] += 1;
            covered[j] += 1;
            self.descend(q + 1, depth + 1, &prod.times(dev), covered, distinct + grow, acc);
            covered[i] -= 1;
            covered[j] -= 1;
        }
    }

    /// All pair sets whose smallest pair index is `first`.
    fn partition(&self, first: usize, n: usize, anchor: &AnchorSet, len: usize) -> Vec<S::Acc> {
        let mut acc = vec![S::Acc::new(); len];
        let (i, j, dev) = &self.pairs[first];
        let mut covered = vec![0u16; n];
        for &v in anchor.vertices() {
            covered[v] = 1;
        }
        let grow = (covered[*i] == 0) as usize + (covered[*j] == 0) as usize;
        let distinct = anchor.len() + grow;
        if distinct <= self.m && self.depth_cap >= 1 {
            covered[*i] += 1;
            covered[*j] += 1;
            self.descend(first + 1, 1, dev, &mut covered, distinct, &mut acc);
        }
        acc
    }
}

/// Taylor coefficients of `g` up to `order`, single-threaded.
pub fn g_derivatives<S: Scalar>(
    w: &WeightMatrix,
    m: usize,
    order: usize,
    anchor: &AnchorSet,
) -> Result<DerivativeVector<S>> {
    g_derivatives_with_workers(w, m, order, anchor, 1)
}

/// As [`g_derivatives`], splitting the enumeration by smallest pair index
/// across `workers` threads. Partial sums are always reduced in partition
/// order, so float results do not depend on the worker count.
pub fn g_derivatives_with_workers<S: Scalar>(
    w: &WeightMatrix,
    m: usize,
    order: usize,
    anchor: &AnchorSet,
    workers: usize,
) -> Result<DerivativeVector<S>> {
    check_inputs(w, m, anchor)?;
    let n = w.n();
    let ctx = Context::<S>::new(w, m, order);
    let len = order + 1;
    let run = |p: usize| ctx.partition(p, n, anchor, len);
    let partials: Vec<Vec<S::Acc>> = if workers <= 1 {
        (0..ctx.pairs.len()).map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..ctx.pairs.len()).into_par_iter().map(run).collect())
    };

    let mut totals = vec![S::Acc::new(); len];
    for part in &partials {
        for (t, p) in totals.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    let mut coeffs: Vec<S> = totals.iter().map(Accumulator::total).collect();
    let base = base_count(n, m, anchor);
    coeffs[0] = S::from_biguint(&base);
    Ok(DerivativeVector::from_parts(coeffs, ln_biguint(&base)))
}

/// Reference enumeration straight over ordered k-tuples of distinct pairs,
/// including zero deviations and tuples with `rho > m`. Costs `O(n^{2k})`;
/// intended for cross-checking [`g_derivatives`] on small inputs.
pub fn g_derivatives_ordered_tuples<S: Scalar>(
    w: &WeightMatrix,
    m: usize,
    order: usize,
    anchor: &AnchorSet,
) -> Result<DerivativeVector<S>> {
    check_inputs(w, m, anchor)?;
    let n = w.n();
    let all_pairs: Vec<(usize, usize, S)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, S::from_rational(&(w.get(i, j) - BigRational::one()))))
        .collect();
    let completion = |rho: usize| S::from_biguint(&binomial((n - rho) as u64, m as i64 - rho as i64));

    let mut derivs = vec![S::zero(); order + 1];
    let mut tuple: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn walk<S: Scalar>(
        pairs: &[(usize, usize, S)],
        anchor: &AnchorSet,
        n: usize,
        order: usize,
        tuple: &mut Vec<usize>,
        derivs: &mut [S],
        completion: &dyn Fn(usize) -> S,
    ) {
        let k = tuple.len();
        let mut seen = vec![false; n];
        for &v in anchor.vertices() {
            seen[v] = true;
        }
        let mut prod = S::one();
        for &q in tuple.iter() {
            let (i, j, dev) = &pairs[q];
            seen[*i] = true;
            seen[*j] = true;
            prod = prod.times(dev);
        }
        let rho = seen.iter().filter(|&&s| s).count();
        derivs[k] = derivs[k].plus(&prod.times(&completion(rho)));
        if k == order {
            return;
        }
        for q in 0..pairs.len() {
            if tuple.contains(&q) {
                continue;
            }
            tuple.push(q);
            walk(pairs, anchor, n, order, tuple, derivs, completion);
            tuple.pop();
        }
    }
    walk(&all_pairs, anchor, n, order.min(all_pairs.len()), &mut tuple, &mut derivs, &completion);
    let base = base_count(n, m, anchor);
    let mut dv = DerivativeVector::from_g_derivatives(derivs)?;
    dv.set_ln_g0(ln_biguint(&base));
    Ok(dv)
}
