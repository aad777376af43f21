//! Taylor expansion of `ln P_Omega(J + t (W - J))` around the all-ones matrix.

mod enumerate;
mod series;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use enumerate::{g_derivatives, g_derivatives_ordered_tuples, g_derivatives_with_workers};
pub use series::{
    estimate_ln_partition, f_from_g, order_for_target, taylor_log_estimate, triangular_residuals,
    truncation_error_bound, PartitionEstimate, TaylorEstimate,
};

/// Vertices every counted m-subset must contain. Empty means unrestricted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AnchorSet(Vec<usize>);

impl AnchorSet {
    pub fn empty() -> Self {
        AnchorSet(Vec::new())
    }

    /// 0-based vertices in `0..n`; duplicates are rejected.
    pub fn new(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parameter("anchor vertices must be distinct".into()));
        }
        if let Some(&last) = v.last() {
            if last >= n {
                return Err(Error::Parameter(format!("anchor vertex {} outside 1..={n}", last + 1)));
            }
        }
        Ok(AnchorSet(v))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn with(&self, v: usize) -> Self {
        let mut next = self.0.clone();
        if let Err(pos) = next.binary_search(&v) {
            next.insert(pos, v);
        }
        AnchorSet(next)
    }
}

/// Derivatives of `g` and `f = ln g` at zero, up to a fixed order `l`.
///
/// Values are held as Taylor coefficients (`k`-th derivative divided by
/// `k!`); the derivative accessors multiply back. This keeps float mode
/// finite at the large orders the rigorous bound asks for.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeVector<S> {
    g_coeffs: Vec<S>,
    f_coeffs: Option<Vec<S>>,
    ln_g0: f64,
}

impl<S: Scalar> DerivativeVector<S> {
    pub(crate) fn from_parts(g_coeffs: Vec<S>, ln_g0: f64) -> Self {
        DerivativeVector { g_coeffs, f_coeffs: None, ln_g0 }
    }

    /// From raw derivative values `g^(k)(0)`, `k = 0..=l`.
    pub fn from_g_derivatives(derivs: Vec<S>) -> Result<Self> {
        if derivs.is_empty() {
            return Err(Error::Input("derivative vector needs at least g(0)".into()));
        }
        let ln_g0 = derivs[0].to_f64_lossy().ln();
        let mut fact = S::one();
        let coeffs = derivs
            .into_iter()
            .enumerate()
            .map(|(k, d)| {
                if k > 0 {
                    fact = fact.times(&S::from_u64(k as u64));
                }
                d.over(&fact)
            })
            .collect();
        Ok(DerivativeVector { g_coeffs: coeffs, f_coeffs: None, ln_g0 })
    }

    pub(crate) fn set_ln_g0(&mut self, v: f64) {
        self.ln_g0 = v;
    }

    pub fn order(&self) -> usize {
        self.g_coeffs.len() - 1
    }

    pub fn g0(&self) -> &S {
        &self.g_coeffs[0]
    }

    /// `ln g(0)` in double precision (exact binomial input for enumerated vectors).
    pub fn ln_g0(&self) -> f64 {
        self.ln_g0
    }

    pub fn g_coeffs(&self) -> &[S] {
        &self.g_coeffs
    }

    /// `g^(k)(0)` for `k = 0..=l`.
    pub fn g_derivs(&self) -> Vec<S> {
        scale_by_factorials(&self.g_coeffs)
    }

    /// `f^(k)(0) / k!` for `k = 1..=l`, once [`f_from_g`] has run. Index 0
    /// is a placeholder zero; `f(0) = ln g(0)` is irrational in general.
    pub fn f_coeffs(&self) -> Option<&[S]> {
        self.f_coeffs.as_deref()
    }

    /// `f^(k)(0)` with the same indexing as [`Self::f_coeffs`].
    pub fn f_derivs(&self) -> Option<Vec<S>> {
        self.f_coeffs.as_ref().map(|c| scale_by_factorials(c))
    }

    /// Keeps orders `0..=l`.
    pub fn truncated(&self, l: usize) -> Self {
        let l = l.min(self.order());
        DerivativeVector {
            g_coeffs: self.g_coeffs[..=l].to_vec(),
            f_coeffs: self.f_coeffs.as_ref().map(|f| f[..=l].to_vec()),
            ln_g0: self.ln_g0,
        }
    }
}

fn scale_by_factorials<S: Scalar>(coeffs: &[S]) -> Vec<S> {
    let mut fact = S::one();
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if k > 0 {
                fact = fact.times(&S::from_u64(k as u64));
            }
            c.times(&fact)
        })
        .collect()
}

/// Taylor order together with the additive error it certifies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPlan {
    pub order: usize,
    pub beta: f64,
    pub additive_bound: f64,
}

impl TruncationPlan {
    pub fn new(m: usize, beta: f64, order: usize) -> Result<Self> {
        Ok(TruncationPlan { order, beta, additive_bound: truncation_error_bound(m, beta, order)? })
    }

    pub fn for_selection(m: usize, beta: f64, sel: OrderSelection) -> Result<Self> {
        TruncationPlan::new(m, beta, sel.resolve(m, beta)?)
    }
}

/// How the Taylor order is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderSelection {
    /// Fixed order; whatever bound it yields is reported.
    Budgeted(usize),
    /// Smallest order whose certified additive error is at most `target`.
    Rigorous { target: f64 },
}

impl OrderSelection {
    pub fn resolve(self, m: usize, beta: f64) -> Result<usize> {
        match self {
            OrderSelection::Budgeted(l) => Ok(l),
            OrderSelection::Rigorous { target } => order_for_target(m, beta, target),
        }
    }
}
