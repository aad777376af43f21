use num_rational::BigRational;
use serde::Serialize;

use super::{g_derivatives_with_workers, AnchorSet, DerivativeVector, TruncationPlan};
use crate::combinatorics::binomial;
use crate::density::ApproxLog;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarMode};
use crate::weights::WeightMatrix;

/// Solves `g^(k) = sum_{j<k} C(k-1, j) g^(j) f^(k-j)` forward for the
/// derivatives of `f = ln g`.
///
/// Works on Taylor coefficients, where the system reads
/// `k a_k = sum_{j<k} (k-j) a_j b_{k-j}`.
pub fn f_from_g<S: Scalar>(d: &DerivativeVector<S>) -> Result<DerivativeVector<S>> {
    let a = &d.g_coeffs;
    if a[0].is_zero() {
        return Err(Error::Degenerate);
    }
    let support: Vec<usize> = (1..a.len()).filter(|&j| !a[j].is_zero()).collect();
    let mut b = vec![S::zero(); a.len()];
    for k in 1..a.len() {
        let mut s = S::zero();
        for &j in support.iter().take_while(|&&j| j < k) {
            let t = a[j].times(&b[k - j]).times(&S::from_u64((k - j) as u64));
            s = s.plus(&t);
        }
        let kk = S::from_u64(k as u64);
        b[k] = kk.times(&a[k]).minus(&s).over(&kk.times(&a[0]));
    }
    Ok(DerivativeVector { g_coeffs: a.clone(), f_coeffs: Some(b), ln_g0: d.ln_g0 })
}

/// Residuals of the derivative-form triangular system, `k = 1..=l`.
/// `f_derivs[0]` is ignored.
pub fn triangular_residuals<S: Scalar>(g_derivs: &[S], f_derivs: &[S]) -> Vec<S> {
    assert_eq!(g_derivs.len(), f_derivs.len());
    (1..g_derivs.len())
        .map(|k| {
            let rhs = (0..k).fold(S::zero(), |acc, j| {
                let c = S::from_biguint(&binomial((k - 1) as u64, j as i64));
                acc.plus(&c.times(&g_derivs[j]).times(&f_derivs[k - j]))
            });
            g_derivs[k].minus(&rhs)
        })
        .collect()
}

/// Additive error of the order-`l` Taylor polynomial of `ln g` at `t = 1`
/// when `g` has no zeros in the disc `|z| <= beta`:
/// `m(m-1) / (2 (l+1) beta^l (beta-1))`.
pub fn truncation_error_bound(m: usize, beta: f64, l: usize) -> Result<f64> {
    if beta.is_nan() || beta <= 1.0 {
        return Err(Error::Domain(format!("root-exclusion radius beta = {beta} must exceed 1")));
    }
    let pairs = (m * (m.saturating_sub(1))) as f64 / 2.0;
    let denom = (l + 1) as f64 * beta.powi(l.min(i32::MAX as usize) as i32) * (beta - 1.0);
    if denom.is_finite() {
        return Ok(pairs / denom);
    }
    // beta^l overflowed; work in logs
    let ln_denom = ((l + 1) as f64).ln() + l as f64 * beta.ln() + (beta - 1.0).ln();
    Ok(pairs * (-ln_denom).exp())
}

/// Smallest order whose bound is at most `eps_add`, by linear scan.
pub fn order_for_target(m: usize, beta: f64, eps_add: f64) -> Result<usize> {
    if eps_add.is_nan() || eps_add <= 0.0 {
        return Err(Error::Domain(format!("target additive error {eps_add} must be positive")));
    }
    let mut l = 0;
    while truncation_error_bound(m, beta, l)? > eps_add {
        l += 1;
    }
    Ok(l)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorEstimate<S> {
    pub order: usize,
    /// `sum_{k=1}^{l} f^(k)(0) / k!`, in the scalar mode of the input.
    pub series: S,
    pub log: ApproxLog,
}

/// `ln g(0) + sum_{k=1}^{l} f^(k)(0)/k!` with the plan's certificate.
pub fn taylor_log_estimate<S: Scalar>(d: &DerivativeVector<S>, plan: &TruncationPlan) -> Result<TaylorEstimate<S>> {
    let f = d.f_coeffs().ok_or_else(|| Error::Input("f derivatives not computed; run f_from_g first".into()))?;
    if plan.order > d.order() {
        return Err(Error::Parameter(format!(
            "plan order {} exceeds available derivative order {}",
            plan.order,
            d.order()
        )));
    }
    let series = f[1..=plan.order].iter().fold(S::zero(), |acc, c| acc.plus(c));
    let value = d.ln_g0() + series.to_f64_lossy();
    Ok(TaylorEstimate { order: plan.order, series, log: ApproxLog::new(value, plan.additive_bound)? })
}

/// Mode-erased estimate of `ln P_Omega(W)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionEstimate {
    pub mode: ScalarMode,
    pub order: usize,
    pub log: ApproxLog,
    /// `ln g(0)`, the logarithm of the anchored binomial count.
    pub ln_base: f64,
    /// Exact `p/q` value of the Taylor sum (exact mode only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_exact: Option<String>,
}

fn estimate_in<S: Scalar>(
    w: &WeightMatrix,
    m: usize,
    anchor: &AnchorSet,
    plan: &TruncationPlan,
    workers: usize,
) -> Result<(TaylorEstimate<S>, f64)> {
    let d = g_derivatives_with_workers::<S>(w, m, plan.order, anchor, workers)?;
    let d = f_from_g(&d)?;
    Ok((taylor_log_estimate(&d, plan)?, d.ln_g0()))
}

/// Full pipeline: enumerate, solve for `f`, sum the Taylor polynomial.
pub fn estimate_ln_partition(
    w: &WeightMatrix,
    m: usize,
    anchor: &AnchorSet,
    plan: &TruncationPlan,
    mode: ScalarMode,
    workers: usize,
) -> Result<PartitionEstimate> {
    Ok(match mode {
        ScalarMode::Exact => {
            let (est, ln_base) = estimate_in::<BigRational>(w, m, anchor, plan, workers)?;
            PartitionEstimate {
                mode,
                order: est.order,
                log: est.log,
                ln_base,
                series_exact: Some(est.series.to_exact_string()),
            }
        }
        ScalarMode::Float => {
            let (est, ln_base) = estimate_in::<f64>(w, m, anchor, plan, workers)?;
            PartitionEstimate { mode, order: est.order, log: est.log, ln_base, series_exact: None }
        }
    })
}
