//! The exponential density functional, the two-sided density decision and
//! greedy extraction of a dense m-subset by conditioning.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, ln_biguint};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::AlgorithmParams;
use crate::scalar::ScalarMode;
use crate::taylor::{estimate_ln_partition, AnchorSet, PartitionEstimate, TruncationPlan};
use crate::weights::{ln_weight_curve, weights_from_graph};

/// Separation multiplier between the two promise thresholds.
pub const DECISION_FACTOR: f64 = 1.45;

/// Largest additive log error `decide_density` accepts (a 10% relative certificate).
pub fn max_decision_bound() -> f64 {
    1.1f64.ln()
}

/// Candidates within this distance (natural-log scale) of the best are
/// treated as tied and resolved by smallest vertex index.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// A natural-log estimate with a two-sided additive certificate:
/// `value - additive_bound <= ln(true) <= value + additive_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxLog {
    pub value: f64,
    pub additive_bound: f64,
}

impl ApproxLog {
    pub fn new(value: f64, additive_bound: f64) -> Result<Self> {
        if additive_bound.is_nan() || additive_bound < 0.0 {
            return Err(Error::Domain(format!("additive bound {additive_bound} must be nonnegative")));
        }
        Ok(ApproxLog { value, additive_bound })
    }

    /// Relative error certified for `exp(value)`.
    pub fn relative_certificate(&self) -> f64 {
        self.additive_bound.exp_m1()
    }

    pub fn contains(&self, ln_true: f64) -> bool {
        (self.value - ln_true).abs() <= self.additive_bound
    }

    pub fn shifted(&self, by: f64) -> Self {
        ApproxLog { value: self.value + by, additive_bound: self.additive_bound }
    }
}

/// Scalar mode and worker count for the Taylor engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub mode: ScalarMode,
    pub workers: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { mode: ScalarMode::Exact, workers: 1 }
    }
}

impl EngineConfig {
    pub fn float() -> Self {
        EngineConfig { mode: ScalarMode::Float, workers: 1 }
    }
}

/// `ln` of `e^{gamma m} (1 + delta)^{-M}`, the exact factor between
/// `P_m(W)` and the density functional.
pub fn ln_density_prefactor(p: &AlgorithmParams) -> f64 {
    p.gamma_f64() * p.m() as f64 - p.pair_count() as f64 * p.delta_f64().ln_1p()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityEstimate {
    /// Estimate of `ln Density_m(G)`.
    pub log: ApproxLog,
    pub ln_prefactor: f64,
    pub partition: PartitionEstimate,
}

pub fn density_functional_estimate(
    g: &Graph,
    p: &AlgorithmParams,
    order: usize,
    cfg: &EngineConfig,
) -> Result<DensityEstimate> {
    let w = weights_from_graph(g, p)?;
    let plan = TruncationPlan::new(p.m(), p.beta_f64(), order)?;
    let partition = estimate_ln_partition(&w, p.m(), &AnchorSet::empty(), &plan, cfg.mode, cfg.workers)?;
    let ln_prefactor = ln_density_prefactor(p);
    Ok(DensityEstimate { log: partition.log.shifted(ln_prefactor), ln_prefactor, partition })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Some m-subset has density at least sigma.
    ExistsDense,
    /// Fewer than `2 e^{-gamma eps m} C(n, m)` m-subsets have density at least sigma + eps.
    NotManyDense,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub verdict: Verdict,
    pub sigma: f64,
    pub eps: f64,
    /// `ln(C(n, m) w(sigma))`.
    pub t_no: f64,
    pub estimate: ApproxLog,
    pub decision_factor: f64,
}

impl DensityVerdict {
    /// Applies the threshold test to an existing estimate of `ln Density_m(G)`.
    pub fn from_estimate(estimate: ApproxLog, n: usize, p: &AlgorithmParams, sigma: f64, eps: f64) -> Result<Self> {
        if sigma.is_nan() || eps.is_nan() || sigma < 0.0 || eps <= 0.0 || sigma + eps > 1.0 {
            return Err(Error::Parameter(format!(
                "need sigma >= 0, eps > 0, sigma + eps <= 1 (got sigma = {sigma}, eps = {eps})"
            )));
        }
        p.validate_for(n)?;
        let t_no = ln_biguint(&binomial(n as u64, p.m() as i64)) + ln_weight_curve(sigma, p)?;
        let verdict =
            if estimate.value > t_no + DECISION_FACTOR.ln() { Verdict::ExistsDense } else { Verdict::NotManyDense };
        Ok(DensityVerdict { verdict, sigma, eps, t_no, estimate, decision_factor: DECISION_FACTOR })
    }
}

/// Sound two-sided test. Refuses unless the order certifies a relative
/// error of at most 10%.
pub fn decide_density(
    g: &Graph,
    p: &AlgorithmParams,
    sigma: f64,
    eps: f64,
    order: usize,
    cfg: &EngineConfig,
) -> Result<DensityVerdict> {
    p.validate_for(g.n())?;
    let plan = TruncationPlan::new(p.m(), p.beta_f64(), order)?;
    if plan.additive_bound > max_decision_bound() {
        return Err(Error::Refused { order, bound: plan.additive_bound });
    }
    // reject bad sigma/eps before the expensive part
    DensityVerdict::from_estimate(ApproxLog::new(0.0, 0.0)?, g.n(), p, sigma, eps)?;
    let est = density_functional_estimate(g, p, order, cfg)?;
    DensityVerdict::from_estimate(est.log, g.n(), p, sigma, eps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extraction {
    /// Chosen m-subset, 0-based, ascending.
    pub subset: Vec<usize>,
    /// Estimate of `ln P_S(W)` for the final anchor.
    pub certificate: ApproxLog,
    /// Estimated `ln P_{Omega ∪ {i}}` of the chosen vertex at each step.
    pub step_values: Vec<f64>,
    pub order: usize,
}

/// Grows an anchor from the empty set, adding at each step the vertex whose
/// restricted partition function has the largest estimate.
pub fn extract_dense_subset(g: &Graph, p: &AlgorithmParams, order: usize, cfg: &EngineConfig) -> Result<Extraction> {
    let w = weights_from_graph(g, p)?;
    let m = p.m();
    let plan = TruncationPlan::new(m, p.beta_f64(), order)?;
    let mut anchor = AnchorSet::empty();
    let mut step_values = Vec::with_capacity(m);
    let mut certificate = None;

    let evaluate = |anchor: &AnchorSet, v: usize| -> Result<ApproxLog> {
        estimate_ln_partition(&w, m, &anchor.with(v), &plan, cfg.mode, 1).map(|e| e.log)
    };

    for _ in 0..m {
        let candidates: Vec<usize> = (0..g.n()).filter(|&v| !anchor.contains(v)).collect();
        let scored: Vec<ApproxLog> = if cfg.workers <= 1 {
            candidates.iter().map(|&v| evaluate(&anchor, v)).collect::<Result<_>>()?
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;
            pool.install(|| candidates.par_iter().map(|&v| evaluate(&anchor, v)).collect::<Result<_>>())?
        };
        let best = scored.iter().map(|s| s.value).fold(f64::NEG_INFINITY, f64::max);
        let pick = scored.iter().position(|s| s.value >= best - TIE_TOLERANCE).expect("at least one candidate");
        step_values.push(scored[pick].value);
        certificate = Some(scored[pick]);
        anchor = anchor.with(candidates[pick]);
    }

    Ok(Extraction {
        subset: anchor.vertices().to_vec(),
        certificate: certificate.expect("m >= 2 steps"),
        step_values,
        order,
    })
}
