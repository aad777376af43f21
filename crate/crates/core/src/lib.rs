//! Approximate counting of weighted cliques.
//!
//! For a graph `G` on `n` vertices and a subset size `m`, every m-subset `S`
//! is weighted by `exp{gamma m sigma(S)}` up to an exact closed-form
//! correction, where `sigma(S)` is the fraction of vertex pairs in `S` that
//! are edges. The sum of these weights (the density functional) is the
//! clique partition function `P_m(W)` of a weight matrix with entries
//! `1 ± gamma/(m-1)`, scaled by a known factor.
//!
//! `ln P_m(W)` is approximated by a Taylor polynomial of
//! `t -> ln P_m(J + t (W - J))` at `t = 0`, whose derivatives come from a
//! finite enumeration over sets of vertex pairs ([`taylor`]). The error is
//! certified by a zero-free disc of radius `omega / gamma`.
//!
//! [`oracle`] provides exhaustive ground truth and [`audit`] samples the
//! complex polydisc on which the partition function must not vanish.

pub mod audit;
pub mod combinatorics;
pub mod density;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod params;
pub mod scalar;
pub mod taylor;
pub mod weights;

pub use audit::{
    angle_sum_check, audit_min_modulus, sample_polydisc, sample_polydisc_with_radius, AuditOutcome,
    ComplexWeightMatrix, ZeroFreeConstants,
};
pub use combinatorics::binomial;
pub use density::{
    decide_density, density_functional_estimate, extract_dense_subset, ApproxLog, DensityEstimate, DensityVerdict,
    EngineConfig, Extraction, Verdict,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use oracle::{
    density_histogram, exact_g_of_t, exact_partition_function, exact_restricted_pf, DensityHistogram, Oracle,
};
pub use params::{parse_rational, AlgorithmParams, Regime};
pub use scalar::{Scalar, ScalarMode};
pub use taylor::{
    estimate_ln_partition, f_from_g, g_derivatives, order_for_target, taylor_log_estimate, truncation_error_bound,
    AnchorSet, DerivativeVector, OrderSelection, PartitionEstimate, TruncationPlan,
};
pub use weights::{weight_curve, weights_from_graph, WeightMatrix};

pub use num_rational::BigRational;
