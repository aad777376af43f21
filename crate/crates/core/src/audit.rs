//! Numerical audit of the zero-free polydisc around the all-ones matrix.
//!
//! Nothing here proves anything: the audit samples complex matrices with
//! every entry within `omega / (m - 1)` of 1 and reports how close
//! `P_m(Z)` comes to vanishing.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{subset_product_sum, Oracle};
use crate::params::Regime;

/// Reference value of the standard-regime angle.
pub const STANDARD_THETA: f64 = 0.4580097179;
/// Upper bound on the large-gap angle for `m >= 10`.
pub const LARGE_GAP_THETA_BOUND: f64 = 1.02831829;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroFreeConstants {
    pub regime: Regime,
    /// Subset size the constants were solved for (the large-gap angle depends on it).
    pub m: usize,
    pub omega: f64,
    pub theta: f64,
    pub lambda: f64,
    pub tau: f64,
}

/// Smallest root in `(0, pi/2)` of `rhs(theta) = theta`, given `rhs(0) > 0`.
fn smallest_fixed_point(rhs: impl Fn(f64) -> f64) -> Option<f64> {
    let h = |t: f64| rhs(t) - t;
    let step = 1e-4;
    let mut lo = 0.0;
    while lo + step < FRAC_PI_2 {
        let hi = lo + step;
        if h(hi) <= 0.0 {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if h(mid) > 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Some(0.5 * (a + b));
        }
        lo = hi;
    }
    None
}

impl ZeroFreeConstants {
    /// omega = 0.061; theta solves `theta = 4 omega e^theta / ((1 - omega) cos theta)`.
    pub fn standard(m: usize) -> Self {
        let omega = 0.061;
        let theta = smallest_fixed_point(|t| 4.0 * omega * t.exp() / ((1.0 - omega) * t.cos()))
            .expect("standard-regime fixed point exists");
        let lambda = theta.exp();
        ZeroFreeConstants { regime: Regime::Standard, m, omega, theta, lambda, tau: theta.cos() / lambda }
    }

    /// omega = 0.181; theta solves `theta = 4 omega / ((1 - omega/(m-1)) sqrt(cos theta))`.
    pub fn large_gap(m: usize) -> Result<Self> {
        if m < 10 {
            return Err(Error::Regime { m, n: 0 });
        }
        let omega = 0.181;
        let shrink = 1.0 - omega / (m - 1) as f64;
        let theta = smallest_fixed_point(|t| 4.0 * omega / (shrink * t.cos().sqrt()))
            .ok_or_else(|| Error::Domain("large-gap fixed point not found".into()))?;
        let lambda = theta.exp();
        Ok(ZeroFreeConstants { regime: Regime::LargeGap, m, omega, theta, lambda, tau: theta.cos().sqrt() })
    }

    pub fn for_regime(regime: Regime, m: usize) -> Result<Self> {
        match regime {
            Regime::Standard => Ok(Self::standard(m)),
            Regime::LargeGap => Self::large_gap(m),
        }
    }

    /// Polydisc radius `omega / (m - 1)`.
    pub fn delta(&self) -> f64 {
        self.omega / (self.m - 1) as f64
    }

    /// `rhs(theta) - theta` for this regime's defining equation.
    pub fn fixed_point_residual(&self) -> f64 {
        let t = self.theta;
        let rhs = match self.regime {
            Regime::Standard => 4.0 * self.omega * t.exp() / ((1.0 - self.omega) * t.cos()),
            Regime::LargeGap => 4.0 * self.omega / ((1.0 - self.delta()) * t.cos().sqrt()),
        };
        rhs - t
    }
}

/// Symmetric complex weights; diagonal stored as 1 and unused.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexWeightMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexWeightMatrix {
    pub fn ones(n: usize) -> Self {
        ComplexWeightMatrix { n, entries: vec![Complex64::new(1.0, 0.0); n * n] }
    }

    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut z = Self::ones(n);
        for i in 0..n {
            for j in i + 1..n {
                let x = entry(i, j);
                z.entries[i * n + j] = x;
                z.entries[j * n + i] = x;
            }
        }
        z
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    /// Largest `|z_ij - 1|` over `i < j`.
    pub fn max_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - 1.0).norm());
            }
        }
        worst
    }

    pub fn in_polydisc(&self, delta: f64) -> bool {
        self.max_deviation() <= delta * (1.0 + 1e-12)
    }

    /// Upper-triangle entries as `(i, j, re, im)` with 1-based labels.
    pub fn upper_triangle(&self) -> Vec<(usize, usize, f64, f64)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let z = self.get(i, j);
                (i + 1, j + 1, z.re, z.im)
            })
            .collect()
    }
}

/// Deterministic samples of the polydisc of radius `c.delta()`.
pub fn sample_polydisc(n: usize, c: &ZeroFreeConstants, count: usize, seed: u64) -> Result<Vec<ComplexWeightMatrix>> {
    sample_polydisc_with_radius(n, c.delta(), count, seed)
}

/// Entries are `1 + r e^{i phi}` with `phi` uniform; `r` is the radius
/// exactly with probability 1/2, otherwise uniform on `[0, radius]`.
pub fn sample_polydisc_with_radius(n: usize, radius: f64, count: usize, seed: u64) -> Result<Vec<ComplexWeightMatrix>> {
    if count == 0 {
        return Err(Error::Parameter("sample count must be at least 1".into()));
    }
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::Parameter(format!("radius {radius} must be nonnegative")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            ComplexWeightMatrix::from_fn(n, |_, _| {
                let phi = rng.random_range(0.0..2.0 * PI);
                let r = if rng.random_bool(0.5) { radius } else { rng.random_range(0.0..=radius) };
                Complex64::new(1.0, 0.0) + Complex64::from_polar(r, phi)
            })
        })
        .collect())
}

/// `P_m(Z)` by exhaustive enumeration in double precision.
pub fn complex_partition_function(z: &ComplexWeightMatrix, m: usize, oracle: &Oracle) -> Result<Complex64> {
    oracle.check(z.n(), m)?;
    Ok(subset_product_sum(z.n(), m, &[], &|i, j| z.get(i, j)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditOutcome {
    pub min_modulus: f64,
    /// Index of the first sample attaining the minimum.
    pub argmin: usize,
    pub evaluated: usize,
}

pub fn audit_min_modulus(samples: &[ComplexWeightMatrix], m: usize, workers: usize) -> Result<AuditOutcome> {
    audit_min_modulus_with(samples, m, workers, &Oracle::default())
}

pub fn audit_min_modulus_with(
    samples: &[ComplexWeightMatrix],
    m: usize,
    workers: usize,
    oracle: &Oracle,
) -> Result<AuditOutcome> {
    if samples.is_empty() {
        return Err(Error::Parameter("no samples to audit".into()));
    }
    let eval = |z: &ComplexWeightMatrix| complex_partition_function(z, m, oracle).map(|p| p.norm());
    let moduli: Vec<f64> = if workers <= 1 {
        samples.iter().map(eval).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;
        pool.install(|| samples.par_iter().map(eval).collect::<Result<_>>())?
    };
    let (argmin, min_modulus) =
        moduli
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    Ok(AuditOutcome { min_modulus, argmin, evaluated: moduli.len() })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Angle between two nonzero vectors, in `[0, pi]`.
pub fn angle_between(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    (dot / (norm(u) * norm(v))).clamp(-1.0, 1.0).acos()
}

/// Checks `||sum u_i|| >= sqrt(cos alpha) * sum ||u_i||` for nonzero vectors
/// whose pairwise angles are at most `alpha < pi/2`. Inputs violating the
/// angle hypothesis are rejected rather than evaluated.
pub fn angle_sum_check(vectors: &[Vec<f64>], alpha: f64) -> Result<bool> {
    if !(0.0..FRAC_PI_2).contains(&alpha) {
        return Err(Error::Input(format!("alpha = {alpha} outside [0, pi/2)")));
    }
    let dim = vectors.first().map(Vec::len).ok_or_else(|| Error::Input("no vectors".into()))?;
    for (i, u) in vectors.iter().enumerate() {
        if u.len() != dim {
            return Err(Error::Input(format!("vector {i} has dimension {} (expected {dim})", u.len())));
        }
        if norm(u) == 0.0 {
            return Err(Error::Input(format!("vector {i} is zero")));
        }
    }
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate().skip(i + 1) {
            let a = angle_between(u, v);
            if a > alpha + 1e-12 {
                return Err(Error::Input(format!("angle {a} between vectors {i} and {j} exceeds alpha = {alpha}")));
            }
        }
    }
    let mut total = vec![0.0; dim];
    for u in vectors {
        for (t, x) in total.iter_mut().zip(u) {
            *t += x;
        }
    }
    let sum_of_norms: f64 = vectors.iter().map(|u| norm(u)).sum();
    Ok(norm(&total) >= alpha.cos().sqrt() * sum_of_norms * (1.0 - 1e-12))
}
