use cliquepf_core::audit::complex_partition_function;
use cliquepf_core::scalar::rational_to_f64;
use cliquepf_core::weights::ln_weight_curve;
use cliquepf_core::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (0..1u64 << pairs).prop_map(move |mask| Graph::from_pair_mask(n, mask).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weight_curve_is_log_affine_and_increasing(m in 2usize..40, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let p = AlgorithmParams::standard(m).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(weight_curve(lo, &p).unwrap() <= weight_curve(hi, &p).unwrap());
        let mid = ln_weight_curve((lo + hi) / 2.0, &p).unwrap();
        let avg = (ln_weight_curve(lo, &p).unwrap() + ln_weight_curve(hi, &p).unwrap()) / 2.0;
        prop_assert!((mid - avg).abs() <= 1e-12 * (1.0 + mid.abs()));
    }

    #[test]
    fn estimate_is_invariant_under_relabeling(g in graph_strategy(6), seed in any::<u64>()) {
        let m = 3.min(g.n());
        let p = AlgorithmParams::standard(m).unwrap();
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&perm).unwrap();
        let cfg = EngineConfig::default();
        let a = density_functional_estimate(&g, &p, 5, &cfg).unwrap();
        let b = density_functional_estimate(&h, &p, 5, &cfg).unwrap();
        prop_assert_eq!(a.partition.series_exact, b.partition.series_exact);
    }

    #[test]
    fn oracle_agrees_with_histogram(g in graph_strategy(6)) {
        let m = 3;
        let p = AlgorithmParams::standard(m).unwrap();
        let w = weights_from_graph(&g, &p).unwrap();
        let pf = rational_to_f64(&exact_partition_function(&w, m).unwrap()).ln();
        let ln_density = density_histogram(&g, m).unwrap().ln_density(&p);
        let prefactor = p.gamma_f64() * m as f64 - p.pair_count() as f64 * (1.0 + p.delta_f64()).ln();
        prop_assert!((ln_density - (prefactor + pf)).abs() < 1e-9);
    }
}

/// g(t) is a polynomial of degree at most C(m,2): its (M+1)-th forward difference vanishes.
#[test]
fn g_of_t_has_degree_at_most_pair_count() {
    let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (1, 5)]).unwrap();
    for m in 2..=4 {
        let p = AlgorithmParams::standard(m).unwrap();
        let w = weights_from_graph(&g, &p).unwrap();
        let big_m = m * (m - 1) / 2;
        let anchor = AnchorSet::empty();
        let mut vals: Vec<BigRational> =
            (0..=big_m + 1).map(|k| exact_g_of_t(&w, m, &q(k as i64, 3), &anchor).unwrap()).collect();
        for _ in 0..=big_m {
            vals = vals.windows(2).map(|x| &x[1] - &x[0]).collect();
        }
        assert!(vals.iter().all(Zero::is_zero), "m = {m}");
    }
}

/// Along the complex line J + s(W - J) the partition function equals the Taylor polynomial
/// whose coefficients the engine produces.
#[test]
fn complex_line_restriction_matches_coefficients() {
    let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
    let m = 3;
    let p = AlgorithmParams::standard(m).unwrap();
    let w = weights_from_graph(&g, &p).unwrap();
    let coeffs: Vec<f64> = g_derivatives::<f64>(&w, m, 3, &AnchorSet::empty()).unwrap().g_coeffs().to_vec();
    let oracle = Oracle::default();
    for k in 0..16 {
        let s = Complex64::from_polar(1.0 + k as f64 / 8.0, k as f64 * 0.7);
        let z = ComplexWeightMatrix::from_fn(5, |i, j| {
            let dev = rational_to_f64(w.get(i, j)) - 1.0;
            Complex64::one() + s * dev
        });
        let direct = complex_partition_function(&z, m, &oracle).unwrap();
        let poly = coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * s + c);
        assert!((direct - poly).norm() < 1e-10 * (1.0 + poly.norm()), "s = {s}");
    }
}

#[test]
fn exact_and_float_modes_agree_within_bound_scale() {
    let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 6), (0, 3)]).unwrap();
    let p = AlgorithmParams::standard(3).unwrap();
    let exact = density_functional_estimate(&g, &p, 12, &EngineConfig::default()).unwrap();
    let float = density_functional_estimate(&g, &p, 12, &EngineConfig::float()).unwrap();
    assert!((exact.log.value - float.log.value).abs() < 1e-12);
    assert_eq!(exact.log.additive_bound, float.log.additive_bound);
}
