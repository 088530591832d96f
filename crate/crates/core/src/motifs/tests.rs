use super::*;
use crate::coupling::{
    cycle_permutation, generate_input, generate_reservoir, Distribution, InputCouplingSpec, InputKind, Regime,
    ReservoirSpec, Seed,
};
use crate::kernel::{build_metric_tensor, kernel_eval, random_series, MetricTensor, TimeSeries};
use crate::numerics::{dot, numerical_rank, RealMatrix, RealVector};
use proptest::prelude::*;

fn gaussian_w(n: usize, seed: u64) -> RealVector {
    generate_input(&InputCouplingSpec::new(n, InputKind::Gaussian, true).unwrap(), Seed(seed)).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn scalar_system_single_motif() {
    let (nu, tau) = (0.7f64, 12usize);
    let q = build_metric_tensor(&RealMatrix::from_rows(&[vec![nu]]), &RealVector::new(vec![1.0]).unwrap(), tau)
        .unwrap();
    let set = extract_motifs(&q, 1e-2).unwrap();
    assert_eq!(set.len(), 1);
    let geometric: f64 = (0..tau).map(|i| nu.powi(2 * i as i32)).sum();
    assert!(rel(set.weights()[0], geometric.sqrt()) <= 1e-12);
    assert!(rel(set.weights()[0], ((1.0 - nu.powi(2 * tau as i32)) / (1.0 - nu * nu)).sqrt()) <= 1e-12);
    let norm = geometric.sqrt();
    for (i, v) in set.motif(0).iter().enumerate() {
        assert!((v - nu.powi(i as i32) / norm).abs() <= 1e-12);
    }
}

#[test]
fn identity_tensor() {
    let q = MetricTensor::from_matrix(RealMatrix::identity(5)).unwrap();
    let set = extract_motifs(&q, 1e-2).unwrap();
    assert_eq!(set.len(), 5);
    for i in 0..5 {
        assert_eq!(set.motif(i), &RealVector::basis(5, i));
        assert_eq!(set.weights()[i], 1.0);
    }
}

#[test]
fn zero_tensor_gives_empty_set() {
    let q = MetricTensor::from_matrix(RealMatrix::zeros(4, 4)).unwrap();
    assert!(extract_motifs(&q, 1e-2).unwrap().is_empty());
}

#[test]
fn rejects_indefinite_tensor() {
    let q = MetricTensor::from_matrix(RealMatrix::from_diagonal(&[1.0, -0.5])).unwrap();
    assert!(matches!(extract_motifs(&q, 1e-2), Err(crate::Error::NotPsd { .. })));
    let tiny = MetricTensor::from_matrix(RealMatrix::from_diagonal(&[1.0, -1e-12])).unwrap();
    assert_eq!(extract_motifs(&tiny, 1e-2).unwrap().len(), 1);
    assert!(extract_motifs(&tiny, 0.0).is_err());
}

#[test]
fn threshold_is_applied() {
    let q = MetricTensor::from_matrix(RealMatrix::from_diagonal(&[1.0, 1e-3, 1e-4, 1e-5])).unwrap();
    // weights 1, 0.0316, 0.01, 0.00316
    assert_eq!(extract_motifs(&q, 1e-2).unwrap().len(), 3);
    assert_eq!(extract_motifs(&q, 0.05).unwrap().len(), 1);
}

#[test]
fn representation_identities() {
    let w_mat = generate_reservoir(
        &ReservoirSpec::new(6, Regime::RandomIid(Distribution::Gaussian), 0.9).unwrap(),
        Seed(2),
    )
    .unwrap();
    let q = build_metric_tensor(&w_mat, &gaussian_w(6, 3), 15).unwrap();
    let set = extract_motifs(&q, 1e-9).unwrap();
    let u = random_series(15, 1.0, Seed(4)).unwrap();
    let v = random_series(15, 1.0, Seed(5)).unwrap();
    let k = kernel_eval(&q, &u, &v).unwrap();
    let approx = represent(&set, &u).unwrap().dot(&represent(&set, &v).unwrap());
    assert!((k - approx).abs() <= 1e-10 * k.abs().max(1.0));

    let m1 = TimeSeries::new(set.motif(0).as_slice().to_vec()).unwrap();
    let r = represent(&set, &m1).unwrap();
    assert!((r.as_slice()[0] - set.weights()[0]).abs() <= 1e-12);
    assert!(r.as_slice()[1..].iter().all(|x| x.abs() <= 1e-12));

    // orthogonal to the six-dimensional range of Q
    let mut z = u.values().to_vec();
    for m in set.motifs() {
        let c = dot(m, &z);
        for (zi, mi) in z.iter_mut().zip(m.iter()) {
            *zi -= c * mi;
        }
    }
    let r = represent(&set, &TimeSeries::new(z).unwrap()).unwrap();
    assert!(r.as_slice().iter().all(|x| x.abs() <= 1e-12));
    assert!(represent(&set, &TimeSeries::new(vec![1.0]).unwrap()).is_err());
}

#[test]
fn random_prediction_values() {
    let p = predict_random(100, 0.995, 1.0, 200).unwrap();
    assert_eq!(p.len(), 100);
    assert_eq!(p.weights[0], 1.0);
    assert_eq!(predicted_random_eigenvalue(1, 0.995, 1.0), 1.0);
    let ratio = predicted_random_eigenvalue(2, 0.995, 1.0) / predicted_random_eigenvalue(1, 0.995, 1.0);
    assert!((ratio - 0.24750625).abs() <= 1e-15);
    for i in 1..10 {
        let r = predicted_random_eigenvalue(i + 1, 0.9, 2.0) / predicted_random_eigenvalue(i, 0.9, 2.0);
        assert!((r - 0.2025).abs() <= 1e-14);
    }
    assert_eq!(p.motifs[3], RealVector::basis(200, 3));
}

#[test]
fn symmetric_single_component() {
    let w_mat = RealMatrix::from_diagonal(&[0.6, -0.3, 0.2]);
    let w = RealVector::basis(3, 0);
    let p = predict_symmetric(&w_mat, &w, 6).unwrap();
    let PredictionDetail::Symmetric { components, reconstruction } = &p.detail else { panic!() };
    let active: Vec<_> = components.iter().filter(|c| c.w_tilde != 0.0).collect();
    assert_eq!(active.len(), 1);
    for i in 0..6 {
        for j in 0..6 {
            assert!((reconstruction[(i, j)] - 0.6f64.powi((i + j) as i32)).abs() <= 1e-15);
        }
    }
}

#[test]
fn symmetric_negative_eigenvalue_oscillates() {
    let w_mat = RealMatrix::from_diagonal(&[0.5, -0.8]);
    let p = predict_symmetric(&w_mat, &RealVector::new(vec![0.0, 1.0]).unwrap(), 5).unwrap();
    let PredictionDetail::Symmetric { components, .. } = &p.detail else { panic!() };
    let c = components.iter().find(|c| c.sigma < 0.0).unwrap();
    let want = [1.0, -0.8, 0.64, -0.512, 0.4096];
    for (g, h) in c.profile.iter().zip(want) {
        assert!((g - h).abs() <= 1e-15);
    }
}

#[test]
fn symmetric_reconstruction_matches_tensor() {
    for seed in 0..5 {
        let w_mat = generate_reservoir(
            &ReservoirSpec::new(12, Regime::SymmetricWigner(Distribution::Gaussian), 0.95).unwrap(),
            Seed(seed),
        )
        .unwrap();
        let w = gaussian_w(12, seed + 100);
        let q = build_metric_tensor(&w_mat, &w, 30).unwrap();
        let p = predict_symmetric(&w_mat, &w, 30).unwrap();
        let PredictionDetail::Symmetric { reconstruction, .. } = &p.detail else { panic!() };
        assert!(reconstruction.max_abs_diff(q.matrix()) <= 1e-9);
        assert!(compare_motifs(&extract_motifs(&q, 1e-2).unwrap(), &p).is_err());
    }
    assert!(predict_symmetric(&cycle_permutation(3), &gaussian_w(3, 0), 4).is_err());
}

#[test]
fn cycle_weight_factor() {
    let w = RealVector::new(vec![1.0, 0.0]).unwrap();
    let p = predict_cycle(2, 0.5, &w, 2).unwrap();
    let PredictionDetail::Cycle { core_eigenvalues, .. } = &p.detail else { panic!() };
    let factor = (p.weights[0] / core_eigenvalues[0].sqrt()).powi(2);
    assert!((factor.sqrt() - 1.0625f64.sqrt()).abs() <= 1e-14);
    assert!((1.0625f64.sqrt() - 1.03078).abs() < 1e-5);
    assert!(predict_cycle(2, 0.5, &w, 0).is_err());
}

#[test]
fn cycle_single_block_is_r() {
    let w = gaussian_w(6, 9);
    let p = predict_cycle(6, 0.8, &w, 1).unwrap();
    let q = build_metric_tensor(&cycle_permutation(6).scaled(0.8), &w, 6).unwrap();
    let PredictionDetail::Cycle { r, core_eigenvalues, .. } = &p.detail else { panic!() };
    assert!(r.max_abs_diff(q.matrix()) <= 1e-14);
    for (wt, l) in p.weights.iter().zip(core_eigenvalues) {
        assert!((wt * wt - l).abs() <= 1e-14);
    }
}

#[test]
fn cycle_prediction_matches_tensor() {
    let (n, ell, nu) = (10, 3, 0.8);
    let w = gaussian_w(n, 21);
    let q = build_metric_tensor(&cycle_permutation(n).scaled(nu), &w, n * ell).unwrap();
    let p = predict_cycle(n, nu, &w, ell).unwrap();
    let q_max = q.matrix().max_abs();
    for (m, wt) in p.motifs.iter().zip(&p.weights) {
        let qm = q.matrix().mul_vec(m).unwrap();
        let resid = qm.iter().zip(m.iter()).map(|(a, b)| (a - wt * wt * b).abs()).fold(0.0, f64::max);
        assert!(resid <= 1e-8 * q_max, "{resid}");
    }
    let set = extract_motifs(&q, 1e-6).unwrap();
    let cmp = compare_motifs(&set, &p).unwrap();
    assert!(cmp.min_alignment() >= 1.0 - 1e-8);
    assert!(cmp.max_weight_error() <= 1e-8);
}

#[test]
fn periodic_binary_corollary() {
    let (n, p, nu, ell) = (20, 5, 0.9f64, 2);
    let spec = InputCouplingSpec::new(n, InputKind::PeriodicBinary { period: p }, true).unwrap();
    let w = generate_input(&spec, Seed(0)).unwrap();
    let block = RealVector::new(w[..p].to_vec()).unwrap();
    let pred = predict_cycle_periodic(n, nu, p, &block, ell).unwrap();
    let tau = n * ell;
    let factor = ((1.0 - nu.powi(2 * tau as i32)) / (1.0 - nu.powi(2 * p as i32))).sqrt();
    for i in 0..p {
        assert!(rel(pred.weights[i], nu.powi(i as i32) * factor) <= 1e-12);
    }
    let q = build_metric_tensor(&cycle_permutation(n).scaled(nu), &w, tau).unwrap();
    let set = extract_motifs(&q, 1e-2).unwrap();
    assert_eq!(set.len(), p);
    assert_eq!(numerical_rank(set.spectrum(), 1e-10).unwrap(), p);
    for i in 0..p {
        assert!(rel(set.weights()[i], pred.weights[i]) <= 1e-8);
    }
    let cmp = compare_motifs(&set, &pred).unwrap();
    assert!(cmp.min_alignment() >= 1.0 - 1e-8);
}

#[test]
fn bipolar_doubles_binary() {
    let (n, p) = (8, 4);
    let bin = RealVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
    let bip = RealVector::new(vec![1.0, -1.0, -1.0, -1.0]).unwrap();
    let a = predict_cycle_periodic(n, 0.9, p, &bin, 3).unwrap();
    let b = predict_cycle_periodic(n, 0.9, p, &bip, 3).unwrap();
    for i in 0..p {
        assert!(rel(b.weights[i], 2.0 * a.weights[i]) <= 1e-12);
    }
    assert!(predict_cycle_periodic(10, 0.9, 4, &bin, 1).is_err());
}

#[test]
fn comparison_of_identical_and_flipped() {
    let motifs = vec![RealVector::basis(3, 0), RealVector::basis(3, 1)];
    let set = MotifSet::from_parts(motifs.clone(), vec![2.0, 1.0], 3).unwrap();
    let mut pred = predict_random(2, 1.0, 2.0, 3).unwrap();
    pred.weights = vec![2.0, 1.0];
    let cmp = compare_motifs(&set, &pred).unwrap();
    assert_eq!(cmp.min_alignment(), 1.0);
    assert_eq!(cmp.max_weight_error(), 0.0);
    pred.motifs[1] = pred.motifs[1].scaled(-1.0);
    assert_eq!(compare_motifs(&set, &pred).unwrap().min_alignment(), 1.0);
}

#[test]
fn comparison_uses_subspaces_for_degenerate_weights() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let emp = MotifSet::from_parts(
        vec![RealVector::basis(3, 0), RealVector::basis(3, 1), RealVector::basis(3, 2)],
        vec![1.0, 1.0, 0.5],
        3,
    )
    .unwrap();
    let mut pred = predict_random(3, 1.0, 1.0, 3).unwrap();
    pred.motifs = vec![
        RealVector::new(vec![s, s, 0.0]).unwrap(),
        RealVector::new(vec![s, -s, 0.0]).unwrap(),
        RealVector::basis(3, 2),
    ];
    pred.weights = vec![1.0, 1.0, 0.5];
    let cmp = compare_motifs(&emp, &pred).unwrap();
    assert_eq!(cmp.matches[1].cluster, 0);
    assert_eq!(cmp.matches[2].cluster, 2);
    assert!(cmp.min_alignment() >= 1.0 - 1e-12);
}

#[test]
fn csv_layout() {
    let set = MotifSet::from_parts(vec![RealVector::basis(2, 0)], vec![0.5], 2).unwrap();
    let mut buf = Vec::new();
    set.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,weight,m_1,m_2"));
    assert_eq!(lines.next(), Some("1,5.0000000000000000e-1,1.0000000000000000e0,0.0000000000000000e0"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn motif_set_invariants(n in 1usize..10, extra in 0usize..15, nu in 0.2f64..0.99, seed in any::<u64>(),
                            regime in prop_oneof![
                                Just(Regime::RandomIid(Distribution::Gaussian)),
                                Just(Regime::SymmetricWigner(Distribution::Uniform)),
                                Just(Regime::CyclePermutation)]) {
        let tau = n + extra;
        let w_mat = generate_reservoir(&ReservoirSpec::new(n, regime, nu).unwrap(), Seed(seed)).unwrap();
        let q = build_metric_tensor(&w_mat, &gaussian_w(n, seed ^ 1), tau).unwrap();
        let set = extract_motifs(&q, 1e-2).unwrap();
        let trace: f64 = (0..tau).map(|i| q.get(i, i)).sum();
        let sum: f64 = set.spectrum().iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-10 * trace);
        prop_assert!(numerical_rank(set.spectrum(), 1e-10).unwrap() <= n);
        let w_max = set.weights()[0];
        for i in 0..set.len() {
            prop_assert!(set.weights()[i] >= 1e-2 * w_max);
            for j in 0..set.len() {
                let d = dot(set.motif(i), set.motif(j));
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() <= 1e-8);
            }
        }
    }
}
