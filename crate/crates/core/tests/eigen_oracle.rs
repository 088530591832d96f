use proptest::prelude::*;
use resmotif::{largest_singular_value, sym_eig, RealMatrix};

// Unshifted QR iteration with Gram–Schmidt, run to convergence. Slow but
// independent of the Jacobi solver.
fn qr_eigenvalues(a: &RealMatrix) -> Vec<f64> {
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    for _ in 0..20000 {
        // columns of m
        let cols: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect();
        let mut q: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut r = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut v = cols[j].clone();
            for (k, qk) in q.iter().enumerate() {
                let d: f64 = qk.iter().zip(&cols[j]).map(|(x, y)| x * y).sum();
                r[k][j] = d;
                for i in 0..n {
                    v[i] -= d * qk[i];
                }
            }
            let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            r[j][j] = nv;
            q.push(v.iter().map(|x| x / nv).collect());
        }
        // m = R Q, where q holds the columns of Q
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|k| r[i][k] * q[j][k]).sum();
            }
        }
        m = next;
        let off: f64 = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| m[i][j].abs()).sum();
        if off < 1e-14 {
            break;
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

fn lcg_matrix(n: usize, mut state: u64) -> RealMatrix {
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    RealMatrix::from_fn(n, n, |_, _| next())
}

fn symmetric(n: usize, seed: u64) -> RealMatrix {
    let a = lcg_matrix(n, seed);
    RealMatrix::from_fn(n, n, |i, j| if i <= j { a[(i, j)] } else { a[(j, i)] })
}

#[test]
fn jacobi_matches_qr_iteration() {
    // shift by 3I so all eigenvalues are positive and distinct in modulus
    let base = symmetric(8, 42);
    let a = RealMatrix::from_fn(8, 8, |i, j| base[(i, j)] + if i == j { 3.0 } else { 0.0 });
    let oracle = qr_eigenvalues(&a);
    let eig = sym_eig(&a).unwrap();
    for (g, h) in eig.eigenvalues.iter().zip(&oracle) {
        assert!((g - h).abs() <= 1e-8, "{g} vs {h}");
    }
    for i in 0..8 {
        let v = eig.vector(i);
        let av = a.mul_vec(&v).unwrap();
        for k in 0..8 {
            assert!((av[k] - eig.eigenvalues[i] * v[k]).abs() <= 1e-10);
        }
    }
}

#[test]
fn singular_value_cross_check() {
    let a = lcg_matrix(10, 7);
    let oracle = qr_eigenvalues(&a.transpose().matmul(&a).unwrap())[0].sqrt();
    let got = largest_singular_value(&a).unwrap();
    assert!((got - oracle).abs() <= 1e-9 * oracle);
    assert_eq!(largest_singular_value(&RealMatrix::from_diagonal(&[3.0, -4.0])).unwrap(), 4.0);
    assert_eq!(largest_singular_value(&RealMatrix::zeros(3, 3)).unwrap(), 0.0);
    for n in [1, 2, 5, 17] {
        let p = resmotif::cycle_permutation(n);
        assert!((largest_singular_value(&p).unwrap() - 1.0).abs() <= 1e-12);
        assert!((largest_singular_value(&p.scaled(-2.5)).unwrap() - 2.5).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residuals_and_orthonormality(n in 1usize..14, seed in any::<u64>(), scale in 1e-3f64..1e3) {
        let a = symmetric(n, seed).scaled(scale);
        let eig = sym_eig(&a).unwrap();
        let a_max = a.max_abs();
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        for i in 0..n {
            let v = eig.vector(i);
            let av = a.mul_vec(&v).unwrap();
            for k in 0..n {
                prop_assert!((av[k] - eig.eigenvalues[i] * v[k]).abs() <= 1e-8 * a_max);
            }
            // orientation: largest-magnitude component positive, lowest index on ties
            let big = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let first = v.iter().position(|x| x.abs() == big).unwrap();
            prop_assert!(v[first] > 0.0);
            for j in 0..n {
                let d: f64 = v.iter().zip(eig.vector(j)).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() <= 1e-9);
            }
        }
        prop_assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-8 * a_max);
        let again = sym_eig(&a).unwrap();
        prop_assert_eq!(eig.eigenvalues, again.eigenvalues);
        prop_assert_eq!(eig.eigenvectors, again.eigenvectors);
    }
}
