//! Symmetric eigen-decomposition by cyclic Jacobi rotations.
//!
//! Output is canonicalised so that repeated runs and different platforms agree:
//! eigenvalues are sorted non-increasing (ties keep their original diagonal
//! position) and every eigenvector is flipped so that its largest-magnitude
//! component is positive, the lowest index winning a magnitude tie.

use super::matrix::{RealMatrix, RealVector};
use crate::error::{ensure, Error, Result};

/// Cap on full Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;
/// Converged once `‖offdiag(A)‖_F ≤ CONVERGENCE_TOL · ‖A‖_F`.
pub const CONVERGENCE_TOL: f64 = 1e-12;
/// Absolute tolerance on `|a_ij − a_ji|` accepted as symmetric input.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Spectrum of a symmetric matrix, `A = M Λ Mᵀ`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Sorted non-increasing.
    pub eigenvalues: RealVector,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: RealMatrix,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// The `i`-th eigenvector (zero based).
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// `M Λ Mᵀ`.
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.len();
        let m = &self.eigenvectors;
        RealMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| m[(i, k)] * self.eigenvalues[k] * m[(j, k)]).sum()
        })
    }
}

/// Full eigen-decomposition of a symmetric matrix.
pub fn sym_eig(a: &RealMatrix) -> Result<EigenDecomposition> {
    ensure!(a.is_square(), "sym_eig needs a square matrix, got {}x{}", a.rows(), a.cols());
    let asym = a.asymmetry();
    ensure!(asym <= SYMMETRY_TOL, "sym_eig needs a symmetric matrix (asymmetry {asym:e})");

    let n = a.rows();
    let mut w: Vec<f64> = a.as_slice().to_vec();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (w[i * n + j] + w[j * n + i]);
            w[i * n + j] = avg;
            w[j * n + i] = avg;
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let tol = CONVERGENCE_TOL * a.frobenius_norm();
    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&w, n);
        if off <= tol {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::Convergence { sweeps: sweep, residual: off });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, n, p, q, sweep);
            }
        }
        sweep += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps the original index order among equal eigenvalues
    order.sort_by(|&x, &y| w[y * n + y].partial_cmp(&w[x * n + x]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| w[k * n + k]).collect();
    let mut vectors = RealMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut lead = 0;
        for r in 1..n {
            if v[r * n + k].abs() > v[lead * n + k].abs() {
                lead = r;
            }
        }
        let sign = if v[lead * n + k] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[(r, col)] = sign * v[r * n + k];
        }
    }

    Ok(EigenDecomposition { eigenvalues: RealVector::new(eigenvalues)?, eigenvectors: vectors })
}

fn off_diagonal_norm(w: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * w[i * n + j] * w[i * n + j];
        }
    }
    s.sqrt()
}

/// Annihilates `w[p][q]` with one plane rotation and accumulates it into `v`.
#[inline]
fn rotate(w: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, sweep: usize) {
    let apq = w[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = w[p * n + p];
    let aqq = w[q * n + q];

    // after a few sweeps, drop elements that no longer affect either diagonal entry
    let g = 100.0 * apq.abs();
    if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        w[p * n + q] = 0.0;
        w[q * n + p] = 0.0;
        return;
    }

    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 { -t } else { t }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = w[r * n + p];
        let arq = w[r * n + q];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        w[r * n + p] = new_rp;
        w[p * n + r] = new_rp;
        w[r * n + q] = new_rq;
        w[q * n + r] = new_rq;
    }
    w[p * n + p] = app - t * apq;
    w[q * n + q] = aqq + t * apq;
    w[p * n + q] = 0.0;
    w[q * n + p] = 0.0;

    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = c * vrp - s * vrq;
        v[r * n + q] = s * vrp + c * vrq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn diagonal_input() {
        let e = sym_eig(&RealMatrix::from_diagonal(&[2.0, 1.0])).unwrap();
        assert_eq!(e.eigenvalues.as_slice(), &[2.0, 1.0]);
        assert_eq!(e.vector(0), vec![1.0, 0.0]);
        assert_eq!(e.vector(1), vec![0.0, 1.0]);
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let e = sym_eig(&RealMatrix::from_diagonal(&[1.0, 3.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues.as_slice(), &[3.0, 2.0, 1.0]);
        assert_eq!(e.vector(0), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn swap_matrix() {
        let e = sym_eig(&RealMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(e.eigenvalues[0], 1.0, 1e-15);
        assert_close(e.eigenvalues[1], -1.0, 1e-15);
        let v0 = e.vector(0);
        let v1 = e.vector(1);
        assert_close(v0[0], h, 1e-15);
        assert_close(v0[1], h, 1e-15);
        // largest-magnitude tie resolved towards the first component
        assert!(v1[0] > 0.0);
        assert_close(v1[0].abs(), h, 1e-15);
        assert_close(v1[1], -v1[0], 1e-15);
    }

    #[test]
    fn repeated_eigenvalues_keep_index_order() {
        let e = sym_eig(&RealMatrix::identity(3)).unwrap();
        for i in 0..3 {
            assert_eq!(e.vector(i), RealVector::basis(3, i).into_inner());
        }
    }

    #[test]
    fn zero_matrix() {
        let e = sym_eig(&RealMatrix::zeros(3, 3)).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| l == 0.0));
    }

    #[test]
    fn rejects_non_square_and_asymmetric() {
        assert!(matches!(sym_eig(&RealMatrix::zeros(2, 3)), Err(Error::Contract(_))));
        let a = RealMatrix::from_rows(&[vec![1.0, 2.0], vec![2.1, 1.0]]);
        assert!(matches!(sym_eig(&a), Err(Error::Contract(_))));
    }

    #[test]
    fn one_by_one() {
        let e = sym_eig(&RealMatrix::from_rows(&[vec![-4.0]])).unwrap();
        assert_eq!(e.eigenvalues.as_slice(), &[-4.0]);
        assert_eq!(e.vector(0), vec![1.0]);
    }
}
