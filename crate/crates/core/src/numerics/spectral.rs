use num_complex::Complex64;
use rustfft::FftPlannerScalar;

use super::eigen::sym_eig;
use super::matrix::RealMatrix;
use crate::error::{ensure, Result};

/// Complex-valued vector, used for Fourier coefficients.
pub type ComplexVector = Vec<Complex64>;

/// `σ_max(A) = sqrt(λ_max(AᵀA))`. The zero matrix gives 0.
pub fn largest_singular_value(a: &RealMatrix) -> Result<f64> {
    let eig = sym_eig(&a.gram())?;
    Ok(eig.eigenvalues[0].max(0.0).sqrt())
}

/// Unnormalised forward DFT, `X_k = Σ_j x_j exp(−2πi·jk/n)`.
///
/// Uses the scalar planner so results do not depend on the host's SIMD support.
pub fn dft(signal: &[f64]) -> Result<ComplexVector> {
    ensure!(!signal.is_empty(), "dft needs a non-empty signal");
    ensure!(signal.iter().all(|v| v.is_finite()), "dft input must be finite");
    let mut buf: Vec<Complex64> = signal.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let fft = FftPlannerScalar::new().plan_fft_forward(buf.len());
    fft.process(&mut buf);
    Ok(buf)
}

/// Number of eigenvalues above `rel_tol · max(λ_1, 0)`.
///
/// `eigenvalues` must be sorted non-increasing and free of significantly
/// negative entries (`≥ −1e-9 · λ_1`).
pub fn numerical_rank(eigenvalues: &[f64], rel_tol: f64) -> Result<usize> {
    ensure!(rel_tol >= 0.0, "relative tolerance must be non-negative");
    ensure!(
        eigenvalues.windows(2).all(|w| w[0] >= w[1]),
        "eigenvalues must be sorted non-increasing"
    );
    let largest = eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    if let Some(&smallest) = eigenvalues.last() {
        ensure!(
            smallest >= -1e-9 * largest,
            "eigenvalue {smallest:e} is too negative for a PSD spectrum (largest {largest:e})"
        );
    }
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(eigenvalues.iter().filter(|&&l| l > rel_tol * largest).count())
}
