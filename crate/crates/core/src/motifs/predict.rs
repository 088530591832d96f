use std::io::Write;

use crate::coupling::cycle_permutation;
use crate::error::{ensure, Result};
use crate::numerics::{dot, sym_eig, RealMatrix, RealVector, SYMMETRY_TOL};

use super::set::{clamp_spectrum, write_motif_csv};

/// Which closed form produced a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictionKind {
    Random,
    Symmetric,
    Cycle,
    CyclePeriodic,
}

impl PredictionKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::Random => "random",
            Self::Symmetric => "symmetric",
            Self::Cycle => "cycle",
            Self::CyclePeriodic => "cycle-periodic",
        }
    }
}

/// One rank-one kernel `w̃_a² m^{(a)} m^{(a)ᵀ}` of a symmetric coupling.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricComponent {
    /// Eigenvalue `σ_a` of `W`.
    pub sigma: f64,
    /// Projection `w̃_a = s_aᵀ w` onto the matching eigenvector.
    pub w_tilde: f64,
    /// Unnormalised profile `(1, σ_a, …, σ_a^{τ−1})`.
    pub profile: RealVector,
    /// `w̃_a² ‖m^{(a)}‖²`, the nonzero eigenvalue of the component kernel.
    pub magnitude: f64,
}

/// Regime-specific intermediates of a prediction.
#[derive(Clone, Debug, PartialEq)]
pub enum PredictionDetail {
    Random { nu: f64, w_norm: f64 },
    Symmetric {
        components: Vec<SymmetricComponent>,
        /// `Σ_a w̃_a² m^{(a)} m^{(a)ᵀ}`.
        reconstruction: RealMatrix,
    },
    Cycle {
        r: RealMatrix,
        core_motifs: Vec<RealVector>,
        core_eigenvalues: Vec<f64>,
    },
    CyclePeriodic {
        t: RealMatrix,
        block_motifs: Vec<RealVector>,
        block_eigenvalues: Vec<f64>,
        /// Number of period blocks `N/p` in the input coupling.
        copies: usize,
    },
}

/// Predicted motifs (unit vectors) and weights, descending.
///
/// For symmetric couplings the entries are the normalised component profiles,
/// which are not eigenvectors of `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct MotifPrediction {
    pub kind: PredictionKind,
    pub motifs: Vec<RealVector>,
    pub weights: Vec<f64>,
    pub tau: usize,
    pub detail: PredictionDetail,
}

impl MotifPrediction {
    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        write_motif_csv(&self.motifs, &self.weights, self.tau, out)
    }
}

/// Diagonal approximation for random couplings: motifs `e_i`, weights
/// `‖w‖ (ν/2)^{i−1}` for `i ≤ min(N, τ)`.
pub fn predict_random(n: usize, nu: f64, w_norm: f64, tau: usize) -> Result<MotifPrediction> {
    ensure!(n >= 1 && tau >= 1, "dimension and horizon must be positive");
    ensure!(nu > 0.0 && w_norm >= 0.0, "nu must be positive and the input norm non-negative");
    let count = n.min(tau);
    let motifs = (0..count).map(|i| RealVector::basis(tau, i)).collect();
    let weights = (0..count).map(|i| w_norm * (nu / 2.0).powi(i as i32)).collect();
    Ok(MotifPrediction {
        kind: PredictionKind::Random,
        motifs,
        weights,
        tau,
        detail: PredictionDetail::Random { nu, w_norm },
    })
}

/// Predicted eigenvalues `λ̂_i = ‖w‖² (ν/2)^{2(i−1)}`, 1-based `i`.
pub fn predicted_random_eigenvalue(i: usize, nu: f64, w_norm: f64) -> f64 {
    w_norm * w_norm * (nu / 2.0).powi(2 * (i as i32 - 1))
}

/// Decomposes `Q` of a symmetric coupling into rank-one component kernels.
pub fn predict_symmetric(w_mat: &RealMatrix, w: &RealVector, tau: usize) -> Result<MotifPrediction> {
    ensure!(w_mat.is_square() && w_mat.rows() == w.len(), "coupling dimensions are inconsistent");
    ensure!(
        w_mat.is_symmetric(SYMMETRY_TOL * w_mat.max_abs().max(1.0)),
        "symmetric prediction needs a symmetric coupling (asymmetry {:e})",
        w_mat.asymmetry()
    );
    ensure!(tau >= 1, "horizon must be at least 1");
    let eig = sym_eig(w_mat)?;
    let mut components = Vec::with_capacity(eig.len());
    let mut reconstruction = RealMatrix::zeros(tau, tau);
    for a in 0..eig.len() {
        let sigma = eig.eigenvalues[a];
        let s = eig.vector(a);
        let w_tilde = dot(&s, w);
        let mut profile = Vec::with_capacity(tau);
        let mut p = 1.0;
        for _ in 0..tau {
            profile.push(p);
            p *= sigma;
        }
        let c = w_tilde * w_tilde;
        for i in 0..tau {
            let ci = c * profile[i];
            for j in 0..tau {
                reconstruction[(i, j)] += ci * profile[j];
            }
        }
        let profile = RealVector::new(profile)?;
        let magnitude = c * profile.norm().powi(2);
        components.push(SymmetricComponent { sigma, w_tilde, profile, magnitude });
    }
    components.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude));
    let motifs = components.iter().map(|c| c.profile.normalized()).collect();
    let weights = components.iter().map(|c| c.magnitude.sqrt()).collect();
    Ok(MotifPrediction {
        kind: PredictionKind::Symmetric,
        motifs,
        weights,
        tau,
        detail: PredictionDetail::Symmetric { components, reconstruction },
    })
}

// Σ_{b<blocks} ν^{2·b·len}, the squared norm of the block scaling vector
fn block_norm_sq(nu: f64, len: usize, blocks: usize) -> f64 {
    if nu == 1.0 {
        blocks as f64
    } else {
        let tau = (len * blocks) as i32;
        (1.0 - nu.powi(2 * tau)) / (1.0 - nu.powi(2 * len as i32))
    }
}

// (m̃, ν^len m̃, …), normalised
fn assemble_blocks(core: &[f64], nu: f64, blocks: usize) -> Result<RealVector> {
    let len = core.len();
    let step = nu.powi(len as i32);
    let mut out = Vec::with_capacity(len * blocks);
    let mut scale = 1.0;
    for _ in 0..blocks {
        out.extend(core.iter().map(|v| v * scale));
        scale *= step;
    }
    Ok(RealVector::new(out)?.normalized())
}

/// `M[i][j] = ν^{i+j} ⟨x, P^{|j−i|} x⟩` for the cyclic shift `P` (0-based).
fn shifted_gram(x: &[f64], nu: f64) -> RealMatrix {
    let n = x.len();
    let p = cycle_permutation(n);
    let mut shifted = vec![x.to_vec()];
    for d in 1..n {
        shifted.push(p.mul_vec(&shifted[d - 1]).expect("square shift"));
    }
    let corr: Vec<f64> = shifted.iter().map(|s| dot(x, s)).collect();
    RealMatrix::from_fn(n, n, |i, j| nu.powi((i + j) as i32) * corr[i.abs_diff(j)])
}

fn block_prediction(
    gram: &RealMatrix,
    nu: f64,
    blocks: usize,
    mass: f64,
) -> Result<(Vec<RealVector>, Vec<f64>, Vec<RealVector>, Vec<f64>)> {
    let eig = sym_eig(gram)?;
    let core_eigenvalues = clamp_spectrum(eig.eigenvalues.as_slice())?;
    let factor = block_norm_sq(nu, gram.rows(), blocks);
    let mut cores = Vec::with_capacity(eig.len());
    let mut motifs = Vec::with_capacity(eig.len());
    let mut weights = Vec::with_capacity(eig.len());
    for (i, &lambda) in core_eigenvalues.iter().enumerate() {
        let core = eig.vector(i);
        motifs.push(assemble_blocks(&core, nu, blocks)?);
        cores.push(RealVector::new(core)?);
        weights.push((mass * lambda * factor).sqrt());
    }
    Ok((motifs, weights, cores, core_eigenvalues))
}

/// Block motifs of the cycle coupling `νP` at horizon `τ = ℓN`.
pub fn predict_cycle(n: usize, nu: f64, w: &RealVector, ell: usize) -> Result<MotifPrediction> {
    ensure!(ell >= 1, "number of blocks must be at least 1");
    ensure!(n >= 1 && w.len() == n, "input coupling must have length N = {n}");
    ensure!(nu > 0.0 && nu <= 1.0, "nu must lie in (0, 1]");
    let r = shifted_gram(w, nu);
    let (motifs, weights, core_motifs, core_eigenvalues) = block_prediction(&r, nu, ell, 1.0)?;
    Ok(MotifPrediction {
        kind: PredictionKind::Cycle,
        motifs,
        weights,
        tau: n * ell,
        detail: PredictionDetail::Cycle { r, core_motifs, core_eigenvalues },
    })
}

/// Prediction for the cycle coupling with `w` made of `N/p` copies of the
/// block `s ∈ R^p`, at horizon `τ = ℓN`. At most `p` motifs carry weight.
pub fn predict_cycle_periodic(
    n: usize,
    nu: f64,
    period: usize,
    block: &RealVector,
    ell: usize,
) -> Result<MotifPrediction> {
    ensure!(ell >= 1, "number of blocks must be at least 1");
    ensure!(period >= 1 && n % period == 0, "period {period} must divide N = {n}");
    ensure!(block.len() == period, "block length {} differs from the period {period}", block.len());
    ensure!(nu > 0.0 && nu <= 1.0, "nu must lie in (0, 1]");
    let copies = n / period;
    let t = shifted_gram(block, nu);
    let blocks = n * ell / period;
    let (motifs, weights, block_motifs, block_eigenvalues) =
        block_prediction(&t, nu, blocks, copies as f64)?;
    Ok(MotifPrediction {
        kind: PredictionKind::CyclePeriodic,
        motifs,
        weights,
        tau: n * ell,
        detail: PredictionDetail::CyclePeriodic { t, block_motifs, block_eigenvalues, copies },
    })
}
