//! Reservoir simulation, the feature map, the metric tensor and kernels.

mod series;

use std::io::Write;

use log::warn;

pub use series::TimeSeries;

use crate::coupling::{InputCouplingSpec, ReservoirSpec, Sampler, Seed};
use crate::error::{ensure, Result};
use crate::numerics::{dot, largest_singular_value, sym_eig, RealMatrix, RealVector};
use crate::util::format_real;

fn check_coupling(w_mat: &RealMatrix, w: &[f64]) -> Result<()> {
    ensure!(w_mat.is_square(), "dynamic coupling must be square, got {}x{}", w_mat.rows(), w_mat.cols());
    ensure!(
        w.len() == w_mat.rows(),
        "input coupling has length {} but reservoir has {} units",
        w.len(),
        w_mat.rows()
    );
    Ok(())
}

/// Runs `x(t) = W x(t−1) + w u(t)` from `x(−τ) = x_init` and returns `x(0)`.
pub fn simulate_state(
    w_mat: &RealMatrix,
    w: &RealVector,
    u: &TimeSeries,
    x_init: &RealVector,
) -> Result<RealVector> {
    check_coupling(w_mat, w)?;
    ensure!(
        x_init.len() == w.len(),
        "initial state has length {} but reservoir has {} units",
        x_init.len(),
        w.len()
    );
    let mut x = x_init.as_slice().to_vec();
    // oldest input first
    for &ut in u.values().iter().rev() {
        let mut next = w_mat.mul_vec(&x)?;
        for (xi, wi) in next.iter_mut().zip(w.iter()) {
            *xi += wi * ut;
        }
        x = next;
    }
    RealVector::new(x)
}

/// Feature map `φ(u) = Σ u_i W^{i−1} w` (zero initial state).
pub fn feature_map(w_mat: &RealMatrix, w: &RealVector, u: &TimeSeries) -> Result<RealVector> {
    check_coupling(w_mat, w)?;
    let mut acc = vec![0.0; w.len()];
    let mut col = w.as_slice().to_vec();
    for (i, &ui) in u.values().iter().enumerate() {
        if i > 0 {
            col = w_mat.mul_vec(&col)?;
        }
        for (a, c) in acc.iter_mut().zip(&col) {
            *a += ui * c;
        }
    }
    RealVector::new(acc)
}

/// Where a metric tensor came from.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSource {
    pub reservoir: ReservoirSpec,
    pub input: InputCouplingSpec,
    pub seed: Seed,
    pub tau: usize,
}

/// The `τ×τ` metric tensor `Q` with `K(u, v) = uᵀ Q v`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricTensor {
    q: RealMatrix,
    source: Option<TensorSource>,
}

impl MetricTensor {
    /// Wraps an arbitrary square matrix, which must be symmetric.
    pub fn from_matrix(q: RealMatrix) -> Result<Self> {
        ensure!(q.is_square(), "metric tensor must be square");
        let tol = crate::numerics::SYMMETRY_TOL * q.max_abs().max(1.0);
        ensure!(q.is_symmetric(tol), "metric tensor is not symmetric (asymmetry {:e})", q.asymmetry());
        Ok(Self { q, source: None })
    }

    /// Wraps a matrix without checking symmetry. Used to inject faulty
    /// tensors into the property checks.
    pub fn from_matrix_unchecked(q: RealMatrix) -> Self {
        Self { q, source: None }
    }

    pub fn with_source(mut self, source: TensorSource) -> Self {
        self.source = Some(source);
        self
    }

    pub fn source(&self) -> Option<&TensorSource> {
        self.source.as_ref()
    }

    pub fn tau(&self) -> usize {
        self.q.rows()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.q
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.q[(i, j)]
    }

    /// Largest violation of `|Q_ij| ≤ ν^{i+j} ‖w‖²` (0-based indices);
    /// non-positive when the bound holds.
    pub fn decay_excess(&self, nu: f64, w_norm_sq: f64) -> f64 {
        let tau = self.tau();
        let mut worst = f64::NEG_INFINITY;
        let mut pi = 1.0;
        for i in 0..tau {
            let mut pij = pi;
            for j in 0..tau {
                worst = worst.max(self.q[(i, j)].abs() - pij * w_norm_sq);
                pij *= nu;
            }
            pi *= nu;
        }
        worst
    }

    /// Smallest eigenvalue relative to the largest one (0 for a zero tensor).
    pub fn min_relative_eigenvalue(&self) -> Result<f64> {
        let eig = sym_eig(&self.q)?;
        let vals = eig.eigenvalues.as_slice();
        let max = vals[0];
        let min = vals[vals.len() - 1];
        if max <= 0.0 {
            return Ok(if min < 0.0 { f64::NEG_INFINITY } else { 0.0 });
        }
        Ok(min / max)
    }

    /// Writes one row per line, comma separated, 17 significant digits.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        for i in 0..self.tau() {
            let row: Vec<String> = self.q.row(i).iter().map(|&v| format_real(v)).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// The feature-map columns `Φ = [w, Ww, …, W^{τ−1}w]`, one entry per lag.
pub fn feature_columns(w_mat: &RealMatrix, w: &RealVector, tau: usize) -> Result<Vec<Vec<f64>>> {
    check_coupling(w_mat, w)?;
    ensure!(tau >= 1, "horizon must be at least 1");
    let mut cols = Vec::with_capacity(tau);
    cols.push(w.as_slice().to_vec());
    for i in 1..tau {
        let next = w_mat.mul_vec(&cols[i - 1])?;
        cols.push(next);
    }
    Ok(cols)
}

/// Builds `Q = ΦᵀΦ` for horizon `τ`.
pub fn build_metric_tensor(w_mat: &RealMatrix, w: &RealVector, tau: usize) -> Result<MetricTensor> {
    if tau < w.len() {
        warn!("horizon {tau} is shorter than the reservoir dimension {}", w.len());
    }
    let cols = feature_columns(w_mat, w, tau)?;
    let mut q = RealMatrix::zeros(tau, tau);
    for i in 0..tau {
        for j in i..tau {
            let v = dot(&cols[i], &cols[j]);
            q[(i, j)] = v;
            q[(j, i)] = v;
        }
    }
    Ok(MetricTensor { q, source: None })
}

fn check_horizon(q: &MetricTensor, u: &TimeSeries) -> Result<()> {
    ensure!(
        u.horizon() == q.tau(),
        "time series horizon {} does not match tensor horizon {}",
        u.horizon(),
        q.tau()
    );
    Ok(())
}

/// `K(u, v) = uᵀ Q v`.
pub fn kernel_eval(q: &MetricTensor, u: &TimeSeries, v: &TimeSeries) -> Result<f64> {
    check_horizon(q, u)?;
    check_horizon(q, v)?;
    let qv = q.q.mul_vec(v.values())?;
    Ok(dot(u.values(), &qv))
}

/// Polynomial kernel `(K(u, v) + a)^d`.
pub fn kernel_poly(q: &MetricTensor, u: &TimeSeries, v: &TimeSeries, offset: f64, degree: u32) -> Result<f64> {
    ensure!(degree >= 1, "polynomial degree must be at least 1");
    let k = kernel_eval(q, u, v)?;
    Ok((k + offset).powi(degree as i32))
}

/// Kernel-machine readout `y = Σ β_i K(u_i, v) + b`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReadoutModel {
    pub supports: Vec<(TimeSeries, f64)>,
    pub bias: f64,
}

impl ReadoutModel {
    pub fn new(supports: Vec<(TimeSeries, f64)>, bias: f64) -> Result<Self> {
        ensure!(bias.is_finite(), "readout bias must be finite");
        ensure!(
            supports.iter().all(|(_, beta)| beta.is_finite()),
            "readout coefficients must be finite"
        );
        Ok(Self { supports, bias })
    }
}

pub fn readout_eval(model: &ReadoutModel, q: &MetricTensor, v: &TimeSeries) -> Result<f64> {
    let mut y = model.bias;
    for (u, beta) in &model.supports {
        y += beta * kernel_eval(q, u, v)?;
    }
    Ok(y)
}

/// Parameters of the initial-condition insensitivity bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    /// Bound on `|u_i|`.
    pub u_bound: f64,
    /// Bound on `‖w‖`.
    pub w_bound: f64,
    pub zeta: f64,
    pub c: f64,
    pub tau: usize,
}

impl BoundParams {
    /// Smallest admissible `c` for the given `ν`.
    pub fn min_c(u_bound: f64, w_bound: f64, zeta: f64, nu: f64) -> f64 {
        w_bound * u_bound / ((1.0 - nu) * (1.0 - nu / zeta))
    }

    /// Radius `c·ζ^{−τ}` allowed for the initial state.
    pub fn state_radius(&self) -> f64 {
        self.c * self.zeta.powi(-(self.tau as i32))
    }

    pub fn validate(&self, nu: f64) -> Result<()> {
        ensure!(nu > 0.0 && nu < 1.0, "bound requires 0 < nu < 1, got {nu}");
        ensure!(nu < self.zeta && self.zeta < 1.0, "bound requires nu < zeta < 1 (nu {nu}, zeta {})", self.zeta);
        ensure!(self.u_bound > 0.0 && self.w_bound > 0.0, "input and coupling bounds must be positive");
        ensure!(self.tau >= 1, "horizon must be at least 1");
        let min_c = Self::min_c(self.u_bound, self.w_bound, self.zeta, nu);
        ensure!(self.c >= min_c, "c = {} is below the admissible minimum {min_c}", self.c);
        Ok(())
    }
}

/// Lower and upper bounds on `ε = K(u, v; x) − K(u, v; 0)`.
pub fn theorem1_bounds(params: &BoundParams, nu: f64) -> Result<(f64, f64)> {
    params.validate(nu)?;
    let eta = nu / params.zeta;
    let eta_tau = eta.powi(params.tau as i32);
    let cross = 2.0 * params.c / (1.0 - nu) * params.w_bound * params.u_bound;
    Ok((-eta_tau * cross, eta_tau * (params.c * params.c * eta_tau + cross)))
}

/// Largest initial-state norm used by the randomized checks.
pub const MAX_STATE_NORM: f64 = 1e150;

/// Initial state drawn uniformly on the sphere of radius
/// `min(c·ζ^{−τ}, 1e150)`.
pub fn sample_initial_state(n: usize, params: &BoundParams, seed: Seed) -> Result<RealVector> {
    ensure!(n >= 1, "state dimension must be at least 1");
    let radius = params.state_radius().min(MAX_STATE_NORM);
    let mut s = Sampler::new(seed);
    loop {
        let v = RealVector::new((0..n).map(|_| s.gaussian()).collect())?;
        if v.norm() > 0.0 {
            return Ok(v.normalized().scaled(radius));
        }
    }
}

/// Series with entries i.i.d. uniform on `[−bound, bound)`.
pub fn random_series(horizon: usize, bound: f64, seed: Seed) -> Result<TimeSeries> {
    let mut s = Sampler::new(seed);
    TimeSeries::new((0..horizon).map(|_| bound * s.uniform()).collect())
}

/// One measured instance of the insensitivity bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundTrial {
    pub epsilon: f64,
    pub lower: f64,
    pub upper: f64,
}

impl BoundTrial {
    pub fn holds(&self) -> bool {
        self.lower <= self.epsilon && self.epsilon <= self.upper
    }
}

/// Measures `ε` from two simulations sharing the initial state `x_init`.
pub fn measure_bound(
    w_mat: &RealMatrix,
    w: &RealVector,
    u: &TimeSeries,
    v: &TimeSeries,
    x_init: &RealVector,
    params: &BoundParams,
) -> Result<BoundTrial> {
    ensure!(
        u.horizon() == params.tau && v.horizon() == params.tau,
        "series horizon must equal the bound horizon {}",
        params.tau
    );
    ensure!(w.norm() <= params.w_bound * (1.0 + 1e-12), "input coupling norm exceeds its bound");
    ensure!(
        u.max_abs() <= params.u_bound && v.max_abs() <= params.u_bound,
        "series leave the input domain"
    );
    let nu = largest_singular_value(w_mat)?;
    let (lower, upper) = theorem1_bounds(params, nu)?;
    let zero = RealVector::zeros(w.len());
    let k_x = dot(&simulate_state(w_mat, w, u, x_init)?, &simulate_state(w_mat, w, v, x_init)?);
    let k_0 = dot(&simulate_state(w_mat, w, u, &zero)?, &simulate_state(w_mat, w, v, &zero)?);
    Ok(BoundTrial { epsilon: k_x - k_0, lower, upper })
}
