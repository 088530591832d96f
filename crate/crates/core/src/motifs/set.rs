use std::io::Write;

use crate::error::{ensure, Error, Result};
use crate::kernel::{MetricTensor, TimeSeries};
use crate::numerics::{dot, sym_eig, RealVector};
use crate::util::format_real;

/// Default cut-off: keep motifs whose weight is at least 1% of the largest.
pub const DEFAULT_THRESHOLD_RATIO: f64 = 1e-2;

/// Eigenvalues in `[−PSD_TOL·λ_max, 0)` are treated as rounding noise.
pub const PSD_TOL: f64 = 1e-9;

/// Motifs of a metric tensor with their weights `ω_i = √λ_i`, descending.
#[derive(Clone, Debug, PartialEq)]
pub struct MotifSet {
    motifs: Vec<RealVector>,
    weights: Vec<f64>,
    spectrum: Vec<f64>,
    threshold_ratio: f64,
    tau: usize,
    n: Option<usize>,
}

impl MotifSet {
    /// Assembles a set from unit motifs and weights given in descending order.
    pub fn from_parts(motifs: Vec<RealVector>, weights: Vec<f64>, tau: usize) -> Result<Self> {
        ensure!(motifs.len() == weights.len(), "motif and weight counts differ");
        ensure!(
            motifs.iter().all(|m| m.len() == tau),
            "every motif must have length {tau}"
        );
        ensure!(weights.iter().all(|&w| w >= 0.0), "motif weights must be non-negative");
        ensure!(weights.windows(2).all(|p| p[0] >= p[1]), "motif weights must be descending");
        let spectrum = weights.iter().map(|w| w * w).collect();
        Ok(Self { motifs, weights, spectrum, threshold_ratio: 0.0, tau, n: None })
    }

    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn motifs(&self) -> &[RealVector] {
        &self.motifs
    }

    pub fn motif(&self, i: usize) -> &RealVector {
        &self.motifs[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Squared weights of the retained motifs.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w * w).collect()
    }

    /// Full eigenvalue spectrum of the tensor before clamping and thresholding.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn threshold_ratio(&self) -> f64 {
        self.threshold_ratio
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Reservoir dimension, when the tensor carried its provenance.
    pub fn reservoir_dim(&self) -> Option<usize> {
        self.n
    }

    /// Header `index,weight,m_1,...,m_tau`, one motif per row.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        write_motif_csv(&self.motifs, &self.weights, self.tau, out)
    }
}

pub(crate) fn write_motif_csv(
    motifs: &[RealVector],
    weights: &[f64],
    tau: usize,
    mut out: impl Write,
) -> Result<()> {
    let mut header = String::from("index,weight");
    for t in 1..=tau {
        header.push_str(&format!(",m_{t}"));
    }
    writeln!(out, "{header}")?;
    for (i, (m, w)) in motifs.iter().zip(weights).enumerate() {
        let mut line = format!("{},{}", i + 1, format_real(*w));
        for v in m.iter() {
            line.push(',');
            line.push_str(&format_real(*v));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Clamps rounding noise below zero and rejects genuinely negative eigenvalues.
pub(crate) fn clamp_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    let largest = values.iter().cloned().fold(0.0f64, f64::max);
    values
        .iter()
        .map(|&v| {
            if v >= 0.0 {
                Ok(v)
            } else if v >= -PSD_TOL * largest {
                Ok(0.0)
            } else {
                Err(Error::NotPsd { eigenvalue: v, largest })
            }
        })
        .collect()
}

/// Eigen-analysis of `Q`: keeps motifs with `ω_i ≥ threshold_ratio · ω_max`.
pub fn extract_motifs(q: &MetricTensor, threshold_ratio: f64) -> Result<MotifSet> {
    ensure!(
        threshold_ratio > 0.0 && threshold_ratio <= 1.0,
        "threshold ratio must lie in (0, 1], got {threshold_ratio}"
    );
    let tau = q.tau();
    let eig = sym_eig(q.matrix())?;
    let spectrum = eig.eigenvalues.as_slice().to_vec();
    let clamped = clamp_spectrum(&spectrum)?;
    let w_max = clamped.first().copied().unwrap_or(0.0).sqrt();
    let mut motifs = Vec::new();
    let mut weights = Vec::new();
    if w_max > 0.0 {
        for (i, &lambda) in clamped.iter().enumerate() {
            let w = lambda.sqrt();
            if w <= 0.0 || w < threshold_ratio * w_max {
                break;
            }
            motifs.push(RealVector::new(eig.vector(i))?);
            weights.push(w);
        }
    }
    Ok(MotifSet {
        motifs,
        weights,
        spectrum,
        threshold_ratio,
        tau,
        n: q.source().map(|s| s.reservoir.n),
    })
}

/// Matching scores `ũ_i = λ_i^{1/2} ⟨m_i, u⟩` of a series against the motifs.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationVector(pub Vec<f64>);

impl RepresentationVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, other: &RepresentationVector) -> f64 {
        dot(&self.0, &other.0)
    }
}

pub fn represent(set: &MotifSet, u: &TimeSeries) -> Result<RepresentationVector> {
    ensure!(
        u.horizon() == set.tau,
        "time series horizon {} does not match motif length {}",
        u.horizon(),
        set.tau
    );
    Ok(RepresentationVector(
        set.motifs.iter().zip(&set.weights).map(|(m, w)| w * dot(m, u.values())).collect(),
    ))
}
