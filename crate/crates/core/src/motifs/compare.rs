use std::io::Write;

use crate::error::{ensure, Result};
use crate::numerics::{dot, sym_eig, RealMatrix, RealVector};
use crate::util::format_real;

use super::predict::{MotifPrediction, PredictionKind};
use super::set::MotifSet;

/// Eigenvalues within this relative distance form one degenerate cluster.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Per-motif agreement between an empirical and a predicted motif.
#[derive(Clone, Debug, PartialEq)]
pub struct MotifMatch {
    pub index: usize,
    /// First index of the degenerate cluster this motif belongs to.
    pub cluster: usize,
    /// `|⟨m_emp, m_pred⟩|`, or the smallest principal-angle cosine of the cluster.
    pub alignment: f64,
    pub weight_empirical: f64,
    pub weight_predicted: f64,
    pub relative_weight_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MotifComparison {
    pub matches: Vec<MotifMatch>,
}

impl MotifComparison {
    pub fn min_alignment(&self) -> f64 {
        self.matches.iter().map(|m| m.alignment).fold(1.0, f64::min)
    }

    pub fn max_weight_error(&self) -> f64 {
        self.matches.iter().map(|m| m.relative_weight_error).fold(0.0, f64::max)
    }

    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "index,cluster,alignment,weight_empirical,weight_predicted,relative_weight_error")?;
        for m in &self.matches {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                m.index + 1,
                m.cluster + 1,
                format_real(m.alignment),
                format_real(m.weight_empirical),
                format_real(m.weight_predicted),
                format_real(m.relative_weight_error)
            )?;
        }
        Ok(())
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CLUSTER_TOL * a.abs().max(b.abs())
}

// cosine of the largest principal angle between two orthonormal families
fn min_principal_cosine(a: &[&RealVector], b: &[&RealVector]) -> Result<f64> {
    let k = a.len();
    let c = RealMatrix::from_fn(k, k, |i, j| dot(a[i], b[j]));
    let eig = sym_eig(&c.gram())?;
    let smallest = eig.eigenvalues[k - 1].max(0.0);
    Ok(smallest.sqrt().min(1.0))
}

/// Compares motifs index by index over the shorter of the two lists.
///
/// Symmetric-coupling predictions are rejected: their component profiles are
/// not eigenvectors of `Q`.
pub fn compare_motifs(empirical: &MotifSet, predicted: &MotifPrediction) -> Result<MotifComparison> {
    ensure!(
        predicted.kind != PredictionKind::Symmetric,
        "symmetric component profiles are not motifs of the kernel and cannot be compared"
    );
    ensure!(
        empirical.tau() == predicted.tau,
        "motif lengths differ ({} vs {})",
        empirical.tau(),
        predicted.tau
    );
    let count = empirical.len().min(predicted.len());
    let lambda: Vec<f64> = predicted.weights[..count].iter().map(|w| w * w).collect();
    let mut matches = Vec::with_capacity(count);
    let mut start = 0;
    while start < count {
        let mut end = start + 1;
        while end < count && close(lambda[start], lambda[end]) {
            end += 1;
        }
        let alignment = if end - start == 1 {
            dot(empirical.motif(start), &predicted.motifs[start]).abs()
        } else {
            let a: Vec<&RealVector> = (start..end).map(|i| empirical.motif(i)).collect();
            let b: Vec<&RealVector> = predicted.motifs[start..end].iter().collect();
            min_principal_cosine(&a, &b)?
        };
        for i in start..end {
            let we = empirical.weights()[i];
            let wp = predicted.weights[i];
            let relative_weight_error = if wp > 0.0 {
                (we - wp).abs() / wp
            } else if we == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            matches.push(MotifMatch {
                index: i,
                cluster: start,
                alignment,
                weight_empirical: we,
                weight_predicted: wp,
                relative_weight_error,
            });
        }
        start = end;
    }
    Ok(MotifComparison { matches })
}
