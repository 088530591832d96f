//! Motif extraction, closed-form motif predictions and their comparison.

mod compare;
mod predict;
mod set;

pub use compare::{compare_motifs, MotifComparison, MotifMatch, CLUSTER_TOL};
pub use predict::{
    predict_cycle, predict_cycle_periodic, predict_random, predict_symmetric,
    predicted_random_eigenvalue, MotifPrediction, PredictionDetail, PredictionKind,
    SymmetricComponent,
};
pub use set::{extract_motifs, represent, MotifSet, RepresentationVector, DEFAULT_THRESHOLD_RATIO, PSD_TOL};

#[cfg(test)]
mod tests;
