//! Shared fixtures for the benchmarks.

use resmotif::{
    generate_input, generate_reservoir, InputCouplingSpec, InputKind, RealMatrix, RealVector, Regime,
    ReservoirSpec, Seed,
};

/// Couplings of the size used throughout the richness experiments.
pub fn couplings(n: usize, regime: Regime, input: InputKind, nu: f64) -> (RealMatrix, RealVector) {
    let w_mat = generate_reservoir(&ReservoirSpec::new(n, regime, nu).unwrap(), Seed(1)).unwrap();
    let w = generate_input(&InputCouplingSpec::new(n, input, true).unwrap(), Seed(2)).unwrap();
    (w_mat, w)
}

/// A dense symmetric test matrix.
pub fn symmetric_matrix(n: usize) -> RealMatrix {
    let (w_mat, _) = couplings(n, Regime::SymmetricWigner(resmotif::Distribution::Gaussian), InputKind::Gaussian, 1.0);
    w_mat
}
