//! Linear echo-state reservoirs viewed as temporal kernel machines.
//!
//! The crate builds the metric tensor `Q` of a linear reservoir, extracts its
//! motifs, evaluates closed-form motif predictions for random, symmetric and
//! cyclic couplings, and measures motif richness from Fourier spectra.

pub mod coupling;
mod error;
pub mod kernel;
pub mod motifs;
pub mod numerics;
pub mod richness;
pub mod util;

pub use coupling::{
    cycle_permutation, generate_input, generate_reservoir, irrational_bits, Distribution,
    InputCouplingSpec, InputKind, IrrationalConstant, Regime, ReservoirSpec, Seed, IRRATIONAL_TABLE_BITS,
};
pub use error::{Error, Result};
pub use numerics::{
    dft, largest_singular_value, numerical_rank, sym_eig, ComplexVector, EigenDecomposition,
    RealMatrix, RealVector,
};
pub use kernel::{
    build_metric_tensor, feature_map, kernel_eval, kernel_poly, readout_eval, simulate_state,
    theorem1_bounds, BoundParams, MetricTensor, ReadoutModel, TimeSeries,
};
pub use motifs::{
    compare_motifs, extract_motifs, predict_cycle, predict_cycle_periodic, predict_random,
    predict_symmetric, represent, MotifComparison, MotifPrediction, MotifSet, RepresentationVector,
};
pub use richness::{
    coefficient_cloud, relative_area, sweep, weighted_relative_area, CoefficientCloud, CoefficientScaling,
    GridSpec, RichnessReport, SweepConfig,
};
pub use util::format_real;
