//! Motif richness from the spread of motif Fourier coefficients.

mod measure;
mod sweep;

pub use measure::{
    area_measures, coefficient_cloud, relative_area, weighted_relative_area, AreaMeasures, CoefficientCloud,
    CoefficientScaling, GridSpec,
};
pub use sweep::{
    aggregate, default_trials, richness_trial, sweep, write_sweep_csv, RichnessAggregate, RichnessReport, Stat,
    SweepConfig, SWEEP_HEADER,
};
