use std::io::Write;

use rayon::prelude::*;

use crate::coupling::{
    generate_input, generate_reservoir, InputCouplingSpec, InputKind, Regime, ReservoirSpec, Seed,
};
use crate::error::{ensure, Result};
use crate::kernel::build_metric_tensor;
use crate::motifs::{extract_motifs, DEFAULT_THRESHOLD_RATIO};
use crate::util::format_real;

use super::measure::{area_measures, coefficient_cloud, CoefficientScaling, GridSpec};

/// Richness measures of one `(ν, regime, input, trial)` run.
#[derive(Clone, Debug, PartialEq)]
pub struct RichnessReport {
    pub nu: f64,
    pub regime: Regime,
    pub input_kind: InputKind,
    pub trial: usize,
    pub seed: Seed,
    pub n_motifs: usize,
    pub cells_visited: usize,
    pub relative_area: f64,
    pub weighted_relative_area: f64,
    pub discarded_points: usize,
}

/// Trial count used when none is configured: one per random ingredient
/// level (1 when deterministic, 30 with one random coupling, 60 with two).
pub fn default_trials(regime: Regime, input: InputKind) -> usize {
    match (regime.is_random(), input.is_random()) {
        (false, false) => 1,
        (true, true) => 60,
        _ => 30,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub n: usize,
    pub nus: Vec<f64>,
    /// Horizon in units of `N`.
    pub ell: usize,
    pub configs: Vec<(Regime, InputKind)>,
    pub trials: Option<usize>,
    pub seed: Seed,
    pub threshold_ratio: f64,
    pub normalize_input: bool,
    pub scaling: CoefficientScaling,
    pub grid: GridSpec,
}

impl SweepConfig {
    pub fn new(n: usize, nus: Vec<f64>, configs: Vec<(Regime, InputKind)>, seed: Seed) -> Self {
        Self {
            n,
            nus,
            ell: 2,
            configs,
            trials: None,
            seed,
            threshold_ratio: DEFAULT_THRESHOLD_RATIO,
            normalize_input: true,
            scaling: CoefficientScaling::default(),
            grid: GridSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.n >= 1 && self.ell >= 1, "N and the horizon multiple must be positive");
        ensure!(!self.nus.is_empty(), "the nu grid is empty");
        for &nu in &self.nus {
            ensure!(nu > 0.0 && nu <= 1.0, "nu must lie in (0, 1], got {nu}");
        }
        ensure!(!self.configs.is_empty(), "no regime/input pairs configured");
        ensure!(self.trials != Some(0), "trial count must be positive");
        self.grid.validate()
    }

    fn trials_for(&self, regime: Regime, input: InputKind) -> usize {
        self.trials.unwrap_or_else(|| default_trials(regime, input))
    }
}

/// Runs a single trial.
pub fn richness_trial(
    n: usize,
    nu: f64,
    regime: Regime,
    input_kind: InputKind,
    config: &SweepConfig,
    trial: usize,
    seed: Seed,
) -> Result<RichnessReport> {
    let w_mat = generate_reservoir(&ReservoirSpec::new(n, regime, nu)?, seed.derive(0))?;
    let w = generate_input(&InputCouplingSpec::new(n, input_kind, config.normalize_input)?, seed.derive(1))?;
    let q = build_metric_tensor(&w_mat, &w, config.ell * n)?;
    let set = extract_motifs(&q, config.threshold_ratio)?;
    let cloud = coefficient_cloud(&set, config.scaling)?;
    let m = area_measures(&cloud, &config.grid)?;
    Ok(RichnessReport {
        nu,
        regime,
        input_kind,
        trial,
        seed,
        n_motifs: set.len(),
        cells_visited: m.cells_visited,
        relative_area: m.relative_area,
        weighted_relative_area: m.weighted_relative_area,
        discarded_points: m.discarded_points,
    })
}

/// All trials over the `ν` grid, ordered by `(ν index, config index, trial)`.
///
/// Trials run in parallel; each draws from `seed.for_trial(ν index, trial)`
/// so results do not depend on scheduling.
pub fn sweep(config: &SweepConfig) -> Result<Vec<RichnessReport>> {
    config.validate()?;
    let mut jobs = Vec::new();
    for (ni, &nu) in config.nus.iter().enumerate() {
        for (ci, &(regime, input)) in config.configs.iter().enumerate() {
            for trial in 0..config.trials_for(regime, input) {
                jobs.push((ni, ci, trial, nu, regime, input));
            }
        }
    }
    let mut out: Vec<((usize, usize, usize), RichnessReport)> = jobs
        .into_par_iter()
        .map(|(ni, ci, trial, nu, regime, input)| {
            let seed = config.seed.for_trial(ni, trial);
            richness_trial(config.n, nu, regime, input, config, trial, seed).map(|r| ((ni, ci, trial), r))
        })
        .collect::<Result<_>>()?;
    out.sort_by_key(|(key, _)| *key);
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

/// Mean and sample standard deviation of a quantity across trials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Stat {
        let n = values.len() as f64;
        if values.is_empty() {
            return Stat { mean: f64::NAN, std: f64::NAN };
        }
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Stat { mean, std }
    }
}

/// Trial statistics of one `(ν, regime, input)` group.
#[derive(Clone, Debug, PartialEq)]
pub struct RichnessAggregate {
    pub nu: f64,
    pub regime: Regime,
    pub input_kind: InputKind,
    pub trials: usize,
    pub n_motifs: Stat,
    pub cells_visited: Stat,
    pub relative_area: Stat,
    pub weighted_relative_area: Stat,
    pub discarded_points: Stat,
}

/// Groups consecutive reports sharing `(ν, regime, input)`.
pub fn aggregate(reports: &[RichnessReport]) -> Vec<RichnessAggregate> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < reports.len() {
        let head = &reports[start];
        let mut end = start + 1;
        while end < reports.len()
            && reports[end].nu == head.nu
            && reports[end].regime == head.regime
            && reports[end].input_kind == head.input_kind
        {
            end += 1;
        }
        let group = &reports[start..end];
        let stat = |f: &dyn Fn(&RichnessReport) -> f64| Stat::of(&group.iter().map(f).collect::<Vec<_>>());
        out.push(RichnessAggregate {
            nu: head.nu,
            regime: head.regime,
            input_kind: head.input_kind,
            trials: group.len(),
            n_motifs: stat(&|r| r.n_motifs as f64),
            cells_visited: stat(&|r| r.cells_visited as f64),
            relative_area: stat(&|r| r.relative_area),
            weighted_relative_area: stat(&|r| r.weighted_relative_area),
            discarded_points: stat(&|r| r.discarded_points as f64),
        });
        start = end;
    }
    out
}

pub const SWEEP_HEADER: &str =
    "nu,regime,input_kind,trial,n_motifs,cells_visited,relative_area,weighted_relative_area,discarded_points";

/// Writes one row per trial; groups with several trials are followed by a
/// `mean` and a `std` row.
pub fn write_sweep_csv(reports: &[RichnessReport], mut out: impl Write) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    let groups = aggregate(reports);
    let mut idx = 0;
    for g in &groups {
        for r in &reports[idx..idx + g.trials] {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                format_real(r.nu),
                r.regime,
                r.input_kind,
                r.trial,
                r.n_motifs,
                r.cells_visited,
                format_real(r.relative_area),
                format_real(r.weighted_relative_area),
                r.discarded_points
            )?;
        }
        idx += g.trials;
        if g.trials > 1 {
            let pick: [(&str, fn(&Stat) -> f64); 2] = [("mean", |s| s.mean), ("std", |s| s.std)];
            for (label, f) in pick {
                writeln!(
                    out,
                    "{},{},{},{label},{},{},{},{},{}",
                    format_real(g.nu),
                    g.regime,
                    g.input_kind,
                    format_real(f(&g.n_motifs)),
                    format_real(f(&g.cells_visited)),
                    format_real(f(&g.relative_area)),
                    format_real(f(&g.weighted_relative_area)),
                    format_real(f(&g.discarded_points))
                )?;
            }
        }
    }
    Ok(())
}
