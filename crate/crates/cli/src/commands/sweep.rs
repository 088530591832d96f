use resmotif::richness::{aggregate, write_sweep_csv};
use resmotif::{sweep, Distribution, InputKind, Regime, SweepConfig};

use super::as_usage;
use crate::args::{default_nu_grid, CommonArgs, Settings};
use crate::error::{usage, CliResult};
use crate::output::OutDir;

/// Cycle reservoir with three aperiodic inputs, plus a random reservoir.
fn default_configs() -> Vec<(Regime, InputKind)> {
    vec![
        (Regime::CyclePermutation, InputKind::OnesPiSigns),
        (Regime::CyclePermutation, InputKind::OnesESigns),
        (Regime::CyclePermutation, InputKind::OnesRandomSigns),
        (Regime::RandomIid(Distribution::Gaussian), InputKind::OnesPiSigns),
    ]
}

pub fn run(args: &CommonArgs) -> CliResult<()> {
    let s = Settings::load(args)?;
    let n = s.n()?;
    let nus = match (s.nu_grid()?, s.has_nu()?) {
        (Some(_), true) => return usage("give either --nu or --nu-grid"),
        (Some(g), false) => g,
        (None, true) => vec![s.nu_or(1.0)?],
        (None, false) => default_nu_grid(),
    };
    let configs = match (s.regimes()?, s.inputs()?) {
        (None, None) => default_configs(),
        (regimes, inputs) => {
            let regimes = regimes.unwrap_or_else(|| vec![Regime::CyclePermutation]);
            let inputs = inputs.unwrap_or_else(|| vec![InputKind::OnesPiSigns]);
            regimes.iter().flat_map(|&r| inputs.iter().map(move |&i| (r, i))).collect()
        }
    };
    let tau = s.tau(n)?;
    if tau % n != 0 {
        return usage("sweeps need a horizon that is a multiple of N");
    }
    let mut config = SweepConfig::new(n, nus, configs, s.seed()?);
    config.ell = tau / n;
    config.trials = s.trials()?;
    config.threshold_ratio = s.threshold()?;
    config.normalize_input = s.normalize()?;
    config.scaling = s.scaling()?;
    config.validate().map_err(as_usage)?;
    let out = OutDir::create(s.out()?)?;

    let reports = sweep(&config)?;
    out.write("sweep.csv", |w| write_sweep_csv(&reports, w))?;
    for g in aggregate(&reports) {
        println!(
            "nu {:.3} {:>10} {:>18}  trials {:>2}  area {:.3e}  weighted {:.3e}",
            g.nu,
            g.regime.to_string(),
            g.input_kind.to_string(),
            g.trials,
            g.relative_area.mean,
            g.weighted_relative_area.mean
        );
    }
    Ok(())
}
