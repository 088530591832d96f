use resmotif::richness::Stat;
use resmotif::{build_metric_tensor, extract_motifs, format_real, MotifSet, Seed};

use super::couplings;
use crate::args::{CommonArgs, Settings};
use crate::error::CliResult;
use crate::output::OutDir;

pub fn run(args: &CommonArgs) -> CliResult<()> {
    let s = Settings::load(args)?;
    let n = s.n()?;
    let (regime, input) = (s.regime()?, s.input()?);
    let nu = s.nu_or(0.995)?;
    let tau = s.tau(n)?;
    let trials = s.trials()?.unwrap_or(1);
    let (seed, threshold, normalize) = (s.seed()?, s.threshold()?, s.normalize()?);
    let out = OutDir::create(s.out()?)?;

    let mut sets: Vec<(Seed, MotifSet)> = Vec::with_capacity(trials);
    for trial in 0..trials {
        let trial_seed = seed.for_trial(0, trial);
        let (w_mat, w) = couplings(n, regime, nu, input, normalize, trial_seed)?;
        let q = build_metric_tensor(&w_mat, &w, tau)?;
        sets.push((trial_seed, extract_motifs(&q, threshold)?));
    }
    log::info!("{regime} / {input}: {} motifs in the first trial", sets[0].1.len());

    out.write("motifs.csv", |w| sets[0].1.write_csv(w))?;
    out.write("weights.csv", |w| {
        writeln!(w, "trial,index,weight,eigenvalue")?;
        for (t, (_, set)) in sets.iter().enumerate() {
            for (i, wt) in set.weights().iter().enumerate() {
                writeln!(w, "{t},{},{},{}", i + 1, format_real(*wt), format_real(wt * wt))?;
            }
        }
        Ok(())
    })?;
    if trials > 1 {
        let depth = sets.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
        out.write("weights_mean_std.csv", |w| {
            writeln!(w, "index,mean_eigenvalue,std_eigenvalue,mean_weight,std_weight")?;
            for i in 0..depth {
                let lambdas: Vec<f64> = sets.iter().map(|(_, s)| s.spectrum()[i].max(0.0)).collect();
                let weights: Vec<f64> = lambdas.iter().map(|l| l.sqrt()).collect();
                let (l, o) = (Stat::of(&lambdas), Stat::of(&weights));
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    i + 1,
                    format_real(l.mean),
                    format_real(l.std),
                    format_real(o.mean),
                    format_real(o.std)
                )?;
            }
            Ok(())
        })?;
    }
    println!("{} trial(s), {} motifs retained in trial 0", trials, sets[0].1.len());
    Ok(())
}
