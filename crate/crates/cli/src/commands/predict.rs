use resmotif::motifs::{PredictionDetail, PredictionKind};
use resmotif::{
    build_metric_tensor, compare_motifs, extract_motifs, format_real, predict_cycle, predict_cycle_periodic,
    predict_random, predict_symmetric, MotifComparison, MotifPrediction, RealVector, Regime,
};

use super::{as_usage, couplings};
use crate::args::{CommonArgs, Settings};
use crate::error::{usage, CliResult};
use crate::output::OutDir;

enum Outcome {
    Compared(MotifComparison),
    Reconstructed { residual: f64, tensor_max: f64 },
}

pub fn run(args: &CommonArgs) -> CliResult<()> {
    let s = Settings::load(args)?;
    let n = s.n()?;
    let (regime, input) = (s.regime()?, s.input()?);
    let nu = s.nu_or(0.995)?;
    let tau = s.tau(n)?;
    let trials = s.trials()?.unwrap_or(1);
    let (seed, threshold, normalize) = (s.seed()?, s.threshold()?, s.normalize()?);

    if regime == Regime::CyclePermutation && tau % n != 0 {
        return usage(format!("cycle predictions need a horizon that is a multiple of N (tau {tau}, N {n})"));
    }
    let out = OutDir::create(s.out()?)?;

    let mut first: Option<MotifPrediction> = None;
    let mut outcomes = Vec::with_capacity(trials);
    for trial in 0..trials {
        let (w_mat, w) = couplings(n, regime, nu, input, normalize, seed.for_trial(0, trial))?;
        let q = build_metric_tensor(&w_mat, &w, tau)?;
        let prediction = match regime {
            Regime::RandomIid(_) => predict_random(n, nu, w.norm(), tau),
            Regime::SymmetricWigner(_) => predict_symmetric(&w_mat, &w, tau),
            Regime::CyclePermutation => match input.period() {
                Some(p) => predict_cycle_periodic(n, nu, p, &RealVector::new(w[..p].to_vec())?, tau / n),
                None => predict_cycle(n, nu, &w, tau / n),
            },
        }
        .map_err(as_usage)?;
        let outcome = match &prediction.detail {
            PredictionDetail::Symmetric { reconstruction, .. } => Outcome::Reconstructed {
                residual: reconstruction.max_abs_diff(q.matrix()),
                tensor_max: q.matrix().max_abs(),
            },
            _ => Outcome::Compared(compare_motifs(&extract_motifs(&q, threshold)?, &prediction)?),
        };
        outcomes.push(outcome);
        first.get_or_insert(prediction);
    }
    let prediction = first.expect("at least one trial");

    out.write("predicted_motifs.csv", |w| prediction.write_csv(w))?;
    out.write("predicted_weights.csv", |w| {
        match &prediction.detail {
            PredictionDetail::Symmetric { components, .. } => {
                writeln!(w, "index,weight,sigma,w_tilde,magnitude")?;
                for (i, c) in components.iter().enumerate() {
                    writeln!(
                        w,
                        "{},{},{},{},{}",
                        i + 1,
                        format_real(prediction.weights[i]),
                        format_real(c.sigma),
                        format_real(c.w_tilde),
                        format_real(c.magnitude)
                    )?;
                }
            }
            _ => {
                writeln!(w, "index,weight")?;
                for (i, wt) in prediction.weights.iter().enumerate() {
                    writeln!(w, "{},{}", i + 1, format_real(*wt))?;
                }
            }
        }
        Ok(())
    })?;
    out.write("comparison.csv", |w| {
        if prediction.kind == PredictionKind::Symmetric {
            writeln!(w, "trial,reconstruction_residual,tensor_max")?;
        } else {
            writeln!(w, "trial,index,cluster,alignment,weight_empirical,weight_predicted,relative_weight_error")?;
        }
        for (t, o) in outcomes.iter().enumerate() {
            match o {
                Outcome::Reconstructed { residual, tensor_max } => {
                    writeln!(w, "{t},{},{}", format_real(*residual), format_real(*tensor_max))?
                }
                Outcome::Compared(cmp) => {
                    for m in &cmp.matches {
                        writeln!(
                            w,
                            "{t},{},{},{},{},{},{}",
                            m.index + 1,
                            m.cluster + 1,
                            format_real(m.alignment),
                            format_real(m.weight_empirical),
                            format_real(m.weight_predicted),
                            format_real(m.relative_weight_error)
                        )?;
                    }
                }
            }
        }
        Ok(())
    })?;

    for (t, o) in outcomes.iter().enumerate().take(5) {
        match o {
            Outcome::Reconstructed { residual, .. } => println!("trial {t}: reconstruction residual {residual:.3e}"),
            Outcome::Compared(cmp) => {
                let top = &cmp.matches[..cmp.matches.len().min(4)];
                let align: Vec<String> = top.iter().map(|m| format!("{:.4}", m.alignment)).collect();
                println!(
                    "trial {t}: top alignments [{}], max weight error {:.3e} over {} motifs",
                    align.join(", "),
                    cmp.max_weight_error(),
                    cmp.matches.len()
                );
            }
        }
    }
    Ok(())
}
