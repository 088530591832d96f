use std::fs;
use std::path::Path;

use resmotif::{
    build_metric_tensor, format_real, kernel_eval, kernel_poly, readout_eval, ReadoutModel, TimeSeries,
};

use super::couplings;
use crate::args::{KernelArgs, Settings};
use crate::error::{usage, CliError, CliResult};
use crate::output::OutDir;

fn read_series(path: &Path) -> CliResult<TimeSeries> {
    TimeSeries::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Lines `beta, path`; relative paths resolve against the readout file.
fn read_readout(path: &Path, bias: f64) -> CliResult<ReadoutModel> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read readout {}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut supports = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((beta, file)) = line.split_once(',') else {
            return usage(format!("{} line {}: expected `beta, path`", path.display(), i + 1));
        };
        let beta: f64 = beta
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{} line {}: bad coefficient", path.display(), i + 1)))?;
        supports.push((read_series(&dir.join(file.trim()))?, beta));
    }
    Ok(ReadoutModel::new(supports, bias)?)
}

pub fn run(args: &KernelArgs) -> CliResult<()> {
    let s = Settings::load(&args.common)?;
    let n = s.n()?;
    let (regime, input) = (s.regime()?, s.input()?);
    let nu = s.nu_or(0.995)?;
    let u = read_series(&args.u)?;
    let v = match &args.v {
        Some(p) => read_series(p)?,
        None => u.clone(),
    };
    let tau = u.horizon();
    if let Some(t) = s.tau_given()? {
        if t != tau {
            return usage(format!("--tau {t} differs from the series horizon {tau}"));
        }
    }
    let (w_mat, w) = couplings(n, regime, nu, input, s.normalize()?, s.seed()?.for_trial(0, 0))?;
    let q = build_metric_tensor(&w_mat, &w, tau)?;
    let mut rows = vec![("kernel", kernel_eval(&q, &u, &v).map_err(map_horizon)?)];
    if args.degree.is_some() || args.offset.is_some() {
        let degree = args.degree.unwrap_or(1);
        if degree == 0 {
            return usage("--degree must be at least 1");
        }
        rows.push(("polynomial", kernel_poly(&q, &u, &v, args.offset.unwrap_or(0.0), degree)?));
    }
    if let Some(path) = &args.readout {
        let model = read_readout(path, args.bias.unwrap_or(0.0))?;
        rows.push(("readout", readout_eval(&model, &q, &v).map_err(map_horizon)?));
    }

    let out = OutDir::create(s.out()?)?;
    out.write("kernel.csv", |w| {
        writeln!(w, "quantity,value")?;
        for (name, value) in &rows {
            writeln!(w, "{name},{}", format_real(*value))?;
        }
        Ok(())
    })?;
    if args.dump_tensor {
        out.write("q.csv", |w| q.write_csv(w))?;
    }
    for (name, value) in &rows {
        println!("{name} = {value:.17e}");
    }
    Ok(())
}

fn map_horizon(e: resmotif::Error) -> CliError {
    match e {
        resmotif::Error::Contract(msg) => CliError::Usage(msg),
        other => other.into(),
    }
}
