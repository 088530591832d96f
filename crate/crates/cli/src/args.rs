use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use resmotif::{Distribution, InputKind, Regime, Seed};

use crate::error::{usage, CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "resmotif", version, about = "Motif analysis of linear reservoir temporal kernels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract motifs and weights of the metric tensor.
    Motifs(CommonArgs),
    /// Compare extracted motifs with the closed-form prediction for the regime.
    Predict(CommonArgs),
    /// Sweep the scaling target and measure motif richness.
    Sweep(CommonArgs),
    /// Run the randomized property suites.
    Verify(VerifyArgs),
    /// Evaluate kernels and readouts on time-series files.
    Kernel(KernelArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Flat `key = value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// random, symmetric or cycle (comma separated list for sweeps).
    #[arg(long)]
    pub regime: Option<String>,
    /// Entry distribution of random couplings: gaussian, uniform or signs.
    #[arg(long = "reservoir-dist")]
    pub reservoir_dist: Option<String>,
    /// Input coupling kind (comma separated list for sweeps).
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub nu: Option<f64>,
    /// lo:step:hi, inclusive.
    #[arg(long = "nu-grid")]
    pub nu_grid: Option<String>,
    /// Horizon as a multiple of N.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub tau: Option<usize>,
    #[arg(long)]
    pub period: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Scale the input coupling to unit norm (true/false).
    #[arg(long)]
    pub normalize: Option<bool>,
    /// Fourier coefficient scaling for richness: unitary or unnormalized.
    #[arg(long)]
    pub scaling: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Corrupt one tensor with an asymmetric perturbation (negative control).
    #[arg(long = "inject-asymmetric", hide = true)]
    pub inject_asymmetric: bool,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Time-series file, one value per line, most recent first.
    #[arg(long)]
    pub u: PathBuf,
    #[arg(long)]
    pub v: Option<PathBuf>,
    /// Polynomial kernel offset.
    #[arg(long)]
    pub offset: Option<f64>,
    /// Polynomial kernel degree.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Readout file with lines `beta, path`.
    #[arg(long)]
    pub readout: Option<PathBuf>,
    #[arg(long)]
    pub bias: Option<f64>,
    /// Also write the metric tensor to q.csv.
    #[arg(long = "dump-tensor")]
    pub dump_tensor: bool,
}

/// Flag values merged with an optional config file.
pub struct Settings {
    args: CommonArgs,
    file: BTreeMap<String, String>,
}

fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return usage(format!("config line {}: expected `key = value`", i + 1));
        };
        let key = k.trim().replace('_', "-");
        let key = if key.eq_ignore_ascii_case("n") { "N".to_string() } else { key };
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

const KNOWN_KEYS: &[&str] = &[
    "regime", "reservoir-dist", "input", "N", "nu", "nu-grid", "ell", "tau", "period", "trials", "seed",
    "threshold", "normalize", "scaling", "out", "zeta",
];

impl Settings {
    pub fn load(args: &CommonArgs) -> CliResult<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        if let Some(k) = file.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return usage(format!("unknown config key '{k}'"));
        }
        Ok(Self { args: args.clone(), file })
    }

    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config value for '{key}' is invalid: '{raw}'"))),
        }
    }

    pub fn n(&self) -> CliResult<usize> {
        let n = self.pick(self.args.n, "N")?.unwrap_or(100);
        if n == 0 {
            return usage("--N must be positive");
        }
        Ok(n)
    }

    pub fn n_given(&self) -> CliResult<Option<usize>> {
        match self.pick(self.args.n, "N")? {
            Some(0) => usage("--N must be positive"),
            n => Ok(n),
        }
    }

    pub fn nu_or(&self, default: f64) -> CliResult<f64> {
        Ok(self.pick(self.args.nu, "nu")?.unwrap_or(default))
    }

    pub fn has_nu(&self) -> CliResult<bool> {
        Ok(self.pick(self.args.nu, "nu")?.is_some())
    }

    pub fn nu_grid(&self) -> CliResult<Option<Vec<f64>>> {
        match self.pick(self.args.nu_grid.clone(), "nu-grid")? {
            None => Ok(None),
            Some(spec) => parse_grid(&spec).map(Some),
        }
    }

    pub fn ell(&self) -> CliResult<Option<usize>> {
        self.pick(self.args.ell, "ell")
    }

    pub fn tau_given(&self) -> CliResult<Option<usize>> {
        self.pick(self.args.tau, "tau")
    }

    /// Horizon from `--tau`, else `ell·N` (default `ell = 2`).
    pub fn tau(&self, n: usize) -> CliResult<usize> {
        let tau = match (self.tau_given()?, self.ell()?) {
            (Some(t), Some(l)) if t != l * n => return usage(format!("--tau {t} conflicts with --ell {l} at N = {n}")),
            (Some(t), _) => t,
            (None, Some(l)) => l * n,
            (None, None) => 2 * n,
        };
        if tau == 0 {
            return usage("horizon must be positive");
        }
        Ok(tau)
    }

    pub fn trials(&self) -> CliResult<Option<usize>> {
        let t = self.pick(self.args.trials, "trials")?;
        if t == Some(0) {
            return usage("--trials must be positive");
        }
        Ok(t)
    }

    pub fn seed(&self) -> CliResult<Seed> {
        Ok(Seed(self.pick(self.args.seed, "seed")?.unwrap_or(0)))
    }

    pub fn threshold(&self) -> CliResult<f64> {
        let t = self.pick(self.args.threshold, "threshold")?.unwrap_or(resmotif::motifs::DEFAULT_THRESHOLD_RATIO);
        if !(t > 0.0 && t <= 1.0) {
            return usage("--threshold must lie in (0, 1]");
        }
        Ok(t)
    }

    pub fn normalize(&self) -> CliResult<bool> {
        Ok(self.pick(self.args.normalize, "normalize")?.unwrap_or(true))
    }

    pub fn scaling(&self) -> CliResult<resmotif::CoefficientScaling> {
        match self.pick(self.args.scaling.clone(), "scaling")? {
            None => Ok(Default::default()),
            Some(s) => s.parse().map_err(|e: resmotif::Error| CliError::Usage(e.to_string())),
        }
    }

    pub fn out(&self) -> CliResult<PathBuf> {
        Ok(self.pick(self.args.out.clone(), "out")?.unwrap_or_else(|| PathBuf::from(".")))
    }

    pub fn zeta(&self, flag: Option<f64>) -> CliResult<Option<f64>> {
        self.pick(flag, "zeta")
    }

    fn distribution(&self) -> CliResult<Distribution> {
        match self.pick(self.args.reservoir_dist.clone(), "reservoir-dist")? {
            None => Ok(Distribution::Gaussian),
            Some(s) => s.parse().map_err(|e: resmotif::Error| CliError::Usage(e.to_string())),
        }
    }

    fn period(&self) -> CliResult<Option<usize>> {
        self.pick(self.args.period, "period")
    }

    /// Regimes listed by `--regime`, if any.
    pub fn regimes(&self) -> CliResult<Option<Vec<Regime>>> {
        let dist = self.distribution()?;
        let Some(raw) = self.pick(self.args.regime.clone(), "regime")? else { return Ok(None) };
        let mut out = Vec::new();
        for token in raw.split(',').map(str::trim) {
            out.push(match token {
                "random" => Regime::RandomIid(dist),
                "symmetric" => Regime::SymmetricWigner(dist),
                "cycle" => Regime::CyclePermutation,
                other => return usage(format!("unknown regime '{other}' (random, symmetric, cycle)")),
            });
        }
        Ok(Some(out))
    }

    pub fn inputs(&self) -> CliResult<Option<Vec<InputKind>>> {
        let period = self.period()?;
        let Some(raw) = self.pick(self.args.input.clone(), "input")? else { return Ok(None) };
        raw.split(',')
            .map(|t| InputKind::parse(t.trim(), period).map_err(|e| CliError::Usage(e.to_string())))
            .collect::<CliResult<Vec<_>>>()
            .map(Some)
    }

    pub fn regime(&self) -> CliResult<Regime> {
        match self.regimes()?.as_deref() {
            None => Ok(Regime::RandomIid(self.distribution()?)),
            Some([r]) => Ok(*r),
            Some(_) => usage("this command takes a single --regime"),
        }
    }

    pub fn input(&self) -> CliResult<InputKind> {
        match self.inputs()?.as_deref() {
            None => Ok(InputKind::Gaussian),
            Some([k]) => Ok(*k),
            Some(_) => usage("this command takes a single --input"),
        }
    }
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Parses `lo:step:hi` into an inclusive ascending grid.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, step, hi] = parts.as_slice() else {
        return usage(format!("nu grid '{spec}' must look like lo:step:hi"));
    };
    let num = |s: &str| -> CliResult<f64> {
        s.trim().parse().map_err(|_| CliError::Usage(format!("'{s}' in nu grid is not a number")))
    };
    let (lo, step, hi) = (num(lo)?, num(step)?, num(hi)?);
    if !(step > 0.0) || hi < lo {
        return usage("nu grid needs step > 0 and lo <= hi");
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| round12(lo + k as f64 * step)).collect())
}

/// Grid values always present in a default sweep.
pub const PANEL_NUS: [f64; 4] = [0.96, 0.99, 0.996, 1.0];

pub fn default_nu_grid() -> Vec<f64> {
    let mut grid = parse_grid("0.90:0.005:1.00").expect("static grid");
    grid.extend(PANEL_NUS);
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    grid
}
