use resmotif::kernel::{measure_bound, random_series, sample_initial_state, MetricTensor};
use resmotif::motifs::PSD_TOL;
use resmotif::numerics::{dot, numerical_rank};
use resmotif::{
    build_metric_tensor, format_real, kernel_eval, largest_singular_value, simulate_state, sym_eig, BoundParams,
    Distribution, InputKind, RealVector, Regime, Seed,
};

use super::couplings;
use crate::args::{Settings, VerifyArgs};
use crate::error::{usage, CliError, CliResult};
use crate::output::OutDir;

const KERNEL_TOL: f64 = 1e-10;
const DECAY_TOL: f64 = 1e-9;
const RANK_TOL: f64 = 1e-10;
const PAIRS_PER_INSTANCE: u64 = 10;

struct Property {
    name: &'static str,
    limit: String,
    instances: usize,
    failures: Vec<String>,
    worst: f64,
}

impl Property {
    fn new(name: &'static str, limit: impl Into<String>) -> Self {
        Self { name, limit: limit.into(), instances: 0, failures: Vec::new(), worst: f64::NEG_INFINITY }
    }

    fn record(&mut self, value: f64, ok: bool, context: impl FnOnce() -> String) {
        self.instances += 1;
        self.worst = self.worst.max(value);
        if !ok {
            self.failures.push(format!("{}\nvalue = {}\n", context(), format_real(value)));
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Instance {
    seed: Seed,
    regime: Regime,
    n: usize,
    tau: usize,
    nu: f64,
}

impl Instance {
    fn draw(index: usize, base: Seed, max_n: usize) -> Self {
        let seed = base.for_trial(0, index);
        let bits = seed.derive(99).0;
        let regime = match index % 3 {
            0 => Regime::RandomIid(Distribution::Gaussian),
            1 => Regime::SymmetricWigner(Distribution::Gaussian),
            _ => Regime::CyclePermutation,
        };
        let n = 1 + (bits % max_n as u64) as usize;
        let tau = n + ((bits >> 16) % (n as u64 + 1)) as usize;
        let nu = 0.5 + 0.499 * ((bits >> 40) as f64 / (1u64 << 24) as f64);
        Self { seed, regime, n, tau, nu }
    }

    fn describe(&self) -> String {
        format!(
            "seed = {}\nregime = {}\ninput = gaussian\nN = {}\ntau = {}\nnu = {}",
            self.seed.0, self.regime, self.n, self.tau, self.nu
        )
    }
}

fn psd_ratio(spectrum: &[f64]) -> f64 {
    let max = spectrum[0];
    let min = spectrum[spectrum.len() - 1];
    if max > 0.0 {
        min / max
    } else if min < 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let s = Settings::load(&args.common)?;
    let base = s.seed()?;
    let count = s.trials()?.unwrap_or(30);
    let max_n = s.n_given()?.unwrap_or(60);
    let out = OutDir::create(s.out()?)?;

    let mut kernel = Property::new("kernel-state-equivalence", format!("{KERNEL_TOL:e} relative"));
    let mut symmetry = Property::new("tensor-symmetry", "0");
    let mut psd = Property::new("tensor-psd", format!("min eigenvalue >= -{PSD_TOL:e} max"));
    let mut rank = Property::new("tensor-rank", "rank <= N");
    let mut decay = Property::new("decay-bound", format!("{DECAY_TOL:e}"));

    for k in 0..count {
        let inst = Instance::draw(k, base, max_n);
        let (w_mat, w) = couplings(inst.n, inst.regime, inst.nu, InputKind::Gaussian, true, inst.seed)?;
        let mut q = build_metric_tensor(&w_mat, &w, inst.tau)?;
        if args.inject_asymmetric && k == 0 {
            let mut m = q.matrix().clone();
            let bump = m.max_abs().max(1.0);
            if inst.tau > 1 {
                m[(0, 1)] += bump;
            }
            m[(0, 0)] = -bump;
            q = MetricTensor::from_matrix_unchecked(m);
        }

        for p in 0..PAIRS_PER_INSTANCE {
            let u = random_series(inst.tau, 1.0, inst.seed.derive(10 + 2 * p))?;
            let v = random_series(inst.tau, 1.0, inst.seed.derive(11 + 2 * p))?;
            let kq = kernel_eval(&q, &u, &v)?;
            let zero = RealVector::zeros(inst.n);
            let ks = dot(&simulate_state(&w_mat, &w, &u, &zero)?, &simulate_state(&w_mat, &w, &v, &zero)?);
            let err = (kq - ks).abs() / kq.abs().max(1.0);
            kernel.record(err, err <= KERNEL_TOL, || format!("{}\npair = {p}", inst.describe()));
        }

        let asym = q.matrix().asymmetry();
        symmetry.record(asym, asym == 0.0, || inst.describe());

        let (ratio, spectrum) = match sym_eig(q.matrix()) {
            Ok(eig) => (psd_ratio(&eig.eigenvalues), Some(eig.eigenvalues.into_inner())),
            Err(resmotif::Error::Contract(_)) => (f64::NEG_INFINITY, None),
            Err(e) => return Err(e.into()),
        };
        psd.record(-ratio, ratio >= -PSD_TOL, || inst.describe());
        let r = match &spectrum {
            Some(sp) if ratio >= -PSD_TOL => numerical_rank(sp, RANK_TOL).ok(),
            _ => None,
        };
        let rank_excess = r.map_or(f64::INFINITY, |r| r as f64 - inst.n as f64);
        rank.record(rank_excess, rank_excess <= 0.0, || format!("{}\nrank = {r:?}", inst.describe()));

        let excess = q.decay_excess(inst.nu, w.norm().powi(2));
        decay.record(excess, excess <= DECAY_TOL, || inst.describe());
    }

    let bound = insensitivity_suite(&s, args)?;
    let props = [kernel, symmetry, psd, rank, decay, bound];

    out.write("verify.csv", |w| {
        writeln!(w, "property,instances,failures,worst,limit,status")?;
        for p in &props {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                p.name,
                p.instances,
                p.failures.len(),
                format_real(p.worst),
                p.limit,
                if p.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    })?;

    let mut failed = 0;
    for p in &props {
        if p.passed() {
            println!("PASS {} ({} instances, worst {:.3e})", p.name, p.instances, p.worst);
        } else {
            failed += 1;
            println!("FAIL {} ({} of {} instances)", p.name, p.failures.len(), p.instances);
            for (i, dump) in p.failures.iter().enumerate() {
                let path = out.write(&format!("failures/{}-{i}.txt", p.name), |w| {
                    w.write_all(dump.as_bytes())?;
                    Ok(())
                })?;
                if i == 0 {
                    eprintln!("{}: first failing instance\n{dump}written to {}", p.name, path.display());
                }
            }
        }
    }
    if failed > 0 {
        return Err(CliError::PropertyFailure { failed });
    }
    Ok(())
}

fn insensitivity_suite(s: &Settings, args: &VerifyArgs) -> CliResult<Property> {
    let n = s.n_given()?.unwrap_or(50);
    let tau = s.tau_given()?.unwrap_or(300);
    let nu = s.nu_or(0.9)?;
    let zeta = s.zeta(args.zeta)?.unwrap_or(0.95);
    let trials = 50;
    if !(nu < zeta && zeta < 1.0) {
        return usage(format!("need nu < zeta < 1 (nu {nu}, zeta {zeta})"));
    }
    let regime = match s.regimes()?.as_deref() {
        None => Regime::RandomIid(Distribution::Gaussian),
        Some([r]) => *r,
        Some(_) => return usage("verify takes a single --regime"),
    };
    let base = s.seed()?.derive(0x7431);
    let mut prop = Property::new("initial-state-insensitivity", "lower <= eps <= upper");
    for t in 0..trials {
        let seed = base.for_trial(0, t);
        let (w_mat, w) = couplings(n, regime, nu, InputKind::Gaussian, true, seed)?;
        let measured_nu = largest_singular_value(&w_mat)?;
        let params = BoundParams {
            u_bound: 1.0,
            w_bound: 1.0,
            zeta,
            c: BoundParams::min_c(1.0, 1.0, zeta, measured_nu),
            tau,
        };
        let u = random_series(tau, 1.0, seed.derive(2))?;
        let v = random_series(tau, 1.0, seed.derive(3))?;
        let x = sample_initial_state(n, &params, seed.derive(4))?;
        let trial = measure_bound(&w_mat, &w, &u, &v, &x, &params)?;
        // signed distance outside the interval, scaled by its width
        let width = (trial.upper - trial.lower).max(f64::MIN_POSITIVE);
        let excess = (trial.lower - trial.epsilon).max(trial.epsilon - trial.upper) / width;
        prop.record(excess, trial.holds(), || {
            format!(
                "seed = {}\nregime = {regime}\nN = {n}\ntau = {tau}\nnu = {nu}\nzeta = {zeta}\nepsilon = {}\nlower = {}\nupper = {}",
                seed.0,
                format_real(trial.epsilon),
                format_real(trial.lower),
                format_real(trial.upper)
            )
        });
    }
    Ok(prop)
}
