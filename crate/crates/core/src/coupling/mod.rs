//! Seeded generation of dynamic couplings `W` and input couplings `w`.

mod irrational;
mod rng;

use std::fmt;
use std::str::FromStr;

pub use irrational::{irrational_bits, IrrationalConstant, IRRATIONAL_TABLE_BITS};
pub use rng::Seed;

use crate::error::{ensure, Error, Result};
use crate::numerics::{largest_singular_value, RealMatrix, RealVector};
pub(crate) use rng::Sampler;

/// Entry distribution for random couplings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// Standard normal `N(0, 1)`.
    Gaussian,
    /// Uniform on `[-1, 1)`.
    Uniform,
    /// `±1` with equal probability.
    RandomSigns,
}

impl Distribution {
    pub fn label(self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::Uniform => "uniform",
            Self::RandomSigns => "signs",
        }
    }

    fn sample(self, sampler: &mut Sampler) -> f64 {
        match self {
            Self::Gaussian => sampler.gaussian(),
            Self::Uniform => sampler.uniform(),
            Self::RandomSigns => sampler.sign(),
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "uniform" => Ok(Self::Uniform),
            "signs" | "ones-random-signs" => Ok(Self::RandomSigns),
            other => Err(Error::Parse(format!("unknown distribution '{other}'"))),
        }
    }
}

/// Structure of the dynamic coupling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// I.i.d. entries rescaled to the target largest singular value.
    RandomIid(Distribution),
    /// I.i.d. upper triangle mirrored (Wigner), rescaled the same way.
    SymmetricWigner(Distribution),
    /// `ν·P` with `P` the cyclic shift `1 → 2 → … → N → 1`.
    CyclePermutation,
}

impl Regime {
    /// Short name used on the command line and in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            Self::RandomIid(_) => "random",
            Self::SymmetricWigner(_) => "symmetric",
            Self::CyclePermutation => "cycle",
        }
    }

    pub fn is_random(self) -> bool {
        !matches!(self, Self::CyclePermutation)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RandomIid(d) | Self::SymmetricWigner(d) if *d != Distribution::Gaussian => {
                write!(f, "{}-{}", self.label(), d.label())
            }
            _ => f.write_str(self.label()),
        }
    }
}

/// Recipe for a dynamic coupling matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReservoirSpec {
    pub n: usize,
    pub regime: Regime,
    /// Target largest singular value, in `(0, 1]`.
    pub nu: f64,
}

impl ReservoirSpec {
    pub fn new(n: usize, regime: Regime, nu: f64) -> Result<Self> {
        let spec = Self { n, regime, nu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.n >= 1, "reservoir dimension must be at least 1");
        ensure!(
            self.nu > 0.0 && self.nu <= 1.0,
            "scaling target nu must lie in (0, 1], got {}",
            self.nu
        );
        Ok(())
    }
}

/// Construction of the input coupling vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InputKind {
    Gaussian,
    Uniform,
    OnesRandomSigns,
    /// All ones, signs from the binary expansion of π.
    OnesPiSigns,
    /// All ones, signs from the binary expansion of e.
    OnesESigns,
    /// Copies of `(1, 0, …, 0) ∈ R^period`.
    PeriodicBinary { period: usize },
    /// Copies of `(+1, −1, …, −1) ∈ R^period`.
    PeriodicBipolar { period: usize },
}

impl InputKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::Uniform => "uniform",
            Self::OnesRandomSigns => "ones-random-signs",
            Self::OnesPiSigns => "pi-signs",
            Self::OnesESigns => "e-signs",
            Self::PeriodicBinary { .. } => "periodic-binary",
            Self::PeriodicBipolar { .. } => "periodic-bipolar",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(self, Self::Gaussian | Self::Uniform | Self::OnesRandomSigns)
    }

    pub fn period(self) -> Option<usize> {
        match self {
            Self::PeriodicBinary { period } | Self::PeriodicBipolar { period } => Some(period),
            _ => None,
        }
    }

    /// Parses a CLI token; periodic kinds take their period separately.
    pub fn parse(token: &str, period: Option<usize>) -> Result<Self> {
        let need_period = || {
            period.ok_or_else(|| Error::Parse(format!("input kind '{token}' needs a period")))
        };
        Ok(match token {
            "gaussian" => Self::Gaussian,
            "uniform" => Self::Uniform,
            "ones-random-signs" => Self::OnesRandomSigns,
            "pi-signs" => Self::OnesPiSigns,
            "e-signs" => Self::OnesESigns,
            "periodic-binary" => Self::PeriodicBinary { period: need_period()? },
            "periodic-bipolar" => Self::PeriodicBipolar { period: need_period()? },
            other => return Err(Error::Parse(format!("unknown input kind '{other}'"))),
        })
    }
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.period() {
            Some(p) => write!(f, "{}-{p}", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

/// Recipe for an input coupling vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputCouplingSpec {
    pub n: usize,
    pub kind: InputKind,
    pub normalize_unit: bool,
}

impl InputCouplingSpec {
    pub fn new(n: usize, kind: InputKind, normalize_unit: bool) -> Result<Self> {
        let spec = Self { n, kind, normalize_unit };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.n >= 1, "input dimension must be at least 1");
        if let Some(p) = self.kind.period() {
            ensure!(p >= 1 && self.n % p == 0, "period {p} must divide N = {}", self.n);
        }
        if matches!(self.kind, InputKind::OnesPiSigns | InputKind::OnesESigns) {
            ensure!(
                self.n <= IRRATIONAL_TABLE_BITS,
                "sign patterns are tabulated for N <= {IRRATIONAL_TABLE_BITS}"
            );
        }
        Ok(())
    }
}

/// The `N×N` cyclic shift with `P[i+1][i] = 1` and `P[0][N−1] = 1`.
pub fn cycle_permutation(n: usize) -> RealMatrix {
    RealMatrix::from_fn(n, n, |i, j| if i == (j + 1) % n { 1.0 } else { 0.0 })
}

/// Draws a dynamic coupling matrix for `spec`.
pub fn generate_reservoir(spec: &ReservoirSpec, seed: Seed) -> Result<RealMatrix> {
    spec.validate()?;
    let n = spec.n;
    let raw = match spec.regime {
        Regime::CyclePermutation => return Ok(cycle_permutation(n).scaled(spec.nu)),
        Regime::RandomIid(dist) => {
            let mut s = Sampler::new(seed);
            RealMatrix::from_fn(n, n, |_, _| dist.sample(&mut s))
        }
        Regime::SymmetricWigner(dist) => {
            let mut s = Sampler::new(seed);
            let mut m = RealMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = dist.sample(&mut s);
                    m[(i, j)] = x;
                    m[(j, i)] = x;
                }
            }
            m
        }
    };
    let sigma = largest_singular_value(&raw)?;
    ensure!(sigma > 0.0, "sampled coupling is the zero matrix and cannot be rescaled");
    Ok(raw.scaled(spec.nu / sigma))
}

/// Draws (or constructs) an input coupling vector for `spec`.
pub fn generate_input(spec: &InputCouplingSpec, seed: Seed) -> Result<RealVector> {
    spec.validate()?;
    let n = spec.n;
    let mut s = Sampler::new(seed);
    let signs_from = |c: IrrationalConstant| -> Result<Vec<f64>> {
        Ok(irrational_bits(c, n)?.into_iter().map(|b| if b { 1.0 } else { -1.0 }).collect())
    };
    let raw: Vec<f64> = match spec.kind {
        InputKind::Gaussian => (0..n).map(|_| s.gaussian()).collect(),
        InputKind::Uniform => (0..n).map(|_| s.uniform()).collect(),
        InputKind::OnesRandomSigns => (0..n).map(|_| s.sign()).collect(),
        InputKind::OnesPiSigns => signs_from(IrrationalConstant::Pi)?,
        InputKind::OnesESigns => signs_from(IrrationalConstant::E)?,
        InputKind::PeriodicBinary { period } => {
            (0..n).map(|i| if i % period == 0 { 1.0 } else { 0.0 }).collect()
        }
        InputKind::PeriodicBipolar { period } => {
            (0..n).map(|i| if i % period == 0 { 1.0 } else { -1.0 }).collect()
        }
    };
    let v = RealVector::new(raw)?;
    if spec.normalize_unit {
        ensure!(v.norm() > 0.0, "cannot normalise a zero input coupling");
        Ok(v.normalized())
    } else {
        Ok(v)
    }
}
