use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// Base seed of an experiment. Streams for independent draws are derived
/// with [`Seed::derive`] so that every draw is reproducible in isolation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl Seed {
    /// Child seed for a labelled sub-stream.
    pub fn derive(self, stream: u64) -> Seed {
        Seed(splitmix(self.0 ^ splitmix(stream.wrapping_add(0x6A09_E667_F3BC_C909))))
    }

    /// Seed for one cell of a sweep, keyed by grid position and trial number.
    pub fn for_trial(self, grid_index: usize, trial: usize) -> Seed {
        self.derive(grid_index as u64).derive(trial as u64)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Xoshiro256++ stream with Box–Muller normals.
pub(crate) struct Sampler {
    rng: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

impl Sampler {
    pub(crate) fn new(seed: Seed) -> Self {
        Self { rng: Xoshiro256PlusPlus::seed_from_u64(seed.0), spare: None }
    }

    /// Standard normal variate.
    pub(crate) fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite
        let u1 = 1.0 - self.rng.gen::<f64>();
        let u2 = self.rng.gen::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(r * angle.sin());
        r * angle.cos()
    }

    /// Uniform on `[-1, 1)`.
    pub(crate) fn uniform(&mut self) -> f64 {
        2.0 * self.rng.gen::<f64>() - 1.0
    }

    /// `+1` or `−1` with equal probability.
    pub(crate) fn sign(&mut self) -> f64 {
        if self.rng.next_u64() >> 63 == 1 {
            1.0
        } else {
            -1.0
        }
    }
}
