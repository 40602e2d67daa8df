//! Seeded Monte Carlo estimators for cubes far beyond enumeration range.
//!
//! Sample `i` always draws from its own ChaCha stream `(seed, i)`, so the
//! multiset of outcomes does not depend on how many threads share the work.
//! Aggregation is a plain sum of counts.

mod estimate;
mod histogram;

use rand::distr::{Distribution, Uniform};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Anchor, CubeSpec, Population};

pub use estimate::{estimate_theorem, Verdict};
pub use histogram::{empirical_histogram, Histogram, HistogramQuantity};

/// Redraws allowed for one sample before the configuration is declared degenerate.
pub const MAX_REDRAWS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
    /// Failure probability of the Hoeffding margin.
    pub delta: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            samples: 100_000,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            delta: 1e-6,
        }
    }
}

impl SamplerConfig {
    pub fn new(seed: u64, samples: u64, workers: usize) -> Self {
        SamplerConfig {
            seed,
            samples,
            workers,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameter("workers must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "δ must lie in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| {
                Error::InvalidParameter(format!("cannot start {} workers: {e}", self.workers))
            })
    }
}

/// The random stream owned by sample `stream_index`.
pub fn sample_stream(seed: u64, stream_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_index);
    rng
}

/// A uniformly random vertex, the first draw of stream `(seed, stream_index)`.
pub fn sample_vertex(spec: &CubeSpec, stream_index: u64, seed: u64) -> Vec<u64> {
    let mut out = vec![0; spec.d];
    draw_vertex(spec, &mut sample_stream(seed, stream_index), &mut out);
    out
}

/// A uniformly random lattice point, the first draw of stream `(seed, stream_index)`.
pub fn sample_lattice_point(spec: &CubeSpec, stream_index: u64, seed: u64) -> Vec<u64> {
    let mut out = vec![0; spec.d];
    draw_lattice(spec, &mut sample_stream(seed, stream_index), &mut out);
    out
}

/// One fair bit per coordinate, 64 coordinates per generator word.
fn draw_vertex(spec: &CubeSpec, rng: &mut ChaCha8Rng, out: &mut [u64]) {
    for chunk in out.chunks_mut(64) {
        let mut bits = rng.next_u64();
        for c in chunk {
            *c = if bits & 1 == 1 { spec.n } else { 0 };
            bits >>= 1;
        }
    }
}

fn draw_lattice(spec: &CubeSpec, rng: &mut ChaCha8Rng, out: &mut [u64]) {
    let coord = Uniform::new_inclusive(0, spec.n).expect("0 ≤ N");
    for c in out {
        *c = coord.sample(rng);
    }
}

fn draw(spec: &CubeSpec, population: Population, rng: &mut ChaCha8Rng, out: &mut [u64]) {
    match population {
        Population::Vertices => draw_vertex(spec, rng, out),
        Population::Lattice => draw_lattice(spec, rng, out),
    }
}

/// `√(ln(2/δ) / (2n))`: with probability at least `1 − δ` the empirical
/// proportion of `n` independent draws is within this of the true one.
pub fn hoeffding_margin(samples: u64, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}

/// Integer coordinates of the anchor, when it is a lattice point.
fn anchor_as_integers(a: &Anchor) -> Option<Vec<u64>> {
    a.coords()
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().try_into().ok()
            } else {
                None
            }
        })
        .collect()
}

/// Draws into `out` until `reject` is false, counting the rejected draws.
fn draw_until(
    spec: &CubeSpec,
    population: Population,
    rng: &mut ChaCha8Rng,
    out: &mut [u64],
    rejections: &mut u64,
    mut reject: impl FnMut(&[u64]) -> bool,
) -> Result<()> {
    let mut local = 0;
    loop {
        draw(spec, population, rng, out);
        if !reject(out) {
            *rejections += local;
            return Ok(());
        }
        local += 1;
        if local > MAX_REDRAWS {
            return Err(Error::Degenerate(format!(
                "more than {MAX_REDRAWS} consecutive degenerate draws"
            )));
        }
    }
}
