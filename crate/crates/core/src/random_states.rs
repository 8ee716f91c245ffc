//! Haar-random states of a sector decomposition and their restricted
//! entanglement entropy.
//!
//! A state is stored in block form: for every sector `r` a probability `p_r`
//! and a unit-norm `d_r × b_r` coefficient matrix `χ_r`. Drawing the `D`
//! coefficients as independent complex Gaussians and normalising gives the
//! uniform measure on the invariant space.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{schmidt_spectrum, shannon, Neumaier};
use crate::spin::TwiceSpin;
use crate::su2_dims::SectorDims;
use crate::typical_entropy::{max_entropy, EntropyStats};

/// Deterministic source of per-sample random streams.
///
/// Sample `i` always draws from stream `i` of a ChaCha generator keyed by the
/// master seed, so results do not depend on how samples are scheduled.
///
/// ```
/// use rand::Rng;
/// use symres::random_states::SeededSampler;
/// let s = SeededSampler::new(7);
/// let a: u64 = s.rng_for(3).random();
/// let b: u64 = s.rng_for(3).random();
/// assert_eq!(a, b);
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeededSampler {
    master_seed: u64,
    sample_counter: u64,
}

impl SeededSampler {
    pub fn new(master_seed: u64) -> Self {
        SeededSampler {
            master_seed,
            sample_counter: 0,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Index of the next sample to be drawn.
    pub fn sample_counter(&self) -> u64 {
        self.sample_counter
    }

    /// Generator for sample `index`, independent of the counter.
    pub fn rng_for(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(index);
        rng
    }

    /// Generator for the next sample; advances the counter.
    pub fn next_rng(&mut self) -> ChaCha8Rng {
        let rng = self.rng_for(self.sample_counter);
        self.sample_counter += 1;
        rng
    }

    fn reserve(&mut self, n: u64) -> u64 {
        let start = self.sample_counter;
        self.sample_counter += n;
        start
    }
}

/// One sector of a [`BlockState`].
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub label: i64,
    pub p: f64,
    pub chi: DMatrix<Complex64>,
}

/// A state of a sector decomposition in block form.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockState {
    j: Option<TwiceSpin>,
    blocks: Vec<Block>,
}

const NORM_TOL: f64 = 1e-12;
const TINY_P: f64 = 1e-300;

impl BlockState {
    /// Validates probabilities and block norms.
    pub fn new(j: Option<TwiceSpin>, blocks: Vec<Block>) -> Result<Self> {
        let total: f64 = blocks.iter().map(|b| b.p).sum();
        if (total - 1.0).abs() > NORM_TOL || blocks.iter().any(|b| b.p < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {total}"
            )));
        }
        for b in &blocks {
            if b.chi.is_empty() || (b.chi.norm() - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidArgument(format!(
                    "block {} does not have unit norm",
                    b.label
                )));
            }
        }
        Ok(BlockState { j, blocks })
    }

    /// Splits a flat coefficient vector into blocks. Each sector takes
    /// `d·b` consecutive entries in row-major order; the vector is normalised
    /// first.
    pub fn from_amplitudes(dims: &SectorDims, amplitudes: &[Complex64]) -> Result<Self> {
        let shapes = block_shapes(dims)?;
        let total: usize = shapes.iter().map(|&(_, d, b)| d * b).sum();
        if amplitudes.len() != total {
            return Err(Error::ShapeMismatch(format!(
                "expected {total} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        let mut blocks = Vec::with_capacity(shapes.len());
        let mut offset = 0;
        for (label, d, b) in shapes {
            let raw = &amplitudes[offset..offset + d * b];
            offset += d * b;
            let m = DMatrix::from_row_slice(d, b, raw) / Complex64::from(norm);
            let weight = m.norm_squared();
            let (p, chi) = if weight < TINY_P {
                let mut unit = DMatrix::zeros(d, b);
                unit[(0, 0)] = Complex64::from(1.0);
                (0.0, unit)
            } else {
                (weight, m / Complex64::from(weight.sqrt()))
            };
            blocks.push(Block { label, p, chi });
        }
        // renormalise the probabilities against accumulated rounding
        let sum: f64 = blocks.iter().map(|b| b.p).sum();
        for b in &mut blocks {
            b.p /= sum;
        }
        Ok(BlockState {
            j: dims.origin().map(|o| o.j),
            blocks,
        })
    }

    pub(crate) fn from_parts_unchecked(j: Option<TwiceSpin>, blocks: Vec<Block>) -> Self {
        BlockState { j, blocks }
    }

    pub fn j(&self) -> Option<TwiceSpin> {
        self.j
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

fn block_shapes(dims: &SectorDims) -> Result<Vec<(i64, usize, usize)>> {
    dims.sectors()
        .iter()
        .map(|s| {
            let to = |x: &num_bigint::BigUint| {
                usize::try_from(x)
                    .ok()
                    .filter(|&v| v <= 1 << 26)
                    .ok_or_else(|| {
                        Error::SizeLimit(format!("sector dimension {x} too large to sample"))
                    })
            };
            Ok((s.label, to(&s.d)?, to(&s.b)?))
        })
        .collect()
}

fn sample_with(dims: &SectorDims, rng: &mut impl Rng) -> Result<BlockState> {
    let total = dims
        .total_usize()
        .filter(|&v| v <= 1 << 26)
        .ok_or_else(|| {
            Error::SizeLimit(format!("dimension {} too large to sample", dims.total()))
        })?;
    let amplitudes: Vec<Complex64> = (0..total)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    BlockState::from_amplitudes(dims, &amplitudes)
}

/// Draws one uniformly random state of `dims`.
///
/// ```
/// use symres::{random_states::*, su2_dims::sector_dims, TwiceSpin};
/// let dims = sector_dims(6, 3, TwiceSpin::ONE).unwrap();
/// let state = sample_block_state(&dims, &mut SeededSampler::new(1)).unwrap();
/// assert!(entropy_ga(&state) <= 3f64.ln() + 1e-12);
/// ```
pub fn sample_block_state(dims: &SectorDims, sampler: &mut SeededSampler) -> Result<BlockState> {
    sample_with(dims, &mut sampler.next_rng())
}

/// Configurational and number parts of the restricted entropy:
/// `−Σ p_r tr ρ_r log ρ_r` and `−Σ p_r log p_r`.
pub fn entropy_decomposition(state: &BlockState) -> (f64, f64) {
    let mut conf = Neumaier::default();
    for b in &state.blocks {
        if b.p > 0.0 {
            conf.add(b.p * shannon(schmidt_spectrum(&b.chi)));
        }
    }
    (conf.total(), shannon(state.blocks.iter().map(|b| b.p)))
}

/// Restricted entanglement entropy of a block state.
pub fn entropy_ga(state: &BlockState) -> f64 {
    let (conf, number) = entropy_decomposition(state);
    conf + number
}

/// The state with the largest restricted entropy, `log Σ min(d_r, b_r)`.
pub fn max_entangled_state(dims: &SectorDims) -> Result<BlockState> {
    let shapes = block_shapes(dims)?;
    let total: usize = shapes.iter().map(|&(_, d, b)| d.min(b)).sum();
    let blocks = shapes
        .into_iter()
        .map(|(label, d, b)| {
            let k = d.min(b);
            let mut chi = DMatrix::zeros(d, b);
            for i in 0..k {
                chi[(i, i)] = Complex64::from(1.0 / (k as f64).sqrt());
            }
            Block {
                label,
                p: k as f64 / total as f64,
                chi,
            }
        })
        .collect();
    Ok(BlockState {
        j: dims.origin().map(|o| o.j),
        blocks,
    })
}

/// Equal-width histogram over a closed interval; the right edge is
/// included in the last bin.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    lo: f64,
    hi: f64,
    counts: Vec<u64>,
}

impl Histogram {
    /// An empty histogram. A degenerate range `hi <= lo` is widened to
    /// `[lo, lo + 1]`.
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        let hi = if hi > lo { hi } else { lo + 1.0 };
        Histogram {
            lo,
            hi,
            counts: vec![0; bins.max(1)],
        }
    }

    pub fn add(&mut self, x: f64) {
        let n = self.counts.len();
        let t = (x - self.lo) / (self.hi - self.lo);
        let idx = if t <= 0.0 {
            0
        } else {
            ((t * n as f64) as usize).min(n - 1)
        };
        self.counts[idx] += 1;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(left, right, count)` for each bin.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        let n = self.counts.len() as f64;
        let width = self.hi - self.lo;
        self.counts.iter().enumerate().map(move |(i, &c)| {
            let left = self.lo + width * i as f64 / n;
            let right = self.lo + width * (i + 1) as f64 / n;
            (left, right, c)
        })
    }
}

/// Default number of histogram bins.
pub const DEFAULT_BINS: usize = 60;

/// Options for [`empirical_stats_with`].
#[derive(Clone, Debug)]
pub struct SamplingOptions {
    pub samples: u64,
    pub bins: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl SamplingOptions {
    pub fn new(samples: u64) -> Self {
        SamplingOptions {
            samples,
            bins: DEFAULT_BINS,
            workers: None,
        }
    }
}

/// Sample statistics of the restricted entropy.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalReport {
    pub samples: u64,
    /// Sample mean and unbiased sample variance.
    pub stats: EntropyStats,
    /// Standard error of the mean.
    pub std_error_mean: f64,
    /// Standard error of the variance, from the fourth central moment.
    pub std_error_variance: f64,
    pub histogram: Histogram,
}

/// Samples `n_samples` states with default options.
pub fn empirical_stats(
    dims: &SectorDims,
    n_samples: u64,
    sampler: &mut SeededSampler,
) -> Result<EmpiricalReport> {
    empirical_stats_with(dims, &SamplingOptions::new(n_samples), sampler)
}

/// Samples states and aggregates their entropies. The result is
/// bit-identical for any worker count.
pub fn empirical_stats_with(
    dims: &SectorDims,
    options: &SamplingOptions,
    sampler: &mut SeededSampler,
) -> Result<EmpiricalReport> {
    let n = options.samples;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    let start = sampler.reserve(n);
    let frozen = sampler.clone();
    let draw = || -> Result<Vec<f64>> {
        (0..n)
            .into_par_iter()
            .map(|i| sample_with(dims, &mut frozen.rng_for(start + i)).map(|s| entropy_ga(&s)))
            .collect()
    };
    let values = match options.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(draw)?,
        None => draw()?,
    };

    let nf = n as f64;
    let mean = values.iter().copied().collect::<Neumaier>().total() / nf;
    let m2 = values
        .iter()
        .map(|x| (x - mean).powi(2))
        .collect::<Neumaier>()
        .total();
    let m4 = values
        .iter()
        .map(|x| (x - mean).powi(4))
        .collect::<Neumaier>()
        .total()
        / nf;
    let variance = if n > 1 { m2 / (nf - 1.0) } else { 0.0 };
    let biased = m2 / nf;
    let mut histogram = Histogram::new(0.0, max_entropy(dims), options.bins);
    for &x in &values {
        histogram.add(x);
    }
    Ok(EmpiricalReport {
        samples: n,
        stats: EntropyStats { mean, variance },
        std_error_mean: (variance / nf).sqrt(),
        std_error_variance: ((m4 - biased * biased).max(0.0) / nf).sqrt(),
        histogram,
    })
}
