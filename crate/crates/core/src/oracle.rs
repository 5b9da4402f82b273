//! Monte-Carlo estimates of ensemble-averaged fidelities.
//!
//! Samples are drawn in fixed-size shards. Shard `i` uses a ChaCha8 stream
//! seeded with `seed` on stream number `i`, and shard results are merged in
//! shard order, so an estimate depends only on `(seed, n_samples)`, never on
//! how many threads ran it.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::alphabets::{DiscreteAlphabet, RingAlphabet};
use crate::error::{Error, Result};
use crate::linalg::{Complex, Ket};
use crate::qubit::make_signal;
use crate::scheme::MeasurementScheme;

pub const SHARD_SIZE: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub n_samples: usize,
}

impl SamplerConfig {
    pub fn new(seed: u64, n_samples: usize) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::Domain("n_samples must be at least 1".into()));
        }
        Ok(Self { seed, n_samples })
    }

    fn shards(&self) -> usize {
        self.n_samples.div_ceil(SHARD_SIZE)
    }

    fn shard_len(&self, shard: usize) -> usize {
        SHARD_SIZE.min(self.n_samples - shard * SHARD_SIZE)
    }
}

/// Mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

impl MCEstimate {
    /// Whether `value` lies within `k` standard errors of the mean. A
    /// floating-point floor of 1e−12 covers zero-variance estimators.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error + 1e-12
    }

    /// `|mean − value|` in units of the standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = (self.mean - value).abs();
        if diff <= 1e-12 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// A draw from an ensemble, with its estimator weight.
#[derive(Clone, Debug)]
pub struct WeightedState {
    pub state: Ket,
    pub weight: f64,
}

impl WeightedState {
    fn unit(state: Ket) -> Self {
        Self { state, weight: 1.0 }
    }
}

pub trait StateSampler: Sync {
    fn dim(&self) -> usize;
    fn sample(&self, rng: &mut ChaCha8Rng) -> WeightedState;
}

/// Uniform point on the Bloch sphere: `θ = arccos(1 − 2u)`, `φ` uniform.
pub fn sample_qubit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Ket {
    let u: f64 = rng.random();
    let v: f64 = rng.random();
    make_signal((1.0 - 2.0 * u).clamp(-1.0, 1.0).acos(), TAU * v)
}

/// Haar-random pure state from `2d` independent standard normals.
pub fn sample_qudit_haar<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Ket {
    loop {
        let amps: Vec<Complex> = (0..d)
            .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(k) = Ket::normalized(amps) {
            return k;
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BlochSphere;

impl StateSampler for BlochSphere {
    fn dim(&self) -> usize {
        2
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> WeightedState {
        WeightedState::unit(sample_qubit_uniform(rng))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HaarQudit {
    pub d: usize,
}

impl StateSampler for HaarQudit {
    fn dim(&self) -> usize {
        self.d
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> WeightedState {
        WeightedState::unit(sample_qudit_haar(self.d, rng))
    }
}

/// Class A: node `j` uniform, phase 0.
#[derive(Clone, Copy, Debug)]
pub struct ClassASampler(pub DiscreteAlphabet);

impl StateSampler for ClassASampler {
    fn dim(&self) -> usize {
        2
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> WeightedState {
        let n = self.0.n();
        let j = rng.random_range(0..n);
        WeightedState::unit(make_signal(j as f64 * PI / (n - 1) as f64, 0.0))
    }
}

/// Class B: ring `j` uniform with weight `sin θ_j`, phase uniform.
#[derive(Clone, Copy, Debug)]
pub struct ClassBSampler(pub RingAlphabet);

impl StateSampler for ClassBSampler {
    fn dim(&self) -> usize {
        2
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> WeightedState {
        let j = rng.random_range(0..self.0.n());
        let (theta, weight) = self.0.rings().nth(j).expect("j < n");
        let phi = TAU * rng.random::<f64>();
        WeightedState {
            state: make_signal(theta, phi),
            weight,
        }
    }
}

/// Weighted means of `K` statistics of the sampled states.
///
/// The mean is `Σwx/Σw` and the squared standard error
/// `n/(n−1)·Σw²(x − mean)²/(Σw)²`, which is `s²/n` for unit weights.
pub fn estimate<S, F, const K: usize>(
    sampler: &S,
    cfg: SamplerConfig,
    statistic: F,
) -> Result<[MCEstimate; K]>
where
    S: StateSampler + ?Sized,
    F: Fn(&Ket) -> Result<[f64; K]> + Sync,
{
    let shards: Vec<Vec<(f64, [f64; K])>> = (0..cfg.shards())
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(shard as u64);
            (0..cfg.shard_len(shard))
                .map(|_| {
                    let draw = sampler.sample(&mut rng);
                    Ok((draw.weight, statistic(&draw.state)?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let draws: Vec<(f64, [f64; K])> = shards.into_iter().flatten().collect();

    let n = draws.len();
    let total: f64 = draws.iter().map(|(w, _)| w).sum();
    if total <= 0.0 {
        return Err(Error::Domain("sampled weights sum to zero".into()));
    }
    Ok(std::array::from_fn(|k| {
        let mean = draws.iter().map(|(w, x)| w * x[k]).sum::<f64>() / total;
        let spread: f64 = draws.iter().map(|(w, x)| (w * (x[k] - mean)).powi(2)).sum();
        let std_error = if n > 1 {
            (n as f64 / (n as f64 - 1.0) * spread).sqrt() / total
        } else {
            0.0
        };
        MCEstimate { mean, std_error, n }
    }))
}

/// Estimates `(F, G)` as ensemble means of the per-state fidelities.
pub fn mc_average_fidelities<S: StateSampler + ?Sized>(
    scheme: &MeasurementScheme,
    sampler: &S,
    cfg: SamplerConfig,
) -> Result<(MCEstimate, MCEstimate)> {
    if sampler.dim() != scheme.dim() {
        return Err(Error::Dimension {
            expected: scheme.dim(),
            found: sampler.dim(),
        });
    }
    let [f, g] = estimate(sampler, cfg, |psi| {
        let p = scheme.state_fidelities(psi)?;
        Ok([p.transmission, p.estimation])
    })?;
    Ok((f, g))
}
