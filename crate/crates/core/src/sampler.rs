//! Uniform sampling by unranking the enumeration order, and Monte Carlo
//! estimates of block statistics.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumerate::{enumerate_with_limit, DEFAULT_MAX_POINTS};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::partition::AnyPartition;

/// Name of the random source, recorded in every report.
pub const RNG_ALGORITHM: &str = "ChaCha8";

/// A family with its members ranked in enumeration order, built on first use.
pub struct Sampler {
    spec: FamilySpec,
    max_points: usize,
    ranked: OnceLock<Vec<AnyPartition>>,
}

impl Sampler {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        Self::with_limit(spec, DEFAULT_MAX_POINTS)
    }

    pub fn with_limit(spec: FamilySpec, max_points: usize) -> Result<Self> {
        // fail early on the guard rather than at the first draw
        enumerate_with_limit(&spec, max_points)?;
        Ok(Self {
            spec,
            max_points,
            ranked: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// The member of rank `r` (0-based) in enumeration order.
    pub fn unrank(&self, r: usize) -> Option<&AnyPartition> {
        self.ranked().get(r)
    }

    pub fn len(&self) -> usize {
        self.ranked().len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranked().is_empty()
    }

    fn ranked(&self) -> &[AnyPartition] {
        self.ranked.get_or_init(|| {
            enumerate_with_limit(&self.spec, self.max_points)
                .expect("guard checked at construction")
                .collect()
        })
    }

    /// Ranks of `count` independent uniform draws.
    pub fn sample_ranks(&self, seed: u64, count: usize) -> Vec<usize> {
        let len = self.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| rng.gen_range(0..len)).collect()
    }

    pub fn sample(&self, seed: u64, count: usize) -> Vec<AnyPartition> {
        self.sample_ranks(seed, count)
            .into_iter()
            .map(|r| self.ranked()[r].clone())
            .collect()
    }
}

/// `count` uniform members of the family; the same seed gives the same sequence.
pub fn sample_uniform(spec: &FamilySpec, seed: u64, count: usize) -> Result<Vec<AnyPartition>> {
    if count == 0 {
        return Err(Error::OutOfRange("count must be at least 1".into()));
    }
    Ok(Sampler::new(*spec)?.sample(seed, count))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// Blocks of size `tk`; for signed families, pairs and zero-blocks of half-size `tk`.
    BlocksOfSize(usize),
    /// Non-zero pairs of size `tk` (plain blocks for type A).
    NonzeroPairsOfSize(usize),
    /// Blocks, counting a pair `{V, -V}` once.
    TotalBlocks,
}

impl Statistic {
    pub fn evaluate(&self, p: &AnyPartition, k: usize) -> usize {
        let bt = p.block_type();
        match *self {
            Statistic::BlocksOfSize(t) => bt.count(t * k) + usize::from(bt.s > 0 && bt.s == t * k),
            Statistic::NonzeroPairsOfSize(t) => bt.count(t * k),
            Statistic::TotalBlocks => bt.m() + usize::from(bt.s > 0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub algorithm: &'static str,
    pub statistic: Statistic,
    pub mean: f64,
    /// Sample standard deviation over the square root of `trials`.
    pub stderr: f64,
}

/// Monte Carlo mean of `statistic` over `trials` uniform draws.
pub fn estimate(spec: &FamilySpec, statistic: Statistic, trials: usize, seed: u64) -> Result<SampleReport> {
    estimate_with(&Sampler::new(*spec)?, statistic, trials, seed)
}

pub fn estimate_with(sampler: &Sampler, statistic: Statistic, trials: usize, seed: u64) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1".into()));
    }
    let spec = *sampler.spec();
    // per-member values once, then draw ranks
    let values: Vec<f64> = (0..sampler.len())
        .map(|r| statistic.evaluate(sampler.unrank(r).expect("in range"), spec.k) as f64)
        .collect();
    let draws: Vec<f64> = sampler
        .sample_ranks(seed, trials)
        .into_iter()
        .map(|r| values[r])
        .collect();
    let mean = draws.iter().sum::<f64>() / trials as f64;
    let stderr = if trials > 1 {
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(SampleReport {
        family: spec.label().to_string(),
        n: spec.n,
        k: spec.k,
        trials,
        seed,
        algorithm: RNG_ALGORITHM,
        statistic,
        mean,
        stderr,
    })
}
