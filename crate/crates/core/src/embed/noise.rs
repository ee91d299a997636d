use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::error::{Error, Result};

/// Exponent applied to token frequencies in the negative-sampling
/// distribution.
pub const NOISE_POWER: f64 = 0.75;

/// Negative-sampling distribution over vocabulary rows, proportional to
/// corpus frequency raised to [`NOISE_POWER`].
#[derive(Debug, Clone)]
pub struct NoiseTable {
    probs: Vec<f64>,
    dist: WeightedIndex<f64>,
}

impl NoiseTable {
    /// `counts[r]` is the number of corpus occurrences of vocabulary row `r`.
    pub fn from_counts(counts: &[u64]) -> Result<NoiseTable> {
        let weights: Vec<f64> = counts
            .iter()
            .map(|&c| (c as f64).powf(NOISE_POWER))
            .collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::domain("noise distribution needs a non-empty corpus"));
        }
        let dist = WeightedIndex::new(&weights)
            .map_err(|e| Error::Invariant(format!("noise table: {e}")))?;
        let probs = weights.iter().map(|w| w / total).collect();
        Ok(NoiseTable { probs, dist })
    }

    pub fn probability(&self, row: usize) -> f64 {
        self.probs[row]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.dist.sample(rng)
    }
}
