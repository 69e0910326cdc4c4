use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::{Error, Result};

use super::PROB_SUM_TOL;

/// Probabilities this far below zero are rounding noise and are clamped.
const NEG_PROB_TOL: f64 = 1e-12;

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator for `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed for child `index` of `seed` (SplitMix64 finalizer), so that nested
/// runs get unrelated generators regardless of evaluation order.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn validate(probabilities: &[f64]) -> Result<Vec<f64>> {
    if probabilities.is_empty() {
        return Err(Error::InvalidProbabilities("empty distribution".into()));
    }
    if let Some(p) = probabilities
        .iter()
        .find(|p| !p.is_finite() || **p < -NEG_PROB_TOL)
    {
        return Err(Error::InvalidProbabilities(format!("entry {p}")));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > PROB_SUM_TOL {
        return Err(Error::InvalidProbabilities(format!("sum {total}")));
    }
    Ok(probabilities.iter().map(|p| p.max(0.0)).collect())
}

/// Draws one multinomial sample of `shots` trials.
pub fn sample_counts_with<R: Rng + ?Sized>(
    probabilities: &[f64],
    shots: u64,
    rng: &mut R,
) -> Result<Vec<u64>> {
    if shots == 0 {
        return Err(Error::InvalidProbabilities("shots must be at least 1".into()));
    }
    let probs = validate(probabilities)?;
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut mass: f64 = probs.iter().sum();
    let last = probs.len() - 1;
    // Conditional binomials: count_k ~ Bin(remaining, p_k / remaining mass).
    for (k, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if k == last {
            counts[k] = remaining;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let draw = Binomial::new(remaining, q)
            .map_err(|e| Error::InvalidProbabilities(e.to_string()))?
            .sample(rng);
        counts[k] = draw;
        remaining -= draw;
        mass -= p;
    }
    Ok(counts)
}

/// Multinomial counts for `shots` trials, reproducible for a fixed `seed`.
pub fn sample_counts(probabilities: &[f64], shots: u64, seed: u64) -> Result<Vec<u64>> {
    sample_counts_with(probabilities, shots, &mut seeded_rng(seed))
}
