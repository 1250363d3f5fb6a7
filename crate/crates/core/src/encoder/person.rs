use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::DataInterval;
use crate::error::Result;
use crate::linguistic::Interval;

/// Per-word seed: the base seed mixed with a stable hash of the word, so the
/// stream a word sees does not depend on which other words are encoded.
pub fn word_seed(seed: u64, word: &str) -> u64 {
    let digest = Sha256::digest(word.as_bytes());
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    seed ^ u64::from_le_bytes(head)
}

/// Synthesises `n` subject intervals from one person's uncertain left and
/// right endpoints, drawing each endpoint uniformly from its range.
pub fn person_fou_expand(word: &str, left: Interval, right: Interval, n: usize, seed: u64) -> Result<Vec<DataInterval>> {
    let left = Interval::new(left.lo, left.hi)?;
    let right = Interval::new(right.lo, right.hi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(word_seed(seed, word));
    let mut draw = |iv: Interval| {
        let u: f64 = rng.random();
        iv.lo + u * (iv.hi - iv.lo)
    };
    Ok((0..n)
        .map(|i| {
            let a = draw(left);
            let b = draw(right);
            DataInterval::tagged(a, b, format!("p{i}"))
        })
        .collect())
}
