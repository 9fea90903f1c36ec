use rand_chacha::ChaCha8Rng;

use crate::distribution::MoveDistribution;
use crate::rng;
use crate::word::Letter;

/// Letters read from one random stream, cached so that index `i` always
/// yields the same letter however often and in whatever order it is read.
/// Each letter consumes exactly one `u64` of the stream.
#[derive(Debug, Clone)]
pub struct LetterTape<'a> {
    mu: &'a MoveDistribution,
    rng: ChaCha8Rng,
    letters: Vec<Letter>,
}

impl<'a> LetterTape<'a> {
    pub fn new(mu: &'a MoveDistribution, rng: ChaCha8Rng) -> Self {
        LetterTape {
            mu,
            rng,
            letters: Vec::new(),
        }
    }

    /// Tape of the past letters `ξ_0, ξ_{-1}, …` of a replica.
    pub fn past(mu: &'a MoveDistribution, seed: u64, replica: u64) -> Self {
        Self::new(mu, rng::past_stream(seed, replica))
    }

    /// Tape of the future letters `ξ_1, ξ_2, …` of a replica.
    pub fn future(mu: &'a MoveDistribution, seed: u64, replica: u64) -> Self {
        Self::new(mu, rng::future_stream(seed, replica))
    }

    fn fill(&mut self, n: usize) {
        while self.letters.len() < n {
            let u = rng::unit(&mut self.rng);
            self.letters.push(self.mu.quantile(u));
        }
    }

    pub fn get(&mut self, i: usize) -> Letter {
        self.fill(i + 1);
        self.letters[i]
    }

    /// The first `n` letters in tape order.
    pub fn prefix(&mut self, n: usize) -> &[Letter] {
        self.fill(n);
        &self.letters[..n]
    }
}
