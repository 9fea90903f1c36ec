//! Ball configurations and the moves acting on them.
//!
//! A configuration is stored as a finite window of exact bin counts next to
//! the front, with every bin left of the window holding exactly one ball.
//! The window grows lazily in both directions: to the right when the front
//! advances, to the left when a move reaches into the tail.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Letter;

/// What lies left of the explicit window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailPolicy {
    #[serde(rename = "one_per_bin")]
    OneBallPerBin,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRepr", into = "ConfigurationRepr")]
pub struct Configuration {
    front: i64,
    /// `bins[i]` is the count of bin `front - i`.
    bins: VecDeque<u64>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRepr {
    front: i64,
    window: Vec<u64>,
    tail: TailPolicy,
}

impl TryFrom<ConfigurationRepr> for Configuration {
    type Error = Error;

    fn try_from(r: ConfigurationRepr) -> Result<Self> {
        Configuration::from_window(r.front, &r.window)
    }
}

impl From<Configuration> for ConfigurationRepr {
    fn from(c: Configuration) -> Self {
        ConfigurationRepr {
            front: c.front,
            window: c.window(),
            tail: TailPolicy::OneBallPerBin,
        }
    }
}

impl Configuration {
    /// The smallest configuration with its front at `front`: one ball per bin.
    pub fn minimal(front: i64) -> Self {
        Configuration {
            front,
            bins: VecDeque::from([1]),
        }
    }

    /// Builds a configuration from counts ordered left to right, the last
    /// entry being the front bin.
    pub fn from_window(front: i64, window: &[u64]) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::InvalidConfiguration(
                "window must be non-empty".into(),
            ));
        }
        if window.contains(&0) {
            return Err(Error::InvalidConfiguration(
                "bins at or left of the front must be non-empty".into(),
            ));
        }
        Ok(Configuration {
            front,
            bins: window.iter().rev().copied().collect(),
        })
    }

    /// Builds a configuration from counts ordered from the front leftwards.
    pub(crate) fn from_front_counts(front: i64, counts: impl IntoIterator<Item = u64>) -> Self {
        let bins: VecDeque<u64> = counts.into_iter().collect();
        debug_assert!(!bins.is_empty() && !bins.contains(&0));
        Configuration { front, bins }
    }

    pub fn front(&self) -> i64 {
        self.front
    }

    pub fn tail(&self) -> TailPolicy {
        TailPolicy::OneBallPerBin
    }

    /// Number of explicitly stored bins.
    pub fn depth(&self) -> usize {
        self.bins.len()
    }

    /// Explicit counts, left to right.
    pub fn window(&self) -> Vec<u64> {
        self.bins.iter().rev().copied().collect()
    }

    /// Total number of balls in the explicit window.
    pub fn window_total(&self) -> u64 {
        self.bins.iter().sum()
    }

    /// `X(k)`.
    pub fn count(&self, bin: i64) -> u64 {
        if bin > self.front {
            return 0;
        }
        let off = (self.front - bin) as u64;
        match usize::try_from(off).ok().and_then(|i| self.bins.get(i)) {
            Some(&c) => c,
            None => 1,
        }
    }

    /// Count of the front bin.
    pub fn front_count(&self) -> u64 {
        self.bins[0]
    }

    /// `N(X, k)`: the number of balls in or to the right of bin `k`.
    pub fn count_at_or_right(&self, k: i64) -> u64 {
        if k > self.front {
            return 0;
        }
        let off = (self.front - k) as u64;
        let depth = self.bins.len() as u64;
        if off < depth {
            self.bins.iter().take(off as usize + 1).sum()
        } else {
            self.window_total() + (off - depth + 1)
        }
    }

    /// Offset from the front of the bin holding the `k`-th rightmost ball.
    #[inline]
    fn offset_of_ball(&self, k: u64) -> u64 {
        let mut seen = 0u64;
        for (i, &c) in self.bins.iter().enumerate() {
            seen += c;
            if seen >= k {
                return i as u64;
            }
        }
        // Tail bins hold one ball each.
        self.bins.len() as u64 - 1 + (k - seen)
    }

    /// `B(X, k)`: index of the bin containing the `k`-th rightmost ball.
    pub fn bin_of_kth_rightmost(&self, k: u64) -> i64 {
        assert!(k >= 1, "ball ranks start at 1");
        self.front - self.offset_of_ball(k) as i64
    }

    /// Applies `Φ_k` in place and reports whether the front advanced.
    pub fn apply_move(&mut self, k: Letter) -> bool {
        debug_assert!(k >= 1);
        let off = self.offset_of_ball(k as u64);
        if off == 0 {
            self.bins.push_front(1);
            self.front += 1;
            return true;
        }
        let target = (off - 1) as usize;
        while self.bins.len() <= target {
            self.bins.push_back(1);
        }
        self.bins[target] += 1;
        false
    }

    /// `Φ_k(X)`.
    pub fn with_move(&self, k: Letter) -> Configuration {
        let mut next = self.clone();
        next.apply_move(k);
        next
    }

    /// Applies the letters of a word left to right, in place.
    pub fn apply_word(&mut self, word: &[Letter]) {
        for &a in word {
            self.apply_move(a);
        }
    }

    /// `Φ_α(X)`.
    pub fn with_word(&self, word: &[Letter]) -> Configuration {
        let mut next = self.clone();
        next.apply_word(word);
        next
    }

    /// `Ψ_r(X)`: every ball moves `r` bins to the left.
    pub fn shift(&self, r: i64) -> Configuration {
        Configuration {
            front: self.front - r,
            bins: self.bins.clone(),
        }
    }

    /// `Π_K(X)`: counts of the `k` rightmost bins, left to right.
    pub fn scenery(&self, k: usize) -> Vec<u64> {
        (0..k)
            .rev()
            .map(|i| self.bins.get(i).copied().unwrap_or(1))
            .collect()
    }

    /// Drops trailing explicit bins that carry a single ball; they are
    /// indistinguishable from the tail.
    pub fn compact(&mut self) {
        while self.bins.len() > 1 && self.bins.back() == Some(&1) {
            self.bins.pop_back();
        }
    }
}

/// Equality of the represented infinite configurations.
impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        if self.front != other.front {
            return false;
        }
        let n = self.bins.len().max(other.bins.len());
        (0..n).all(|i| {
            self.bins.get(i).copied().unwrap_or(1) == other.bins.get(i).copied().unwrap_or(1)
        })
    }
}

impl Eq for Configuration {}
