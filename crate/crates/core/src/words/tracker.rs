//! Incremental lower bound on the coupling number.
//!
//! The tracker keeps the counts of the rightmost bins that are known to be
//! the same for every start configuration. A letter `a` not exceeding the
//! number of known balls lands inside the known region; a larger letter
//! lands left of it and may change the deepest known bin, which is
//! forgotten. Before anything is known, the letter 1 still opens a fresh
//! front bin holding exactly one ball.

use std::collections::VecDeque;

use crate::word::Letter;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrackerState {
    /// Front bin first.
    bins: VecDeque<u64>,
    total: u64,
    front_shift: u64,
}

impl TrackerState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Certified depth `D`.
    pub fn depth(&self) -> usize {
        self.bins.len()
    }

    /// `M`: balls in the determined bins.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Front advances seen inside the determined region.
    pub fn front_shift(&self) -> u64 {
        self.front_shift
    }

    /// Determined counts, left to right.
    pub fn determined(&self) -> Vec<u64> {
        self.bins.iter().rev().copied().collect()
    }

    /// The rightmost `k` determined counts, left to right.
    pub fn scenery(&self, k: usize) -> Option<Vec<u64>> {
        (k <= self.bins.len()).then(|| self.bins.iter().take(k).rev().copied().collect())
    }

    pub fn front_count(&self) -> Option<u64> {
        self.bins.front().copied()
    }

    /// Processes one more letter; returns whether the front advanced
    /// (`None` when that is not determined).
    pub fn step(&mut self, a: Letter) -> Option<bool> {
        let a = a as u64;
        if self.bins.is_empty() {
            if a == 1 {
                self.bins.push_front(1);
                self.total = 1;
                self.front_shift += 1;
                return Some(true);
            }
            return None;
        }
        if a <= self.total {
            let mut seen = 0;
            let mut bin = 0;
            for (i, &c) in self.bins.iter().enumerate() {
                seen += c;
                if seen >= a {
                    bin = i;
                    break;
                }
            }
            self.total += 1;
            if bin == 0 {
                self.bins.push_front(1);
                self.front_shift += 1;
                Some(true)
            } else {
                self.bins[bin - 1] += 1;
                Some(false)
            }
        } else {
            let dropped = self.bins.pop_back().unwrap();
            self.total -= dropped;
            Some(false)
        }
    }
}

/// Fold of [`TrackerState::step`] over `letters` from the empty state.
pub fn tracker_run(letters: impl IntoIterator<Item = Letter>) -> TrackerState {
    let mut s = TrackerState::new();
    for a in letters {
        s.step(a);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init() {
        let s = TrackerState::new();
        assert_eq!(s.depth(), 0);
        assert_eq!(s.total(), 0);
        assert_eq!(s.front_shift(), 0);
    }

    #[test]
    fn steps() {
        let mut s = TrackerState::new();
        s.step(7);
        assert_eq!(s.determined(), Vec::<u64>::new());

        let mut s = tracker_run([1]);
        assert_eq!(s.determined(), vec![1]);
        assert_eq!(s.step(1), Some(true));
        assert_eq!(s.determined(), vec![1, 1]);
        assert_eq!(s.front_shift(), 2);

        // Ball 2 is in the second bin, so the front bin is incremented.
        assert_eq!(s.step(2), Some(false));
        assert_eq!(s.determined(), vec![1, 2]);
        // Ball 4 is unknown: the deepest bin is forgotten.
        assert_eq!(s.step(4), Some(false));
        assert_eq!(s.determined(), vec![2]);
        assert_eq!(s.total(), 2);
    }

    #[test]
    fn runs() {
        assert_eq!(tracker_run([1, 1, 1]).depth(), 3);
        assert_eq!(tracker_run([2, 3, 2, 2, 5]).depth(), 0);
        assert!(tracker_run([2, 3, 2, 2]).depth() <= 1);
        assert_eq!(tracker_run([1, 1, 3]).scenery(1), Some(vec![1]));
        assert_eq!(tracker_run([1, 1, 3]).scenery(2), None);
    }
}
