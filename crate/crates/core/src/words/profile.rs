//! Goodness profiles: the verdict of a word on every layout at once.
//!
//! For a word `β` with horizon `h`, the profile stores one bit per layout of
//! size `h`: whether `β` is good from a configuration with that layout.
//! Prepending a letter `a` gives a word of horizon `max(a, h − 1)` whose
//! profile is obtained by moving each layout with `Φ_a` and reading the
//! parent profile at the resulting layout of size `h`. This lets the series
//! enumeration classify every node of its tree in time linear in the number
//! of layouts, instead of replaying the whole word on each of them.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::word::Letter;
use crate::words::classify::Verdict;
use crate::words::layout::{layout_bins, layout_mask, Mask};

/// Largest letter the profile machinery accepts (`2^23` layouts).
pub const MAX_PROFILE_LETTER: Letter = 24;

/// Layout transition maps `Φ_a`, built on first use and shared read-only.
#[derive(Debug)]
pub struct TransitionTables {
    max_letter: Letter,
    tables: Vec<OnceLock<Box<[Mask]>>>,
}

impl TransitionTables {
    pub fn new(max_letter: Letter) -> Result<Self> {
        if max_letter == 0 || max_letter > MAX_PROFILE_LETTER {
            return Err(Error::SizeLimit {
                what: "max_letter",
                value: max_letter as u64,
                limit: MAX_PROFILE_LETTER as u64,
            });
        }
        let n = (max_letter * max_letter) as usize;
        Ok(TransitionTables {
            max_letter,
            tables: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn max_letter(&self) -> Letter {
        self.max_letter
    }

    /// For every layout of size `max(a, h_in − 1)`, the size-`h_in` layout
    /// of its image under `Φ_a`.
    fn table(&self, a: Letter, h_in: u32) -> &[Mask] {
        let idx = ((a - 1) * self.max_letter + (h_in - 1)) as usize;
        self.tables[idx].get_or_init(|| build_table(a, h_in))
    }
}

fn build_table(a: Letter, h_in: u32) -> Box<[Mask]> {
    let h_out = a.max(h_in.saturating_sub(1)).max(1);
    (0..1u32 << (h_out - 1))
        .map(|mask| {
            let mut bins = layout_bins(h_out, mask);
            let mut seen = 0;
            let bin = bins
                .iter()
                .position(|&c| {
                    seen += c;
                    seen >= a as u64
                })
                .expect("ball a lies inside the layout");
            if bin == 0 {
                bins.insert(0, 1);
            } else {
                bins[bin - 1] += 1;
            }
            layout_mask(&bins, h_in)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessProfile {
    horizon: u32,
    bits: Vec<u64>,
}

impl GoodnessProfile {
    /// Profile of the one-letter word `(a)`: good exactly when the front bin
    /// holds at least `a` balls.
    pub fn single(a: Letter) -> Self {
        let mut p = Self::zeros(a);
        p.set(0);
        p
    }

    fn zeros(horizon: u32) -> Self {
        let n = 1usize << (horizon - 1);
        GoodnessProfile {
            horizon,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.bits[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn len(&self) -> usize {
        1 << (self.horizon - 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Profile of `a · β` given the profile of `β`.
    pub fn prepend(&self, a: Letter, tables: &TransitionTables) -> Self {
        debug_assert!(a <= tables.max_letter);
        let table = tables.table(a, self.horizon);
        let h_out = a.max(self.horizon - 1).max(1);
        let mut out = Self::zeros(h_out);
        for (chunk, word) in table.chunks(64).zip(out.bits.iter_mut()) {
            let mut acc = 0u64;
            for (j, &src) in chunk.iter().enumerate() {
                acc |= (self.get(src as usize) as u64) << j;
            }
            *word = acc;
        }
        out
    }

    pub fn verdict(&self) -> Verdict {
        let n = self.len();
        let ones: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        if ones == n {
            Verdict::Good
        } else if ones == 0 {
            Verdict::Bad
        } else {
            Verdict::Neither
        }
    }

    /// Profile of a whole word, built from its last letter leftwards.
    pub fn of_word(word: &[Letter], tables: &TransitionTables) -> Result<Self> {
        let (&last, rest) = word.split_last().ok_or(Error::EmptyWord)?;
        if let Some(&a) = word.iter().find(|&&a| a > tables.max_letter) {
            return Err(Error::SizeLimit {
                what: "letter",
                value: a as u64,
                limit: tables.max_letter as u64,
            });
        }
        let mut p = Self::single(last);
        for &a in rest.iter().rev() {
            p = p.prepend(a, tables);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::classify::{horizon, is_x_good};
    use crate::words::layout::test_set;

    #[test]
    fn profile_matches_direct_replay() {
        let tables = TransitionTables::new(5).unwrap();
        let words: [&[Letter]; 8] = [
            &[1],
            &[2],
            &[2, 2],
            &[1, 2],
            &[2, 1, 2],
            &[2, 3, 2, 2],
            &[5, 1, 3, 2],
            &[3, 3, 1, 4, 2, 2],
        ];
        for w in words {
            let p = GoodnessProfile::of_word(w, &tables).unwrap();
            assert_eq!(p.horizon(), horizon(w).unwrap());
            for (i, x) in test_set(p.horizon()).unwrap().iter().enumerate() {
                assert_eq!(p.get(i), is_x_good(w, x).unwrap(), "{w:?} layout {i}");
            }
        }
    }

    #[test]
    fn verdicts() {
        let tables = TransitionTables::new(3).unwrap();
        let v = |w: &[Letter]| GoodnessProfile::of_word(w, &tables).unwrap().verdict();
        assert_eq!(v(&[1]), Verdict::Good);
        assert_eq!(v(&[1, 1]), Verdict::Good);
        assert_eq!(v(&[1, 2]), Verdict::Bad);
        assert_eq!(v(&[2, 1, 2]), Verdict::Bad);
        assert_eq!(v(&[2, 2]), Verdict::Neither);
        assert!(GoodnessProfile::of_word(&[4], &tables).is_err());
        assert!(TransitionTables::new(25).is_err());
    }
}
