//! Relative placements of the rightmost balls of a configuration.
//!
//! A layout of size `h` records, for balls `2..=h` (ranked from the right),
//! whether ball `i` sits in the same bin as ball `i - 1` (bit clear) or one
//! bin further left (bit set). Bit `i - 2` of the mask holds that choice, so
//! there are `2^(h-1)` layouts of size `h`.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::words::MAX_EXACT_LETTER;

pub type Mask = u32;

/// Bin counts of a layout, front bin first. The deepest entry counts only
/// the layout's own balls.
pub fn layout_bins(h: u32, mask: Mask) -> Vec<u64> {
    let mut bins = vec![1u64];
    for i in 2..=h {
        if mask >> (i - 2) & 1 == 1 {
            bins.push(1);
        } else {
            *bins.last_mut().unwrap() += 1;
        }
    }
    bins
}

/// Mask of the top `h` balls of bins given front first. The bins must hold
/// at least `h` balls.
pub fn layout_mask(bins: &[u64], h: u32) -> Mask {
    let mut mask = 0;
    let mut ball = 0u32;
    for (b, &c) in bins.iter().enumerate() {
        for first in (0..c).map(|i| i == 0) {
            ball += 1;
            if ball > h {
                return mask;
            }
            if first && b > 0 {
                mask |= 1 << (ball - 2);
            }
        }
    }
    debug_assert!(ball >= h, "layout needs {h} balls, bins hold {ball}");
    mask
}

/// The configuration with its front at 0 whose rightmost `h` balls follow
/// `mask`, with one ball per bin below the deepest of them.
pub fn layout_configuration(h: u32, mask: Mask) -> Configuration {
    Configuration::from_front_counts(0, layout_bins(h, mask))
}

/// One configuration per layout of size `h`, in mask order.
pub fn test_set(h: u32) -> Result<Vec<Configuration>> {
    if h == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    if h > MAX_EXACT_LETTER {
        return Err(Error::SizeLimit {
            what: "horizon",
            value: h as u64,
            limit: MAX_EXACT_LETTER as u64,
        });
    }
    Ok((0..1u32 << (h - 1))
        .map(|m| layout_configuration(h, m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_test_sets() {
        let one = test_set(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].window(), vec![1]);

        let two = test_set(2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].window(), vec![2]);
        assert_eq!(two[1].window(), vec![1, 1]);

        assert_eq!(test_set(3).unwrap().len(), 4);
        assert!(test_set(0).is_err());
        assert!(matches!(test_set(31), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn layouts_are_distinct_placements() {
        for h in 1..=7 {
            let set = test_set(h).unwrap();
            let mut placements: Vec<Vec<i64>> = set
                .iter()
                .map(|x| (1..=h as u64).map(|k| x.bin_of_kth_rightmost(k)).collect())
                .collect();
            placements.sort();
            placements.dedup();
            assert_eq!(placements.len(), 1 << (h - 1));
            for x in &set {
                assert_eq!(x.front(), 0);
            }
        }
    }

    #[test]
    fn mask_round_trip() {
        for h in 1..=8 {
            for m in 0..1u32 << (h - 1) {
                assert_eq!(layout_mask(&layout_bins(h, m), h), m);
            }
        }
        // Deeper balls do not change the mask of the top ones.
        assert_eq!(layout_mask(&[2, 3, 1], 3), 0b10);
    }
}
