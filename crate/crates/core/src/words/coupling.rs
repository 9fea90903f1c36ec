//! Exact coupling numbers.
//!
//! Moves with letters at most `m` only ever look at the rightmost `m` balls of
//! the running configuration, and the balls added by the word are among
//! them. Starting from a layout of the rightmost `m` balls, the trajectory of
//! the added balls relative to the front is therefore fixed, and every bin
//! strictly right of the bin holding ball `m` has a count determined by the
//! layout. That bin and the ones left of it can hold arbitrarily many balls,
//! so a scenery reaching them is never coupled.

use crate::error::{Error, Result};
use crate::word::Letter;
use crate::words::layout::layout_configuration;
use crate::words::MAX_EXACT_LETTER;

/// `𝔠(γ)`: the largest `K` such that the `K`-scenery after `γ` does not
/// depend on the start configuration.
pub fn coupling_number(word: &[Letter]) -> Result<usize> {
    let m = word.iter().copied().max().ok_or(Error::EmptyWord)?;
    if m > MAX_EXACT_LETTER {
        return Err(Error::SizeLimit {
            what: "letter",
            value: m as u64,
            limit: MAX_EXACT_LETTER as u64,
        });
    }
    let mut sceneries = Vec::with_capacity(1 << (m - 1));
    let mut certain = usize::MAX;
    for mask in 0..1u32 << (m - 1) {
        let start = layout_configuration(m, mask);
        let deepest_known = start.bin_of_kth_rightmost(m as u64);
        let end = start.with_word(word);
        let depth = (end.front() - deepest_known) as usize;
        certain = certain.min(depth);
        sceneries.push(end);
    }
    let reference = sceneries[0].scenery(certain);
    let mut k = certain;
    for end in &sceneries[1..] {
        let other = end.scenery(certain);
        // Longest common suffix, read from the front.
        let agree = reference
            .iter()
            .rev()
            .zip(other.iter().rev())
            .take_while(|(a, b)| a == b)
            .count();
        k = k.min(agree);
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(coupling_number(&[2, 3, 2, 2]).unwrap(), 1);
        assert_eq!(coupling_number(&[2, 3, 2, 2, 5]).unwrap(), 0);
        assert_eq!(coupling_number(&[1]).unwrap(), 1);
        assert_eq!(coupling_number(&[1, 1]).unwrap(), 2);
        assert_eq!(coupling_number(&[1, 1, 1]).unwrap(), 3);
        assert_eq!(coupling_number(&[2]).unwrap(), 0);
        assert_eq!(coupling_number(&[]), Err(Error::EmptyWord));
        assert!(coupling_number(&[31]).is_err());
    }

    /// Brute force over explicit start configurations with extra balls in
    /// deep bins; any scenery the exact routine calls coupled must agree.
    #[test]
    fn coupled_sceneries_agree_on_richer_starts() {
        use crate::config::Configuration;
        let starts: Vec<Configuration> = [
            vec![1],
            vec![5, 1],
            vec![3, 2, 1],
            vec![1, 1, 4],
            vec![2, 2, 2, 2],
            vec![7, 1, 3, 1, 1],
            vec![1, 6],
            vec![4, 1, 1, 2, 3],
        ]
        .into_iter()
        .map(|w| Configuration::from_window(0, &w).unwrap())
        .collect();
        let words: [&[Letter]; 6] = [
            &[2, 3, 2, 2],
            &[1, 1, 2],
            &[1, 2, 1, 1],
            &[3, 1, 1, 2, 1],
            &[2, 1, 1, 1],
            &[1, 3, 1, 1, 1],
        ];
        for w in words {
            let k = coupling_number(w).unwrap();
            let ends: Vec<Vec<u64>> = starts.iter().map(|x| x.with_word(w).scenery(k)).collect();
            assert!(ends.windows(2).all(|p| p[0] == p[1]), "{w:?} K={k}");
            let wider: Vec<Vec<u64>> = starts
                .iter()
                .map(|x| x.with_word(w).scenery(k + 1))
                .collect();
            assert!(
                wider.windows(2).any(|p| p[0] != p[1]),
                "{w:?} should not be {} -coupling",
                k + 1
            );
        }
    }
}
