//! Partial sums of the signed series `Σ ε_X(α) w_μ(α)`.
//!
//! Grouping the words by length, the partial sum over words of length at
//! most `L` with letters at most `A` equals
//! `Σ_{n ≤ L} G_n − μ([1, A]) Σ_{n < L} G_n`, where `G_n` is the weight of
//! the `X`-good words of length `n`: the second indicator of `ε_X` only looks
//! at the suffix after the first letter.

use crate::config::Configuration;
use crate::distribution::MoveDistribution;
use crate::error::{Error, Result};
use crate::series::sum::CompensatedSum;
use crate::word::Letter;

fn good_weights(
    x: &Configuration,
    depth: usize,
    weight: f64,
    pmf: &[f64],
    max_len: usize,
    by_len: &mut [CompensatedSum],
) {
    for (i, &q) in pmf.iter().enumerate() {
        if q == 0.0 {
            continue;
        }
        let mut y = x.clone();
        let w = weight * q;
        if y.apply_move(i as Letter + 1) {
            by_len[depth] += w;
        }
        if depth + 1 < max_len {
            good_weights(&y, depth + 1, w, pmf, max_len, by_len);
        }
    }
}

pub fn old_series_partial(
    mu: &MoveDistribution,
    x: &Configuration,
    max_len: usize,
    max_letter: Letter,
) -> Result<f64> {
    if max_len == 0 || max_letter == 0 {
        return Err(Error::InvalidParameter(
            "max_len and max_letter must be positive".into(),
        ));
    }
    let pmf: Vec<f64> = (1..=max_letter).map(|j| mu.pmf(j)).collect();
    let head: f64 = pmf.iter().sum();
    let mut by_len = vec![CompensatedSum::new(); max_len];
    good_weights(x, 0, 1.0, &pmf, max_len, &mut by_len);
    let mut total = CompensatedSum::new();
    for (n, g) in by_len.iter().enumerate() {
        total += g.value();
        if n + 1 < max_len {
            total += -head * g.value();
        }
    }
    Ok(total.value())
}
