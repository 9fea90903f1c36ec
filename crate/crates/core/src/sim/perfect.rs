//! Coupling from the past.
//!
//! The past letters `ξ_0, ξ_{-1}, …` are read from an indexed tape. For a
//! candidate length `m` the tracker processes `ξ_{-m+1}, …, ξ_0` (oldest
//! first); once its certified depth reaches `K`, the `K` rightmost bins of
//! `Φ_{ξ_{-m+1} … ξ_0}(X)` are the same for every `X` and are those of `Y_0`.
//! Prepending letters never lowers the certified depth, so the shortest
//! certifying length is found by doubling and then bisecting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::MoveDistribution;
use crate::error::{Error, Result};
use crate::sim::tape::LetterTape;
use crate::words::TrackerState;

pub const DEFAULT_MAX_HORIZON: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectOptions {
    /// First horizon tried.
    pub start_horizon: u64,
    /// Longest past read before giving up.
    pub max_horizon: u64,
}

impl Default for PerfectOptions {
    fn default() -> Self {
        PerfectOptions {
            start_horizon: 1,
            max_horizon: DEFAULT_MAX_HORIZON,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectSample {
    /// `Π_K(Y_0)`, left to right.
    pub scenery: Vec<u64>,
    /// Letters `ξ_{-1}, ξ_{-2}, …` consumed beyond `ξ_0`: the word
    /// `ξ_{-tau} … ξ_0` is the shortest one the tracker certifies. This is an
    /// upper bound on the true `τ_K`.
    #[serde(rename = "tau")]
    pub tau: u64,
    #[serde(rename = "K")]
    pub k: usize,
}

/// Tracker state after `ξ_{-len+1}, …, ξ_0`.
pub(crate) fn track_past(tape: &mut LetterTape<'_>, len: usize) -> TrackerState {
    let mut s = TrackerState::new();
    for &a in tape.prefix(len).iter().rev() {
        s.step(a);
    }
    s
}

fn check_law(mu: &MoveDistribution) -> Result<()> {
    if !mu.non_degenerate() && mu.min_support() != 1 {
        return Err(Error::InvalidParameter(format!(
            "perfect sampling needs a non-degenerate law or the point mass at 1, got {mu}"
        )));
    }
    Ok(())
}

/// Perfect sample of `Π_K(Y_0)` from an existing past tape.
pub fn perfect_sample_on(
    tape: &mut LetterTape<'_>,
    k: usize,
    opts: PerfectOptions,
) -> Result<PerfectSample> {
    if k == 0 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    if opts.start_horizon == 0 || opts.start_horizon > opts.max_horizon {
        return Err(Error::InvalidParameter(
            "need 1 <= start_horizon <= max_horizon".into(),
        ));
    }
    let mut lo = 0u64;
    let mut hi = opts.start_horizon;
    let mut best_depth = 0;
    loop {
        let depth = track_past(tape, hi as usize).depth();
        best_depth = best_depth.max(depth);
        if depth >= k {
            break;
        }
        if hi == opts.max_horizon {
            return Err(Error::NoCoupling {
                horizon: hi,
                best_depth,
                requested: k,
            });
        }
        lo = hi;
        hi = (hi * 2).min(opts.max_horizon);
    }
    // Invariant: length `lo` does not certify (or is zero), `hi` does.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if track_past(tape, mid as usize).depth() >= k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s = track_past(tape, hi as usize);
    Ok(PerfectSample {
        scenery: s.scenery(k).expect("certified depth"),
        tau: hi - 1,
        k,
    })
}

/// Perfect sample for replica `replica` of `seed`.
pub fn perfect_sample(
    mu: &MoveDistribution,
    k: usize,
    seed: u64,
    replica: u64,
    opts: PerfectOptions,
) -> Result<PerfectSample> {
    check_law(mu)?;
    perfect_sample_on(&mut LetterTape::past(mu, seed, replica), k, opts)
}

/// Independent perfect samples, replicas `0..replicas`, in replica order.
pub fn perfect_samples(
    mu: &MoveDistribution,
    k: usize,
    replicas: u64,
    seed: u64,
    opts: PerfectOptions,
) -> Result<Vec<PerfectSample>> {
    check_law(mu)?;
    (0..replicas)
        .into_par_iter()
        .map(|r| perfect_sample(mu, k, seed, r, opts))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub successes: u64,
    pub seed: u64,
}

/// Estimates `v_μ = P(F(Y_1) = 1)`: the front of the stationary chain
/// advances at time 1 exactly when `ξ_1 ≤ Y_0(0)`.
pub fn stationary_speed(
    mu: &MoveDistribution,
    samples: u64,
    seed: u64,
    opts: PerfectOptions,
) -> Result<StationaryEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    check_law(mu)?;
    let hits = (0..samples)
        .into_par_iter()
        .map(|r| {
            let y0 = perfect_sample(mu, 1, seed, r, opts)?.scenery[0];
            let xi1 = LetterTape::future(mu, seed, r).get(0);
            Ok(u64::from(xi1 as u64 <= y0))
        })
        .collect::<Result<Vec<u64>>>()?;
    let successes: u64 = hits.iter().sum();
    let p = successes as f64 / samples as f64;
    Ok(StationaryEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        successes,
        seed,
    })
}

/// Empirical distribution of the certified `τ_K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauTail {
    #[serde(rename = "K")]
    pub k: usize,
    pub replicas: u64,
    /// `histogram[t]` replicas had `τ = t`.
    pub histogram: Vec<u64>,
    pub seed: u64,
}

impl TauTail {
    pub fn from_samples(k: usize, samples: &[PerfectSample], seed: u64) -> Self {
        let top = samples.iter().map(|s| s.tau).max().unwrap_or(0) as usize;
        let mut histogram = vec![0u64; top + 1];
        for s in samples {
            histogram[s.tau as usize] += 1;
        }
        TauTail {
            k,
            replicas: samples.len() as u64,
            histogram,
            seed,
        }
    }

    /// Empirical `P(τ > n)`.
    pub fn survival(&self, n: u64) -> f64 {
        let above: u64 = self.histogram.iter().skip(n as usize + 1).sum();
        above as f64 / self.replicas as f64
    }

    pub fn median(&self) -> u64 {
        let mut seen = 0;
        for (t, &c) in self.histogram.iter().enumerate() {
            seen += c;
            if 2 * seen >= self.replicas {
                return t as u64;
            }
        }
        self.histogram.len().saturating_sub(1) as u64
    }

    pub fn max(&self) -> u64 {
        self.histogram.len().saturating_sub(1) as u64
    }
}

pub fn tau_tail(
    mu: &MoveDistribution,
    k: usize,
    replicas: u64,
    seed: u64,
    opts: PerfectOptions,
) -> Result<TauTail> {
    if replicas == 0 {
        return Err(Error::InvalidParameter("replicas must be positive".into()));
    }
    let samples = perfect_samples(mu, k, replicas, seed, opts)?;
    Ok(TauTail::from_samples(k, &samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::coupling_number;

    #[test]
    fn dirac_one() {
        let mu = MoveDistribution::dirac(1).unwrap();
        let s = perfect_sample(&mu, 3, 1, 0, PerfectOptions::default()).unwrap();
        assert_eq!(s.scenery, vec![1, 1, 1]);
        assert!(s.tau <= 4);
        // (1,1,1) is the shortest all-ones word with coupling number 3.
        assert_eq!(coupling_number(&[1, 1, 1]).unwrap(), 3);
        assert_eq!(coupling_number(&[1, 1]).unwrap(), 2);
        assert_eq!(s.tau, 2);
    }

    #[test]
    fn degenerate_laws_are_rejected() {
        let mu = MoveDistribution::dirac(2).unwrap();
        assert!(perfect_sample(&mu, 1, 1, 0, PerfectOptions::default()).is_err());
    }

    #[test]
    fn horizon_limit() {
        let mu = MoveDistribution::geometric(0.05).unwrap();
        let opts = PerfectOptions {
            start_horizon: 1,
            max_horizon: 2,
        };
        let err = (0..50)
            .map(|r| perfect_sample(&mu, 5, 3, r, opts))
            .find_map(|r| r.err())
            .expect("some replica needs more than two letters");
        assert!(matches!(
            err,
            Error::NoCoupling {
                horizon: 2,
                requested: 5,
                ..
            }
        ));
    }

    #[test]
    fn geometric_one_speed() {
        let mu = MoveDistribution::geometric(1.0).unwrap();
        let e = stationary_speed(&mu, 200, 4, PerfectOptions::default()).unwrap();
        assert_eq!(e.estimate, 1.0);
    }
}
