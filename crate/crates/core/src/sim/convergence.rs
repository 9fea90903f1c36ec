use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::distribution::MoveDistribution;
use crate::error::{Error, Result};
use crate::sim::perfect::{perfect_sample_on, track_past, PerfectOptions};
use crate::sim::tape::LetterTape;
use crate::words::TrackerState;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// First `n` from which `Π_K(X_m) = Π_K(Y_m)` for every `m ≤ n_max`.
    pub coupled_at: Option<u64>,
    pub first_agreement: Option<u64>,
    /// Times an agreement was followed by a disagreement.
    pub relapses: u64,
    /// Times the carried tracker fell below depth `K` and the past had to
    /// be extended.
    pub recertifications: u64,
    pub front_x: i64,
    /// Front of the stationary chain, anchored at `F(Y_0) = 0`.
    pub front_y: i64,
    pub n_max: u64,
    pub seed: u64,
}

/// Runs `X_n` from `x0` and the stationary chain `Y_n` on the same letters
/// (replica 0 of `seed`) and records when their `K`-sceneries agree.
pub fn coupling_convergence_check(
    mu: &MoveDistribution,
    x0: &Configuration,
    k: usize,
    n_max: u64,
    seed: u64,
    opts: PerfectOptions,
) -> Result<ConvergenceReport> {
    let mut past = LetterTape::past(mu, seed, 0);
    let mut future = LetterTape::future(mu, seed, 0);
    let sample = perfect_sample_on(&mut past, k, opts)?;
    let mut past_len = sample.tau + 1;
    let mut y: TrackerState = track_past(&mut past, past_len as usize);

    let mut x = x0.clone();
    let mut front_y = 0i64;
    let mut first_agreement = None;
    let mut last_disagreement = None;
    let mut relapses = 0;
    let mut recertifications = 0;
    let mut agreed = false;
    for n in 0..=n_max {
        if n > 0 {
            let a = future.get(n as usize - 1);
            x.apply_move(a);
            if y.step(a).expect("depth is at least K before every step") {
                front_y += 1;
            }
            if y.depth() < k {
                recertifications += 1;
                loop {
                    if past_len >= opts.max_horizon {
                        return Err(Error::NoCoupling {
                            horizon: past_len,
                            best_depth: y.depth(),
                            requested: k,
                        });
                    }
                    past_len = (past_len * 2).min(opts.max_horizon);
                    y = track_past(&mut past, past_len as usize);
                    for &b in future.prefix(n as usize) {
                        y.step(b);
                    }
                    if y.depth() >= k {
                        break;
                    }
                }
            }
        }
        let agree = x.scenery(k) == y.scenery(k).expect("depth is at least K");
        if agree {
            first_agreement.get_or_insert(n);
        } else {
            if agreed {
                relapses += 1;
            }
            last_disagreement = Some(n);
        }
        agreed = agree;
    }
    let coupled_at = match last_disagreement {
        None => Some(0),
        Some(n) if n == n_max => None,
        Some(n) => Some(n + 1),
    };
    Ok(ConvergenceReport {
        coupled_at,
        first_agreement,
        relapses,
        recertifications,
        front_x: x.front(),
        front_y,
        n_max,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_one_couples_at_once() {
        let mu = MoveDistribution::dirac(1).unwrap();
        let r = coupling_convergence_check(
            &mu,
            &Configuration::minimal(0),
            2,
            50,
            1,
            PerfectOptions::default(),
        )
        .unwrap();
        assert!(r.coupled_at.unwrap() <= 2);
        assert_eq!(r.front_y, 50);
    }
}
