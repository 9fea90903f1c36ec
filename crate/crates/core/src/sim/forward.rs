use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::distribution::MoveDistribution;
use crate::error::{Error, Result};
use crate::rng;

/// Number of blocks used for the batch-means standard error.
const BATCHES: u64 = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub steps: u64,
    pub front_final: i64,
    pub speed_estimate: f64,
    /// Batch-means standard error of the speed.
    pub stderr: f64,
    pub seed: u64,
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs replica `replica` of the forward chain for `n` steps, reading
/// `ξ_1, ξ_2, …` from that replica's future stream.
pub fn run_forward_replica(
    mu: &MoveDistribution,
    x0: &Configuration,
    n: u64,
    seed: u64,
    replica: u64,
) -> Result<RunStats> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "a forward run needs at least one step".into(),
        ));
    }
    let mut rng = rng::future_stream(seed, replica);
    let mut x = x0.clone();
    let batches = BATCHES.min(n);
    let mut rates = Vec::with_capacity(batches as usize);
    let mut done = 0;
    for b in 0..batches {
        let end = n * (b + 1) / batches;
        let start_front = x.front();
        for _ in done..end {
            let a = mu.quantile(rng::unit(&mut rng));
            x.apply_move(a);
        }
        rates.push((x.front() - start_front) as f64 / (end - done) as f64);
        done = end;
    }
    let (_, sd) = mean_sd(&rates);
    Ok(RunStats {
        steps: n,
        front_final: x.front(),
        speed_estimate: (x.front() - x0.front()) as f64 / n as f64,
        stderr: sd / (batches as f64).sqrt(),
        seed,
    })
}

/// `F(X_n)/n` for a single chain.
pub fn run_forward(
    mu: &MoveDistribution,
    x0: &Configuration,
    n: u64,
    seed: u64,
) -> Result<RunStats> {
    run_forward_replica(mu, x0, n, seed, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardSummary {
    pub steps: u64,
    pub replicas: u64,
    pub estimate: f64,
    /// Standard error of the mean over replicas.
    pub stderr: f64,
    pub seed: u64,
    pub runs: Vec<RunStats>,
}

/// Independent forward chains, one per replica, in parallel.
pub fn run_forward_replicas(
    mu: &MoveDistribution,
    x0: &Configuration,
    n: u64,
    replicas: u64,
    seed: u64,
) -> Result<ForwardSummary> {
    if replicas == 0 {
        return Err(Error::InvalidParameter("replicas must be positive".into()));
    }
    let runs = (0..replicas)
        .into_par_iter()
        .map(|r| run_forward_replica(mu, x0, n, seed, r))
        .collect::<Result<Vec<_>>>()?;
    let speeds: Vec<f64> = runs.iter().map(|r| r.speed_estimate).collect();
    let (estimate, sd) = mean_sd(&speeds);
    let stderr = if replicas > 1 {
        sd / (replicas as f64).sqrt()
    } else {
        runs[0].stderr
    };
    Ok(ForwardSummary {
        steps: n,
        replicas,
        estimate,
        stderr,
        seed,
        runs,
    })
}
