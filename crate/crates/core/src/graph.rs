//! Barak-Erdős graphs: longest paths and the growth rate `C(p)`.
//!
//! Vertices are added one at a time. The value of vertex `j` is the length of
//! the longest path ending at `j`, i.e. `1 + max value(i)` over its in-edges
//! `i → j`, or 0 without in-edges. In-edges are scanned from `i = j − 1`
//! downwards, and the scan stops as soon as no earlier vertex can beat the
//! best value found (a running prefix maximum tells), so the unexamined
//! edges never matter.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::rng;

/// How edge indicators are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeSampler {
    /// Geometric gaps between consecutive in-edges, read from the replica's
    /// graph stream.
    Skip,
    /// One uniform per vertex pair `(i, j)`, edge iff it is at most `p`.
    /// Graphs for different `p` and the same seed are nested.
    PairHash,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongestPathRun {
    pub n: u64,
    pub p: f64,
    #[serde(rename = "L_n")]
    pub l_n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_vertex: Option<Vec<u32>>,
    pub seed: u64,
}

fn pair_key(seed: u64, replica: u64) -> u64 {
    rng::mix64(seed ^ rng::mix64(replica.wrapping_add(rng::GRAPH_STREAM_BASE)))
}

/// Whether the pair-hash sampler puts the edge `i → j` (0-based, `i < j`)
/// into replica `replica`.
pub fn pair_edge(seed: u64, replica: u64, i: u64, j: u64, p: f64) -> bool {
    rng::pair_unit(pair_key(seed, replica), i, j) <= p
}

enum Edges {
    Skip { rng: ChaCha8Rng, ln_q: f64 },
    PairHash { key: u64 },
}

struct Grower {
    p: f64,
    edges: Edges,
    values: Vec<u32>,
    /// `prefix_max[i]` is the largest value among vertices `0..=i`.
    prefix_max: Vec<u32>,
}

impl Grower {
    fn new(n: u64, p: f64, sampler: EdgeSampler, seed: u64, replica: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "a graph needs at least one vertex".into(),
            ));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "edge probability {p} outside [0, 1]"
            )));
        }
        let edges = match sampler {
            EdgeSampler::Skip => Edges::Skip {
                rng: rng::graph_stream(seed, replica),
                ln_q: (1.0 - p).ln(),
            },
            EdgeSampler::PairHash => Edges::PairHash {
                key: pair_key(seed, replica),
            },
        };
        Ok(Grower {
            p,
            edges,
            values: Vec::with_capacity(n as usize),
            prefix_max: Vec::with_capacity(n as usize),
        })
    }

    /// Adds vertex `j` (0-based) and returns its value.
    fn add(&mut self) -> u32 {
        let j = self.values.len();
        let mut best: Option<u32> = None;
        if self.p > 0.0 {
            match &mut self.edges {
                Edges::Skip { rng, ln_q } => {
                    let mut i = j;
                    loop {
                        let gap = if self.p == 1.0 {
                            1
                        } else {
                            let g = (rng::unit(rng).ln() / *ln_q).ceil();
                            if g > i as f64 {
                                i + 1
                            } else {
                                (g as usize).max(1)
                            }
                        };
                        if gap > i {
                            break;
                        }
                        i -= gap;
                        let v = self.values[i] + 1;
                        if best.is_none_or(|b| v > b) {
                            best = Some(v);
                        }
                        if i == 0 || self.prefix_max[i - 1] < best.unwrap() {
                            break;
                        }
                    }
                }
                Edges::PairHash { key } => {
                    for i in (0..j).rev() {
                        if let Some(b) = best {
                            if self.prefix_max[i] < b {
                                break;
                            }
                        }
                        if rng::pair_unit(*key, i as u64, j as u64) <= self.p {
                            let v = self.values[i] + 1;
                            if best.is_none_or(|b| v > b) {
                                best = Some(v);
                            }
                        }
                    }
                }
            }
        }
        let v = best.unwrap_or(0);
        let m = self.prefix_max.last().map_or(v, |&m| m.max(v));
        self.values.push(v);
        self.prefix_max.push(m);
        v
    }

    fn front(&self) -> u32 {
        self.prefix_max.last().copied().unwrap_or(0)
    }
}

/// Longest path of replica `replica` of `G(n, p)`.
pub fn longest_path_with(
    n: u64,
    p: f64,
    sampler: EdgeSampler,
    seed: u64,
    replica: u64,
    keep_per_vertex: bool,
) -> Result<LongestPathRun> {
    let mut g = Grower::new(n, p, sampler, seed, replica)?;
    for _ in 0..n {
        g.add();
    }
    Ok(LongestPathRun {
        n,
        p,
        l_n: g.front() as u64,
        per_vertex: keep_per_vertex.then_some(g.values),
        seed,
    })
}

pub fn longest_path(n: u64, p: f64, seed: u64, keep_per_vertex: bool) -> Result<LongestPathRun> {
    longest_path_with(n, p, EdgeSampler::Skip, seed, 0, keep_per_vertex)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    pub p: f64,
    pub n: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub replicas: u64,
    pub seed: u64,
}

/// Mean of `L_n / n` over independent graphs.
pub fn estimate_c(p: f64, n: u64, replicas: u64, seed: u64) -> Result<GrowthEstimate> {
    if replicas == 0 {
        return Err(Error::InvalidParameter("replicas must be positive".into()));
    }
    let ratios = (0..replicas)
        .into_par_iter()
        .map(|r| {
            longest_path_with(n, p, EdgeSampler::Skip, seed, r, false)
                .map(|run| run.l_n as f64 / n as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let k = replicas as f64;
    let estimate = ratios.iter().sum::<f64>() / k;
    let stderr = if replicas > 1 {
        let var = ratios
            .iter()
            .map(|x| (x - estimate) * (x - estimate))
            .sum::<f64>()
            / (k - 1.0);
        (var / k).sqrt()
    } else {
        0.0
    };
    Ok(GrowthEstimate {
        p,
        n,
        estimate,
        stderr,
        replicas,
        seed,
    })
}

/// Front (largest value) after each of the `n` vertices, for replica
/// `replica`. The last entry is that graph's `L_n`.
pub fn fk_coupling_trajectory(n: u64, p: f64, seed: u64, replica: u64) -> Result<Vec<u32>> {
    let mut g = Grower::new(n, p, EdgeSampler::Skip, seed, replica)?;
    Ok((0..n)
        .map(|_| {
            g.add();
            g.front()
        })
        .collect())
}

/// The vertex values seen as balls in bins: bin `v` holds the vertices of
/// value `v`. Bins `0..=front` are all non-empty.
pub fn values_configuration(values: &[u32]) -> Result<Configuration> {
    let front = values
        .iter()
        .copied()
        .max()
        .ok_or_else(|| Error::InvalidConfiguration("no vertices".into()))?;
    let mut counts = vec![0u64; front as usize + 1];
    for &v in values {
        counts[v as usize] += 1;
    }
    Configuration::from_window(front as i64, &counts)
}
