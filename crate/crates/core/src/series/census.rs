//! Monomial census of the stopping-time tree.
//!
//! Under letter weights of the form `j ↦ p q^(j−1)` a word `α` weighs
//! `p^|α| q^(Σ(α_j − 1))`, so one enumeration that counts leaves by
//! `(length, excess)` serves every `(p, q)` at once. This is what the
//! growth-rate curve and the bivariate series are computed from.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::sum::CompensatedSum;
use crate::series::tree::{walk, TreeVisitor, Truncation};
use crate::word::Letter;
use crate::words::Verdict;

#[derive(Clone, Copy)]
struct Monomial {
    len: u32,
    excess: u32,
}

/// Leaf and frontier counts indexed by `(length, excess)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub trunc: Truncation,
    width: usize,
    good: Vec<u64>,
    bad: Vec<u64>,
    frontier: Vec<u64>,
    /// Nodes whose prepends above the alphabet bound went to the frontier.
    beyond: Vec<u64>,
}

/// Partial sums of the census at one `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensusSums {
    pub good: f64,
    pub bad: f64,
    pub frontier: f64,
    pub rounding_bound: f64,
}

struct CensusVisitor<'a> {
    width: usize,
    /// `(ln p, ln q)` points used by the pruning rule.
    prune_points: &'a [(f64, f64)],
    min_weight: f64,
    good: Vec<u64>,
    bad: Vec<u64>,
    frontier: Vec<u64>,
    beyond: Vec<u64>,
}

#[inline]
fn ln_monomial(len: u32, excess: u32, ln_p: f64, ln_q: f64) -> f64 {
    let a = if len == 0 { 0.0 } else { len as f64 * ln_p };
    let b = if excess == 0 {
        0.0
    } else {
        excess as f64 * ln_q
    };
    a + b
}

impl CensusVisitor<'_> {
    fn idx(&self, m: &Monomial) -> usize {
        m.len as usize * self.width + m.excess as usize
    }
}

impl TreeVisitor for CensusVisitor<'_> {
    type Node = Monomial;

    fn root(&self) -> Monomial {
        Monomial { len: 0, excess: 0 }
    }

    fn child(&self, node: &Monomial, a: Letter) -> Option<Monomial> {
        Some(Monomial {
            len: node.len + 1,
            excess: node.excess + a - 1,
        })
    }

    fn worth_expanding(&self, node: &Monomial) -> bool {
        if self.min_weight == 0.0 {
            return true;
        }
        let ln_min = self.min_weight.ln();
        self.prune_points
            .iter()
            .any(|&(lp, lq)| ln_monomial(node.len, node.excess, lp, lq) >= ln_min)
    }

    fn leaf(&mut self, node: &Monomial, _path: &[Letter], verdict: Verdict) {
        let i = self.idx(node);
        match verdict {
            Verdict::Good => self.good[i] += 1,
            Verdict::Bad => self.bad[i] += 1,
            Verdict::Neither => unreachable!("neither-nodes are not leaves"),
        }
    }

    fn frontier(&mut self, node: &Monomial, _path: &[Letter]) {
        let i = self.idx(node);
        self.frontier[i] += 1;
    }

    fn beyond_alphabet(&mut self, node: &Monomial, _path: &[Letter]) {
        let i = self.idx(node);
        self.beyond[i] += 1;
    }

    fn fresh(&self) -> Self {
        let n = self.good.len();
        CensusVisitor {
            width: self.width,
            prune_points: self.prune_points,
            min_weight: self.min_weight,
            good: vec![0; n],
            bad: vec![0; n],
            frontier: vec![0; n],
            beyond: vec![0; n],
        }
    }

    fn merge(&mut self, other: Self) {
        for (dst, src) in [
            (&mut self.good, &other.good),
            (&mut self.bad, &other.bad),
            (&mut self.frontier, &other.frontier),
            (&mut self.beyond, &other.beyond),
        ] {
            for (d, s) in dst.iter_mut().zip(src) {
                *d += s;
            }
        }
    }
}

impl Census {
    /// Enumerates the tree once. A neither-node is expanded when its monomial
    /// reaches `trunc.min_weight` at one of `prune_at` (pairs `(p, q)`), or
    /// always when `min_weight` is zero.
    pub fn build(trunc: Truncation, prune_at: &[(f64, f64)]) -> Result<Census> {
        if trunc.min_weight > 0.0 && prune_at.is_empty() {
            return Err(Error::InvalidParameter(
                "pruning by weight needs at least one evaluation point".into(),
            ));
        }
        let points: Vec<(f64, f64)> = prune_at.iter().map(|&(p, q)| (p.ln(), q.ln())).collect();
        let width = trunc.max_len * (trunc.max_letter as usize - 1) + 1;
        let n = (trunc.max_len + 1) * width;
        let v = walk(
            CensusVisitor {
                width,
                prune_points: &points,
                min_weight: trunc.min_weight,
                good: vec![0; n],
                bad: vec![0; n],
                frontier: vec![0; n],
                beyond: vec![0; n],
            },
            trunc,
        )?;
        Ok(Census {
            trunc,
            width,
            good: v.good,
            bad: v.bad,
            frontier: v.frontier,
            beyond: v.beyond,
        })
    }

    pub fn good_leaves(&self) -> u64 {
        self.good.iter().sum()
    }

    pub fn bad_leaves(&self) -> u64 {
        self.bad.iter().sum()
    }

    /// Number of minimal good words with the given length and excess.
    pub fn good_count(&self, len: usize, excess: usize) -> u64 {
        if len > self.trunc.max_len || excess >= self.width {
            return 0;
        }
        self.good[len * self.width + excess]
    }

    /// Partial sums at `(p, q)`. The frontier includes, for every node cut
    /// at the alphabet bound, the full tail `Σ_{j > A} p q^(j−1)`, which is
    /// infinite when `q ≥ 1`.
    pub fn evaluate(&self, p: f64, q: f64) -> CensusSums {
        let a = self.trunc.max_letter;
        let tail = if p == 0.0 {
            0.0
        } else if q < 1.0 {
            p * q.powi(a as i32) / (1.0 - q)
        } else {
            f64::INFINITY
        };
        let mut good = CompensatedSum::new();
        let mut bad = CompensatedSum::new();
        let mut frontier = CompensatedSum::new();
        let mut propagated = 0.0;
        let u = f64::EPSILON / 2.0;
        for len in 0..=self.trunc.max_len {
            for excess in 0..self.width {
                let i = len * self.width + excess;
                let (g, b, f, t) = (self.good[i], self.bad[i], self.frontier[i], self.beyond[i]);
                if g == 0 && b == 0 && f == 0 && t == 0 {
                    continue;
                }
                let mono = p.powi(len as i32) * q.powi(excess as i32);
                let ops = (2 * (usize::BITS - len.leading_zeros())
                    + 2 * (usize::BITS - excess.leading_zeros())
                    + 4) as f64;
                if g > 0 {
                    let x = g as f64 * mono;
                    good += x;
                    propagated += x * ops * u;
                }
                if b > 0 {
                    let x = b as f64 * mono;
                    bad += x;
                    propagated += x * ops * u;
                }
                if f > 0 {
                    let x = f as f64 * mono;
                    frontier += x;
                    propagated += x * ops * u;
                }
                if t > 0 && tail > 0.0 {
                    let x = t as f64 * mono * tail;
                    frontier += x;
                    propagated += x * (ops + 2.0 * a as f64 + 4.0) * u;
                }
            }
        }
        CensusSums {
            good: good.value(),
            bad: bad.value(),
            frontier: frontier.value(),
            rounding_bound: propagated
                + good.error_bound()
                + bad.error_bound()
                + frontier.error_bound(),
        }
    }
}
