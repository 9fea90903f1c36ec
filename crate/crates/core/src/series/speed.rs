use serde::{Deserialize, Serialize};

use crate::distribution::MoveDistribution;
use crate::error::Result;
use crate::series::sum::CompensatedSum;
use crate::series::tree::{walk, TreeVisitor, Truncation};
use crate::word::{Letter, Word};
use crate::words::Verdict;

/// A minimal good or bad word found by the enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    pub word: Word,
    pub verdict: Verdict,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketParams {
    pub mu: String,
    pub max_len: usize,
    pub max_letter: Letter,
    pub min_weight: f64,
}

/// Certified two-sided bounds on the front speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedBracket {
    pub lower: f64,
    pub upper: f64,
    /// Total weight of the minimal good words found (equals `lower`).
    pub good_mass: f64,
    /// Total weight of the minimal bad words found (equals `1 - upper`).
    pub bad_mass: f64,
    /// Weight of the unexplored part of the tree.
    pub frontier_mass: f64,
    /// First-order bound on the floating-point error of every mass above.
    pub rounding_bound: f64,
    pub good_leaves: u64,
    pub bad_leaves: u64,
    pub frontier_nodes: u64,
    /// The law is a point mass, for which the series does not give the speed.
    pub degenerate: bool,
    pub params: BracketParams,
}

impl SpeedBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        x >= self.lower - slack && x <= self.upper + slack
    }
}

#[derive(Clone, Copy)]
struct WeightedNode {
    weight: f64,
    /// Floating-point operations that produced `weight`; each one costs at
    /// most one unit roundoff of relative error.
    ops: u32,
}

const PMF_OPS: u32 = 4;

struct SpeedVisitor<'a> {
    mu: &'a MoveDistribution,
    pmf: Vec<f64>,
    tail: f64,
    min_weight: f64,
    record: bool,
    good: CompensatedSum,
    bad: CompensatedSum,
    frontier: CompensatedSum,
    propagated: f64,
    good_leaves: u64,
    bad_leaves: u64,
    frontier_nodes: u64,
    leaves: Vec<Leaf>,
}

fn word_of(path: &[Letter]) -> Word {
    Word::new(path.iter().rev().copied().collect()).expect("letters are positive")
}

impl<'a> SpeedVisitor<'a> {
    fn new(mu: &'a MoveDistribution, trunc: &Truncation, record: bool) -> Self {
        SpeedVisitor {
            mu,
            pmf: (1..=trunc.max_letter).map(|j| mu.pmf(j)).collect(),
            tail: mu.tail_mass(trunc.max_letter),
            min_weight: trunc.min_weight,
            record,
            good: CompensatedSum::new(),
            bad: CompensatedSum::new(),
            frontier: CompensatedSum::new(),
            propagated: 0.0,
            good_leaves: 0,
            bad_leaves: 0,
            frontier_nodes: 0,
            leaves: Vec::new(),
        }
    }

    fn charge(&mut self, weight: f64, ops: u32) {
        self.propagated += weight * ops as f64 * (f64::EPSILON / 2.0);
    }
}

impl TreeVisitor for SpeedVisitor<'_> {
    type Node = WeightedNode;

    fn root(&self) -> WeightedNode {
        WeightedNode {
            weight: 1.0,
            ops: 0,
        }
    }

    fn child(&self, node: &WeightedNode, a: Letter) -> Option<WeightedNode> {
        let q = self.pmf[a as usize - 1];
        (q > 0.0).then(|| WeightedNode {
            weight: node.weight * q,
            ops: node.ops + PMF_OPS + 1,
        })
    }

    fn worth_expanding(&self, node: &WeightedNode) -> bool {
        node.weight >= self.min_weight
    }

    fn leaf(&mut self, node: &WeightedNode, path: &[Letter], verdict: Verdict) {
        match verdict {
            Verdict::Good => {
                self.good += node.weight;
                self.good_leaves += 1;
            }
            Verdict::Bad => {
                self.bad += node.weight;
                self.bad_leaves += 1;
            }
            Verdict::Neither => unreachable!("neither-nodes are not leaves"),
        }
        self.charge(node.weight, node.ops);
        if self.record {
            self.leaves.push(Leaf {
                word: word_of(path),
                verdict,
                weight: node.weight,
            });
        }
    }

    fn frontier(&mut self, node: &WeightedNode, _path: &[Letter]) {
        self.frontier += node.weight;
        self.frontier_nodes += 1;
        self.charge(node.weight, node.ops);
    }

    fn beyond_alphabet(&mut self, node: &WeightedNode, _path: &[Letter]) {
        if self.tail > 0.0 {
            let w = node.weight * self.tail;
            self.frontier += w;
            self.frontier_nodes += 1;
            self.charge(w, node.ops + PMF_OPS + 1);
        }
    }

    fn fresh(&self) -> Self {
        SpeedVisitor {
            mu: self.mu,
            pmf: self.pmf.clone(),
            tail: self.tail,
            min_weight: self.min_weight,
            record: self.record,
            good: CompensatedSum::new(),
            bad: CompensatedSum::new(),
            frontier: CompensatedSum::new(),
            propagated: 0.0,
            good_leaves: 0,
            bad_leaves: 0,
            frontier_nodes: 0,
            leaves: Vec::new(),
        }
    }

    fn merge(&mut self, other: Self) {
        self.good.merge(&other.good);
        self.bad.merge(&other.bad);
        self.frontier.merge(&other.frontier);
        self.propagated += other.propagated;
        self.good_leaves += other.good_leaves;
        self.bad_leaves += other.bad_leaves;
        self.frontier_nodes += other.frontier_nodes;
        self.leaves.extend(other.leaves);
    }
}

/// Enumerates the minimal good and bad words of the backward stopping time
/// under `mu` and returns the resulting bracket on the speed. Leaves are
/// passed to `emit` in depth-first order (letters prepended in increasing
/// order).
pub fn enumerate_minimal(
    mu: &MoveDistribution,
    trunc: Truncation,
    emit: Option<&mut dyn FnMut(&Leaf)>,
) -> Result<SpeedBracket> {
    let v = walk(SpeedVisitor::new(mu, &trunc, emit.is_some()), trunc)?;
    if let Some(f) = emit {
        for leaf in &v.leaves {
            f(leaf);
        }
    }
    let good = v.good.value();
    let bad = v.bad.value();
    let frontier = v.frontier.value();
    let rounding_bound = v.propagated
        + v.good.error_bound()
        + v.bad.error_bound()
        + v.frontier.error_bound()
        + 2.0 * f64::EPSILON;
    Ok(SpeedBracket {
        lower: good,
        upper: 1.0 - bad,
        good_mass: good,
        bad_mass: bad,
        frontier_mass: frontier,
        rounding_bound,
        good_leaves: v.good_leaves,
        bad_leaves: v.bad_leaves,
        frontier_nodes: v.frontier_nodes,
        degenerate: !mu.non_degenerate(),
        params: BracketParams {
            mu: mu.to_string(),
            max_len: trunc.max_len,
            max_letter: trunc.max_letter,
            min_weight: trunc.min_weight,
        },
    })
}

/// Bracket on the speed of the model with uniform law on `{1, …, k}`.
pub fn uniform_speed_terms(k: Letter, max_len: usize) -> Result<SpeedBracket> {
    let mu = MoveDistribution::uniform(k)?;
    enumerate_minimal(&mu, Truncation::new(max_len, k), None)
}

/// `μ(α)` products.
pub fn weight(word: &[Letter], mu: &MoveDistribution) -> f64 {
    word.iter().map(|&a| mu.pmf(a)).product()
}
