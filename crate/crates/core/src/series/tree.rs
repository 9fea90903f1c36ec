//! The stopping-time tree of the backward letter stream.
//!
//! Words grow by prepending letters (reading further into the past). A node
//! whose word is good or bad is a leaf: it is minimal because none of its
//! suffixes stopped the walk earlier. Nodes that are neither are expanded
//! until the length bound, the alphabet bound or the visitor's pruning rule
//! stops them, and the unexplored mass is handed to the visitor as frontier.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Letter;
use crate::words::profile::{GoodnessProfile, TransitionTables, MAX_PROFILE_LETTER};
use crate::words::Verdict;

/// Default pruning weight for neither-nodes.
pub const DEFAULT_MIN_WEIGHT: f64 = 1e-10;

/// Depth at which the tree is cut into independent tasks.
const SPLIT_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Longest word explored.
    pub max_len: usize,
    /// Largest letter explored; heavier letters go to the frontier.
    pub max_letter: Letter,
    /// Neither-nodes lighter than this are not expanded.
    pub min_weight: f64,
}

impl Truncation {
    /// Bounds with the default pruning weight.
    pub fn new(max_len: usize, max_letter: Letter) -> Self {
        Truncation {
            max_len,
            max_letter,
            min_weight: DEFAULT_MIN_WEIGHT,
        }
    }

    /// Bounds without weight pruning.
    pub fn exact(max_len: usize, max_letter: Letter) -> Self {
        Truncation {
            max_len,
            max_letter,
            min_weight: 0.0,
        }
    }

    pub fn with_min_weight(mut self, w: f64) -> Self {
        self.min_weight = w;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_len == 0 {
            return Err(Error::InvalidParameter("max_len must be at least 1".into()));
        }
        if self.max_letter == 0 {
            return Err(Error::InvalidParameter(
                "max_letter must be at least 1".into(),
            ));
        }
        if self.max_letter > MAX_PROFILE_LETTER {
            return Err(Error::SizeLimit {
                what: "max_letter",
                value: self.max_letter as u64,
                limit: MAX_PROFILE_LETTER as u64,
            });
        }
        if !(self.min_weight >= 0.0 && self.min_weight.is_finite()) {
            return Err(Error::InvalidParameter(
                "min_weight must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Callbacks driven by [`walk`]. `path` holds the word's letters from the
/// last one backwards, i.e. in prepend order.
pub(crate) trait TreeVisitor: Send + Sync + Sized {
    type Node: Clone + Send + Sync;

    fn root(&self) -> Self::Node;
    /// `None` when prepending `a` has zero weight.
    fn child(&self, node: &Self::Node, a: Letter) -> Option<Self::Node>;
    fn worth_expanding(&self, node: &Self::Node) -> bool;
    fn leaf(&mut self, node: &Self::Node, path: &[Letter], verdict: Verdict);
    /// A neither-node that is not expanded.
    fn frontier(&mut self, node: &Self::Node, path: &[Letter]);
    /// All prepends of letters above the alphabet bound, at once.
    fn beyond_alphabet(&mut self, node: &Self::Node, path: &[Letter]);
    /// An empty accumulator with the same parameters.
    fn fresh(&self) -> Self;
    fn merge(&mut self, other: Self);
}

struct Task<N> {
    node: N,
    profile: GoodnessProfile,
    path: Vec<Letter>,
}

enum Piece<V: TreeVisitor> {
    Done(V),
    Todo(Task<V::Node>),
}

struct Walker<'a> {
    trunc: Truncation,
    tables: &'a TransitionTables,
}

impl Walker<'_> {
    /// Expands a neither-node (the root has no profile).
    fn expand<V: TreeVisitor>(
        &self,
        v: &mut V,
        node: &V::Node,
        profile: Option<&GoodnessProfile>,
        path: &mut Vec<Letter>,
        pieces: &mut Option<&mut Vec<Piece<V>>>,
    ) {
        v.beyond_alphabet(node, path);
        for a in 1..=self.trunc.max_letter {
            let Some(child) = v.child(node, a) else {
                continue;
            };
            let prof = match profile {
                Some(p) => p.prepend(a, self.tables),
                None => GoodnessProfile::single(a),
            };
            path.push(a);
            match prof.verdict() {
                Verdict::Neither => {
                    if path.len() >= self.trunc.max_len || !v.worth_expanding(&child) {
                        v.frontier(&child, path);
                    } else if path.len() == SPLIT_DEPTH && pieces.is_some() {
                        let list = pieces.as_mut().unwrap();
                        let empty = v.fresh();
                        let done = std::mem::replace(v, empty);
                        list.push(Piece::Done(done));
                        list.push(Piece::Todo(Task {
                            node: child,
                            profile: prof,
                            path: path.clone(),
                        }));
                    } else {
                        self.expand(v, &child, Some(&prof), path, pieces);
                    }
                }
                verdict => v.leaf(&child, path, verdict),
            }
            path.pop();
        }
    }
}

/// Walks the whole tree. Subtrees below depth 2 are processed in parallel
/// and merged back in depth-first order, so the result does not depend on
/// the number of worker threads.
pub(crate) fn walk<V: TreeVisitor>(mut visitor: V, trunc: Truncation) -> Result<V> {
    trunc.validate()?;
    let tables = TransitionTables::new(trunc.max_letter)?;
    let walker = Walker {
        trunc,
        tables: &tables,
    };
    let mut pieces: Vec<Piece<V>> = Vec::new();
    let root = visitor.root();
    let mut path = Vec::with_capacity(trunc.max_len);
    walker.expand(&mut visitor, &root, None, &mut path, &mut Some(&mut pieces));

    let done: Vec<V> = pieces
        .into_par_iter()
        .map(|piece| match piece {
            Piece::Done(v) => v,
            Piece::Todo(task) => {
                let mut v = visitor.fresh();
                let mut path = task.path;
                walker.expand(
                    &mut v,
                    &task.node,
                    Some(&task.profile),
                    &mut path,
                    &mut None,
                );
                v
            }
        })
        .collect();

    let mut out = visitor.fresh();
    for v in done {
        out.merge(v);
    }
    out.merge(visitor);
    Ok(out)
}
