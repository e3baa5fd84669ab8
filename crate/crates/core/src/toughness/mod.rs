//! Isolated toughness I(G) and its variant I'(G).
//!
//! For a non-complete graph,
//!
//! ```text
//! I(G)  = min |S| / i(G − S)
//! I'(G) = min |S| / (i(G − S) − 1)
//! ```
//!
//! over vertex subsets `S` that leave at least two isolated vertices; both are
//! `+inf` when no such subset exists. The exact routines enumerate subsets by
//! increasing cardinality and stop as soon as a whole cardinality level cannot
//! beat the current best, since `i(G − S) <= n − |S|`.

mod greedy;

pub use greedy::{pseudo_greedy_i_prime, roulette_select, PseudoGreedyStep, PseudoGreedyTrace};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{full_mask, isolated_in, Graph, VertexSet};
use crate::rational::RationalValue;

/// Largest order the exact routines accept by default.
pub const DEFAULT_EXACT_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToughnessResult {
    pub value: RationalValue,
    /// Every subset attaining `value`; empty when `value` is infinite.
    pub minimizers: Vec<VertexSet>,
    /// i(G − S) for each minimizer, in the same order.
    pub witness_i: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// Denominator i(G − S).
    Plain,
    /// Denominator i(G − S) − 1.
    Variant,
}

impl Kind {
    fn offset(self) -> u64 {
        match self {
            Kind::Plain => 0,
            Kind::Variant => 1,
        }
    }
}

pub fn exact_isolated_toughness(g: &Graph) -> Result<ToughnessResult> {
    exact_isolated_toughness_with_limit(g, DEFAULT_EXACT_LIMIT)
}

pub fn exact_isolated_toughness_with_limit(g: &Graph, limit: usize) -> Result<ToughnessResult> {
    gate(g, limit)?;
    Ok(scan(g.adjacency(), Kind::Plain, true))
}

pub fn exact_isolated_toughness_variant(g: &Graph) -> Result<ToughnessResult> {
    exact_isolated_toughness_variant_with_limit(g, DEFAULT_EXACT_LIMIT)
}

pub fn exact_isolated_toughness_variant_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<ToughnessResult> {
    gate(g, limit)?;
    Ok(scan(g.adjacency(), Kind::Variant, true))
}

/// I'(G) without collecting minimizers.
pub fn isolated_toughness_variant_value(g: &Graph) -> Result<RationalValue> {
    gate(g, DEFAULT_EXACT_LIMIT)?;
    Ok(variant_value(g.adjacency()))
}

pub(crate) fn variant_value(adj: &[u64]) -> RationalValue {
    scan(adj, Kind::Variant, false).value
}

fn gate(g: &Graph, limit: usize) -> Result<()> {
    if g.order() > limit {
        return Err(Error::Capacity {
            what: "exact isolated toughness",
            order: g.order(),
            limit,
            hint: "; use the pseudo-greedy estimator for larger graphs",
        });
    }
    Ok(())
}

fn scan(adj: &[u64], kind: Kind, collect: bool) -> ToughnessResult {
    let n = adj.len();
    let alive = full_mask(n);
    let off = kind.offset();
    let mut best = RationalValue::INFINITY;
    let mut minimizers = Vec::new();
    let mut witness_i = Vec::new();

    for size in 0..=n.saturating_sub(2) {
        let s = size as u64;
        if best.is_finite() {
            // Best possible ratio on this level uses i = n − |S|.
            let floor = RationalValue::new(s, n as u64 - s - off);
            if floor > best {
                break;
            }
        }
        for mask in Subsets::new(n, size) {
            let i = isolated_in(adj, mask, alive);
            if i < 2 {
                continue;
            }
            let ratio = RationalValue::new(s, i as u64 - off);
            match ratio.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = ratio;
                    if collect {
                        minimizers.clear();
                        witness_i.clear();
                        minimizers.push(VertexSet::from_mask(mask));
                        witness_i.push(i);
                    }
                }
                std::cmp::Ordering::Equal if collect => {
                    minimizers.push(VertexSet::from_mask(mask));
                    witness_i.push(i);
                }
                _ => {}
            }
        }
    }
    ToughnessResult {
        value: best,
        minimizers,
        witness_i,
    }
}

/// All `size`-element subsets of `0..n` as masks, in increasing numeric order.
struct Subsets {
    next: Option<u64>,
    limit: u64,
}

impl Subsets {
    fn new(n: usize, size: usize) -> Self {
        if size > n {
            return Subsets { next: None, limit: 0 };
        }
        let first = full_mask(size);
        Subsets {
            next: Some(first),
            limit: if n >= 64 { u64::MAX } else { 1u64 << n },
        }
    }
}

impl Iterator for Subsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt < self.limit && nxt > cur).then_some(nxt)
            }
        };
        if cur >= self.limit && self.limit != u64::MAX {
            return None;
        }
        Some(cur)
    }
}
