use serde::{Deserialize, Serialize};

use super::{disjoint_union, join, Graph};
use crate::error::{Error, Result};

/// Named graph families used as seeds, boundary cases and test fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Complete { n: usize },
    Empty { n: usize },
    /// K_{1,n-1}; vertex 0 is the center.
    Star { n: usize },
    Cycle { n: usize },
    /// `copies` disjoint copies of K_`size`.
    DisjointCliques { copies: usize, size: usize },
    /// K_c ∨ (d K_1), whose isolated toughness is c/d.
    CliqueJoinIndependent { c: usize, d: usize },
    /// K_c ∨ ((d+1) K_1), whose isolated toughness variant is c/d.
    CliqueJoinIndependentPlusOne { c: usize, d: usize },
    /// G_l = K_{l-1} ∨ (l K_k).
    Extremal { k: usize, l: usize },
    /// K_{t+1} ∨ ((t+2) K_k): δ = k+t and I' sits exactly on k + (k-1)/(t+1).
    Counterexample { k: usize, t: usize },
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Complete { n } => Graph::complete(n),
            Family::Empty { n } => Graph::empty(n),
            Family::Star { n } => {
                require(n >= 2, "a star needs at least 2 vertices")?;
                join(&Graph::complete(1)?, &Graph::empty(n - 1)?)
            }
            Family::Cycle { n } => {
                require(n >= 3, "a cycle needs at least 3 vertices")?;
                let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
                Graph::from_edges(n, &edges)
            }
            Family::DisjointCliques { copies, size } => {
                require(copies >= 1 && size >= 1, "copies and size must be positive")?;
                disjoint_cliques(copies, size)
            }
            Family::CliqueJoinIndependent { c, d } => {
                require(c >= 1 && d >= 1, "c and d must be positive")?;
                join(&Graph::complete(c)?, &Graph::empty(d)?)
            }
            Family::CliqueJoinIndependentPlusOne { c, d } => {
                require(c >= 1 && d >= 1, "c and d must be positive")?;
                join(&Graph::complete(c)?, &Graph::empty(d + 1)?)
            }
            Family::Extremal { k, l } => {
                require(k >= 1, "k must be positive")?;
                require(l >= 2, "l must be at least 2")?;
                join(&Graph::complete(l - 1)?, &disjoint_cliques(l, k)?)
            }
            Family::Counterexample { k, t } => {
                require(k >= 1, "k must be positive")?;
                join(&Graph::complete(t + 1)?, &disjoint_cliques(t + 2, k)?)
            }
        }
    }

    /// Order of the graph [`Family::build`] would produce.
    pub fn order(&self) -> usize {
        match *self {
            Family::Complete { n }
            | Family::Empty { n }
            | Family::Star { n }
            | Family::Cycle { n } => n,
            Family::DisjointCliques { copies, size } => copies * size,
            Family::CliqueJoinIndependent { c, d } => c + d,
            Family::CliqueJoinIndependentPlusOne { c, d } => c + d + 1,
            Family::Extremal { k, l } => (l - 1) + l * k,
            Family::Counterexample { k, t } => (t + 1) + (t + 2) * k,
        }
    }
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(msg))
    }
}

fn disjoint_cliques(copies: usize, size: usize) -> Result<Graph> {
    let clique = Graph::complete(size)?;
    let mut g = Graph::empty(0)?;
    for _ in 0..copies {
        g = disjoint_union(&g, &clique)?;
    }
    Ok(g)
}
