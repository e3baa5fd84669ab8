//! Canonical labeling by individualization-refinement.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell,
//! recurse. Every leaf is a relabeling of the graph; the canonical form is the
//! lexicographically smallest relabeled encoding. Two prunings keep the tree
//! small on symmetric graphs: orbit pruning under the automorphisms found so
//! far that fix the current prefix, and a jump back to the common ancestor
//! whenever a leaf reproduces the first leaf.

use super::{BitIter, Graph};
use crate::error::Result;

/// Orders above this use the approximate invariant form by default.
pub const DEFAULT_ISOMORPHISM_LIMIT: usize = 16;

/// A relabeling-invariant key for a graph.
///
/// Exact forms are equal iff the graphs are isomorphic. Approximate forms
/// (orders above the limit) are invariants only: isomorphic graphs share
/// them, but a shared approximate form needs [`are_isomorphic`] to confirm.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: usize,
    approximate: bool,
    words: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    /// The canonical encoding as a `0`/`1` string; `None` for approximate forms.
    pub fn bit_string(&self) -> Option<String> {
        if self.approximate {
            return None;
        }
        let len = super::bit_len(self.order);
        Some(
            (0..len)
                .map(|i| if self.words[i / 64] >> (63 - i % 64) & 1 == 1 { '1' } else { '0' })
                .collect(),
        )
    }

    /// Decodes an exact form back into its canonical representative.
    pub fn to_graph(&self) -> Option<Result<Graph>> {
        self.bit_string().map(|s| Graph::from_bit_str(self.order, &s))
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_form_with_limit(g, DEFAULT_ISOMORPHISM_LIMIT)
}

pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> CanonicalForm {
    if g.order() <= limit {
        exact_form(g)
    } else {
        invariant_form(g)
    }
}

/// Exact isomorphism test, regardless of order.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut d1 = g1.degrees().to_vec();
    let mut d2 = g2.degrees().to_vec();
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2 && exact_form(g1) == exact_form(g2)
}

fn exact_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let words = if n <= 1 {
        Vec::new()
    } else {
        let mut search = Search {
            g,
            first: None,
            first_path: Vec::new(),
            best: None,
            automorphisms: Vec::new(),
        };
        let mut prefix = Vec::with_capacity(n);
        search.descend(vec![g.vertex_mask()], &mut prefix);
        search.best.expect("search visits at least one leaf").0
    };
    CanonicalForm {
        order: n,
        approximate: false,
        words,
    }
}

/// Sorted degree sequence followed by every vertex's sorted neighbor-degree
/// multiset, the vertices ordered by that multiset.
fn invariant_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let deg = g.degrees();
    let mut degrees: Vec<u64> = deg.iter().map(|&d| d as u64).collect();
    degrees.sort_unstable();
    let mut profiles: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut p: Vec<u64> = BitIter(g.neighbors(v)).map(|w| deg[w] as u64).collect();
            p.sort_unstable();
            p.insert(0, deg[v] as u64);
            p
        })
        .collect();
    profiles.sort();
    let mut words = degrees;
    for p in profiles {
        words.push(u64::MAX);
        words.extend(p);
    }
    CanonicalForm {
        order: n,
        approximate: true,
        words,
    }
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<usize>, Vec<u64>)>,
    first_path: Vec<usize>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` when the caller should unwind to the node at
    /// depth `level` (an automorphism mapped this branch onto the first path).
    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) -> Option<usize> {
        let cells = refine(self.g.adjacency(), cells);
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, prefix);
        };
        let target = cells[t];
        let depth = prefix.len();
        let mut explored: Vec<usize> = Vec::new();
        for w in BitIter(target) {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, w) {
                continue;
            }
            let mut child = cells.clone();
            child[t] = 1 << w;
            child.insert(t + 1, target & !(1 << w));
            prefix.push(w);
            let unwind = self.descend(child, prefix);
            prefix.pop();
            explored.push(w);
            if let Some(level) = unwind {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], prefix: &[usize]) -> Option<usize> {
        let n = self.g.order();
        let mut perm = vec![0usize; n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell.trailing_zeros() as usize] = pos;
        }
        let packed = self
            .g
            .relabel(&perm)
            .expect("leaf order is a permutation")
            .packed_bits();

        let Some((first_perm, first_packed)) = &self.first else {
            self.first = Some((perm.clone(), packed.clone()));
            self.first_path = prefix.to_vec();
            self.best = Some((packed, perm));
            return None;
        };
        if packed == *first_packed {
            let gamma = compose_inverse(first_perm, &perm);
            self.automorphisms.push(gamma);
            let common = prefix
                .iter()
                .zip(&self.first_path)
                .take_while(|(a, b)| a == b)
                .count();
            return Some(common);
        }
        let (best_packed, best_perm) = self.best.as_ref().expect("best set with first");
        match packed.cmp(best_packed) {
            std::cmp::Ordering::Equal => {
                let gamma = compose_inverse(best_perm, &perm);
                self.automorphisms.push(gamma);
            }
            std::cmp::Ordering::Less => self.best = Some((packed, perm)),
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    /// Whether `w` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}

/// `base⁻¹ ∘ perm` as a vertex map.
fn compose_inverse(base: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; base.len()];
    for (v, &p) in base.iter().enumerate() {
        inverse[p] = v;
    }
    perm.iter().map(|&p| inverse[p]).collect()
}

/// Refines an ordered partition until it is equitable. Each cell is split by
/// the number of neighbors its vertices have in a splitter cell; fragments are
/// ordered by that count, so the result depends on structure only.
fn refine(adj: &[u64], mut cells: Vec<u64>) -> Vec<u64> {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len() + 1);
            for &cell in &cells {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut groups: Vec<(u32, u64)> = Vec::new();
                for v in BitIter(cell) {
                    let c = (adj[v] & splitter).count_ones();
                    match groups.iter_mut().find(|(count, _)| *count == c) {
                        Some((_, mask)) => *mask |= 1 << v,
                        None => groups.push((c, 1 << v)),
                    }
                }
                groups.sort_unstable_by_key(|&(count, _)| count);
                next.extend(groups.into_iter().map(|(_, mask)| mask));
            }
            if next.len() != cells.len() {
                changed = true;
                cells = next;
            }
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}
