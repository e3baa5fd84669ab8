//! Undirected simple graphs over at most 64 vertices.
//!
//! The canonical encoding is the row-major upper-triangular bit string
//! `(0,1), (0,2), .., (0,n-1), (1,2), .., (n-2,n-1)` of length `n(n-1)/2`.
//! Internally each vertex keeps a neighbor bitmask, and the degree vector is
//! cached alongside it.

mod canon;
mod family;
mod io;

pub use canon::{are_isomorphic, canonical_form, canonical_form_with_limit, CanonicalForm};
pub use canon::DEFAULT_ISOMORPHISM_LIMIT;
pub use family::Family;
pub use io::{parse_json, to_dot, to_json, GraphJson};

use std::fmt;

use crate::error::{Error, Result};

/// Hard ceiling imposed by the one-word neighbor masks.
pub const MAX_ORDER: usize = 64;

/// Number of bits in the encoding of an order-`n` graph.
pub const fn bit_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{u, v}` in the row-major upper-triangular encoding.
///
/// ```
/// use netinverse::graph::edge_index;
/// assert_eq!(edge_index(0, 1, 5).unwrap(), 0);
/// assert_eq!(edge_index(3, 4, 5).unwrap(), 9);
/// ```
pub fn edge_index(u: usize, v: usize, n: usize) -> Result<usize> {
    if u == v {
        return Err(Error::invalid(format!("self-pair ({u}, {v}) has no encoding position")));
    }
    if u >= n || v >= n {
        return Err(Error::invalid(format!("pair ({u}, {v}) out of range for order {n}")));
    }
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    Ok(pair_index(u, v, n))
}

#[inline]
fn pair_index(u: usize, v: usize, n: usize) -> usize {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_pair(index: usize, n: usize) -> Result<(usize, usize)> {
    if index >= bit_len(n) {
        return Err(Error::invalid(format!("bit position {index} out of range for order {n}")));
    }
    let mut rest = index;
    for u in 0..n {
        let row = n - u - 1;
        if rest < row {
            return Ok((u, u + 1 + rest));
        }
        rest -= row;
    }
    unreachable!("index checked against bit_len")
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the vertices `0..n`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Iterates the set bits of a word, lowest first.
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// An undirected simple graph with a cached degree vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    degrees: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::SizeLimit { order: n, limit: MAX_ORDER });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            degrees: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
            g.degrees[v] = n as u32 - 1;
        }
        Ok(g)
    }

    /// Builds a graph from neighbor masks; bits at or above `adj.len()` and
    /// self-loops are rejected.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(Error::SizeLimit { order: n, limit: MAX_ORDER });
        }
        let all = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !all != 0 || row >> v & 1 == 1 {
                return Err(Error::invalid(format!("bad neighbor mask for vertex {v}")));
            }
            for w in BitIter(row) {
                if adj[w] >> v & 1 == 0 {
                    return Err(Error::invalid(format!("asymmetric adjacency at ({v}, {w})")));
                }
            }
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        let degrees = adj.iter().map(|r| r.count_ones()).collect();
        Graph { n: adj.len(), adj, degrees }
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() != bit_len(n) {
            return Err(Error::invalid(format!(
                "order {n} needs {} bits, got {}",
                bit_len(n),
                bits.len()
            )));
        }
        let mut g = Graph::empty(n)?;
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[idx] {
                    g.add_edge_unchecked(u, v);
                }
                idx += 1;
            }
        }
        Ok(g)
    }

    /// Parses a `0`/`1` string in encoding order.
    pub fn from_bit_str(n: usize, s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(format!("bit {i}"), format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::from_bits(n, &bits)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            edge_index(u, v, n)?;
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn bit_len(&self) -> usize {
        bit_len(self.n)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    /// δ(G); zero for the order-0 graph.
    pub fn min_degree(&self) -> u32 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.bit_len()
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Neighbor bitmask of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Sets or clears the edge `{u, v}`; panics on a self-pair or a vertex
    /// out of range.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(u != v && u < self.n && v < self.n, "invalid pair ({u}, {v})");
        if self.has_edge(u, v) == present {
            return;
        }
        if present {
            self.add_edge_unchecked(u, v);
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
            self.degrees[u] -= 1;
            self.degrees[v] -= 1;
        }
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.degrees[u] += 1;
        self.degrees[v] += 1;
    }

    pub fn bit(&self, index: usize) -> bool {
        let (u, v) = edge_pair(index, self.n).expect("bit index in range");
        self.has_edge(u, v)
    }

    pub fn flip_bit(&mut self, index: usize) {
        let (u, v) = edge_pair(index, self.n).expect("bit index in range");
        let present = self.has_edge(u, v);
        self.set_edge(u, v, !present);
    }

    /// The decision vector in encoding order.
    pub fn bits(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.bit_len());
        for u in 0..self.n {
            for v in u + 1..self.n {
                out.push(self.adj[u] >> v & 1 == 1);
            }
        }
        out
    }

    pub fn bit_string(&self) -> String {
        self.bits().into_iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// The encoding packed most-significant-bit first, so that comparing two
    /// packed vectors of equal order compares the bit strings lexicographically.
    pub fn packed_bits(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.bit_len().div_ceil(64)];
        let mut idx = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    words[idx / 64] |= 1 << (63 - idx % 64);
                }
                idx += 1;
            }
        }
        words
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length differs from graph order"));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::invalid("not a permutation"));
            }
            seen |= 1 << p;
        }
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for w in BitIter(self.adj[u]) {
                adj[perm[u]] |= 1 << perm[w];
            }
        }
        Ok(Graph::from_adjacency_unchecked(adj))
    }

    /// i(G − S): vertices outside `s` whose neighbors all lie in `s`.
    #[inline]
    pub fn isolated_count(&self, s: VertexSet) -> usize {
        isolated_in(&self.adj, s.mask(), self.vertex_mask())
    }

    /// Recomputes degrees from the neighbor masks and compares with the cache.
    pub fn degrees_consistent(&self) -> bool {
        self.adj
            .iter()
            .zip(&self.degrees)
            .all(|(row, &d)| row.count_ones() == d)
    }
}

/// Counts vertices of `alive \ s` with no neighbor in `alive \ s`.
#[inline]
pub(crate) fn isolated_in(adj: &[u64], s: u64, alive: u64) -> usize {
    let rest = alive & !s;
    let mut count = 0;
    for v in BitIter(rest) {
        if adj[v] & rest == 0 {
            count += 1;
        }
    }
    count
}

/// i(G − S) as a free function.
pub fn isolated_count(g: &Graph, s: VertexSet) -> usize {
    g.isolated_count(s)
}

/// Serializes as `{"n": .., "bits": ".."}`.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("bits", &self.bit_string())?;
        st.end()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("bits", &self.bit_string())
            .field("degrees", &self.degrees)
            .finish()
    }
}

/// G1 ∨ G2 with the default order ceiling.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph> {
    join_with_limit(g1, g2, MAX_ORDER)
}

/// G1 ∨ G2. Vertices of `g2` are renumbered to follow those of `g1`.
pub fn join_with_limit(g1: &Graph, g2: &Graph, max_order: usize) -> Result<Graph> {
    let n = g1.n + g2.n;
    let limit = max_order.min(MAX_ORDER);
    if n > limit {
        return Err(Error::SizeLimit { order: n, limit });
    }
    let first = full_mask(g1.n);
    let second = full_mask(n) & !first;
    let mut adj = Vec::with_capacity(n);
    for &row in &g1.adj {
        adj.push(row | second);
    }
    for &row in &g2.adj {
        adj.push(row << g1.n | first);
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Disjoint union, used by the family constructors.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n = g1.n + g2.n;
    if n > MAX_ORDER {
        return Err(Error::SizeLimit { order: n, limit: MAX_ORDER });
    }
    let mut adj = g1.adj.clone();
    adj.extend(g2.adj.iter().map(|row| row << g1.n));
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Number of encoding positions where the two graphs differ.
pub fn hamming_distance(g1: &Graph, g2: &Graph) -> Result<usize> {
    if g1.n != g2.n {
        return Err(Error::invalid(format!(
            "hamming distance needs equal orders, got {} and {}",
            g1.n, g2.n
        )));
    }
    Ok(hamming_unchecked(g1, g2))
}

pub(crate) fn hamming_unchecked(g1: &Graph, g2: &Graph) -> usize {
    // Each differing pair is seen from both endpoints.
    g1.adj
        .iter()
        .zip(&g2.adj)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum::<usize>()
        / 2
}
