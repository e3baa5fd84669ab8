//! Exhaustive ground truth at small orders.
//!
//! [`enumerate_exact`] scans every labeled graph of order `n` and keeps, per
//! minimum degree, the smallest I' that clears the requirement. The scan runs
//! over raw encodings in parallel chunks; each chunk keeps its own minima and
//! the chunks are merged with an order-independent min.

mod benchmark;
mod proposition;

pub use benchmark::{benchmark, machine_descriptor, Agreement, BenchmarkReport, DeltaComparison};
pub use proposition::{explore_proposition, explore_proposition_with, ExploreOptions, PropositionReport, Violation};

use std::collections::BTreeSet;
use std::ops::Range;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{check_values, delta_scope, DeltaScope};
use crate::graph::{bit_len, canonical_form, edge_pair, CanonicalForm, Graph, GraphJson};
use crate::rational::RationalValue;
use crate::toughness::variant_value;

/// Largest order scanned without an explicit override.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;
/// Largest order scanned at all.
pub const MAX_ENUMERATION_ORDER: usize = 8;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimum {
    pub delta: u32,
    pub i_prime: RationalValue,
    /// Lowest encoding attaining the optimum.
    pub witness: GraphJson,
    #[serde(skip)]
    code: u64,
}

/// Equality ignores `elapsed`.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationResult {
    pub n: usize,
    pub k: u32,
    pub scope: DeltaScope,
    /// One entry per δ in scope that has a feasible graph, ascending.
    pub optima: Vec<Optimum>,
    pub scanned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for EnumerationResult {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.k, self.scope, &self.optima, self.scanned)
            == (other.n, other.k, other.scope, &other.optima, other.scanned)
    }
}

impl Eq for EnumerationResult {}

impl EnumerationResult {
    pub fn optimum(&self, delta: u32) -> Option<RationalValue> {
        self.optima.iter().find(|o| o.delta == delta).map(|o| o.i_prime)
    }

    /// `(δ, I')` pairs, e.g. `(2, 5/1)  (3, 5/1)`, with `Null` for gaps.
    pub fn optima_line(&self) -> String {
        self.scope
            .iter()
            .map(|d| match self.optimum(d) {
                Some(v) => format!("({d}, {v})"),
                None => format!("({d}, Null)"),
            })
            .collect::<Vec<_>>()
            .join("  ")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,delta,i_prime,witness_bits\n");
        for d in self.scope.iter() {
            match self.optima.iter().find(|o| o.delta == d) {
                Some(o) => out.push_str(&format!("{},{},{},{},{}\n", self.n, self.k, d, o.i_prime, o.witness.bits)),
                None => out.push_str(&format!("{},{},{},Null,\n", self.n, self.k, d)),
            }
        }
        out
    }
}

/// Per-δ best `(I', code)` for one slice of the scan.
#[derive(Debug, Clone)]
struct Partial {
    best: Vec<Option<(RationalValue, u64)>>,
    scanned: u64,
}

impl Partial {
    fn new(scope: DeltaScope) -> Self {
        Partial {
            best: vec![None; scope.len()],
            scanned: 0,
        }
    }

    fn offer(&mut self, slot: usize, value: RationalValue, code: u64) {
        let cell = &mut self.best[slot];
        if cell.map_or(true, |cur| (value, code) < cur) {
            *cell = Some((value, code));
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (slot, entry) in other.best.into_iter().enumerate() {
            if let Some((v, c)) = entry {
                self.offer(slot, v, c);
            }
        }
        self.scanned += other.scanned;
        self
    }
}

/// Row-major pair table for decoding encodings quickly.
fn pair_table(n: usize) -> Vec<(usize, usize)> {
    (0..bit_len(n)).map(|i| edge_pair(i, n).expect("in range")).collect()
}

fn decode(code: u64, pairs: &[(usize, usize)], adj: &mut [u64]) {
    adj.fill(0);
    let mut rest = code;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (u, v) = pairs[i];
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
}

/// Graph whose encoding bit `i` is bit `i` of `code`.
pub fn graph_from_code(n: usize, code: u64) -> Result<Graph> {
    let bits: Vec<bool> = (0..bit_len(n)).map(|i| code >> i & 1 == 1).collect();
    Graph::from_bits(n, &bits)
}

fn scan_range(n: usize, k: u32, scope: DeltaScope, pairs: &[(usize, usize)], codes: Range<u64>) -> Partial {
    let mut partial = Partial::new(scope);
    let mut adj = vec![0u64; n];
    for code in codes {
        partial.scanned += 1;
        decode(code, pairs, &mut adj);
        let delta = adj.iter().map(|m| m.count_ones()).min().unwrap_or(0);
        if !scope.contains(delta) {
            continue;
        }
        let value = variant_value(&adj);
        if check_values(delta, value, k, scope).accepted() {
            partial.offer((delta - scope.lo) as usize, value, code);
        }
    }
    partial
}

fn check_enumeration(n: usize, cap: usize) -> Result<()> {
    if cap > MAX_ENUMERATION_ORDER {
        return Err(Error::invalid(format!(
            "enumeration cap {cap} exceeds the hard maximum {MAX_ENUMERATION_ORDER}"
        )));
    }
    if n > cap {
        return Err(Error::Capacity {
            what: "exhaustive enumeration",
            order: n,
            limit: cap,
            hint: "; the scan visits 2^(n(n-1)/2) graphs, raise the cap explicitly (at most 8) to proceed",
        });
    }
    if n < 3 {
        return Err(Error::invalid(format!("enumeration needs n >= 3, got {n}")));
    }
    Ok(())
}

fn finish(n: usize, k: u32, scope: DeltaScope, partial: Partial, start: Instant) -> Result<EnumerationResult> {
    let mut optima = Vec::new();
    for (slot, entry) in partial.best.into_iter().enumerate() {
        if let Some((i_prime, code)) = entry {
            let g = graph_from_code(n, code)?;
            optima.push(Optimum {
                delta: scope.lo + slot as u32,
                i_prime,
                witness: GraphJson::with_i_prime(&g, Some(i_prime)),
                code,
            });
        }
    }
    Ok(EnumerationResult {
        n,
        k,
        scope,
        optima,
        scanned: partial.scanned,
        elapsed: start.elapsed(),
    })
}

/// Exhaustive per-δ optima with the default cap of 7. `scope` defaults to
/// [`delta_scope`].
pub fn enumerate_exact(n: usize, k: u32, scope: Option<DeltaScope>) -> Result<EnumerationResult> {
    enumerate_exact_with_cap(n, k, scope, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_exact_with_cap(n: usize, k: u32, scope: Option<DeltaScope>, cap: usize) -> Result<EnumerationResult> {
    check_enumeration(n, cap)?;
    let scope = resolve(n, k, scope)?;
    let total = 1u64 << bit_len(n);
    enumerate_codes(n, k, Some(scope), 0..total)
}

/// Scans only the encodings in `codes`. Results of disjoint ranges combine
/// by a per-δ minimum into the result of their union.
pub fn enumerate_codes(n: usize, k: u32, scope: Option<DeltaScope>, codes: Range<u64>) -> Result<EnumerationResult> {
    check_enumeration(n, MAX_ENUMERATION_ORDER)?;
    let scope = resolve(n, k, scope)?;
    let start = Instant::now();
    let pairs = pair_table(n);
    let chunks: Vec<Range<u64>> = (codes.start..codes.end)
        .step_by(CHUNK as usize)
        .map(|s| s..(s + CHUNK).min(codes.end))
        .collect();
    let partial = chunks
        .into_par_iter()
        .map(|r| scan_range(n, k, scope, &pairs, r))
        .reduce(|| Partial::new(scope), Partial::merge);
    finish(n, k, scope, partial, start)
}

/// Same optima computed over one representative per isomorphism class.
/// Witnesses are canonical representatives rather than lowest encodings.
pub fn enumerate_canonical(n: usize, k: u32, scope: Option<DeltaScope>) -> Result<EnumerationResult> {
    check_enumeration(n, MAX_ENUMERATION_ORDER)?;
    let scope = resolve(n, k, scope)?;
    let start = Instant::now();
    let reps = canonical_representatives(n)?;
    let mut partial = Partial::new(scope);
    for (i, g) in reps.iter().enumerate() {
        partial.scanned += 1;
        let delta = g.min_degree();
        if !scope.contains(delta) {
            continue;
        }
        let value = variant_value(g.adjacency());
        if check_values(delta, value, k, scope).accepted() {
            partial.offer((delta - scope.lo) as usize, value, i as u64);
        }
    }
    let mut optima = Vec::new();
    for (slot, entry) in partial.best.into_iter().enumerate() {
        if let Some((i_prime, idx)) = entry {
            let g = &reps[idx as usize];
            optima.push(Optimum {
                delta: scope.lo + slot as u32,
                i_prime,
                witness: GraphJson::with_i_prime(g, Some(i_prime)),
                code: idx,
            });
        }
    }
    Ok(EnumerationResult {
        n,
        k,
        scope,
        optima,
        scanned: partial.scanned,
        elapsed: start.elapsed(),
    })
}

fn resolve(n: usize, k: u32, scope: Option<DeltaScope>) -> Result<DeltaScope> {
    match scope {
        Some(s) if s.is_empty() => Err(Error::InfeasibleScope { n, k: k as usize }),
        Some(s) => Ok(s),
        None => delta_scope(n, k),
    }
}

/// One graph per isomorphism class of order `n`, as canonical forms in
/// ascending order. Built by attaching a new vertex in every possible way to
/// each representative of order `n − 1`.
pub fn canonical_representatives(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::Capacity {
            what: "isomorphism-class generation",
            order: n,
            limit: MAX_ENUMERATION_ORDER,
            hint: "",
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)?];
    for m in 2..=n {
        let mut next: BTreeSet<CanonicalForm> = BTreeSet::new();
        let grown: Vec<Vec<CanonicalForm>> = level
            .par_iter()
            .map(|g| {
                (0..1u64 << (m - 1))
                    .map(|nbrs| {
                        let mut adj: Vec<u64> = g.adjacency().to_vec();
                        for (v, row) in adj.iter_mut().enumerate() {
                            if nbrs >> v & 1 == 1 {
                                *row |= 1 << (m - 1);
                            }
                        }
                        adj.push(nbrs);
                        canonical_form(&Graph::from_adjacency(adj).expect("symmetric by construction"))
                    })
                    .collect()
            })
            .collect();
        next.extend(grown.into_iter().flatten());
        level = next
            .into_iter()
            .map(|f| f.to_graph().expect("exact form").expect("valid form"))
            .collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| canonical_representatives(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn decode_matches_graph_from_code() {
        let pairs = pair_table(5);
        let mut adj = vec![0; 5];
        for code in [0u64, 1, 0b1011, 1023, 777] {
            decode(code, &pairs, &mut adj);
            assert_eq!(adj, graph_from_code(5, code).unwrap().adjacency());
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_exact(8, 2, None), Err(Error::Capacity { .. })));
        assert!(enumerate_exact_with_cap(9, 2, None, 9).is_err());
    }

    #[test]
    fn six_two() {
        let r = enumerate_exact(6, 2, None).unwrap();
        assert_eq!(r.scanned, 1 << 15);
        assert_eq!(r.optima_line(), "(2, 4/1)");
    }
}
