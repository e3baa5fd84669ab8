//! Pseudo-greedy upper bound on I'(G).
//!
//! Two deletion tracks run side by side for `n − 3` steps. The roulette track
//! removes a vertex with probability proportional to its current degree; the
//! max-degree track removes a highest-degree vertex (lowest index on ties).
//! After step `s` both tracks have deleted exactly `s` vertices, so a track
//! that leaves `i >= 2` isolated vertices proposes the ratio `s / (i − 1)`.
//! Whenever the roulette track fails to improve the running minimum (or
//! leaves fewer than two isolated vertices) it is reset onto the max-degree
//! track. Every proposed ratio is attained by an actual deletion set, so the
//! estimate never drops below the exact I'(G).

use rand::Rng;
use serde::Serialize;

use super::exact_isolated_toughness_variant;
use crate::error::{Error, Result};
use crate::graph::{isolated_in, BitIter, Graph, VertexSet};
use crate::rational::RationalValue;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoGreedyStep {
    pub step: usize,
    /// `None` when the roulette track had no edge left to aim at.
    pub roulette_vertex: Option<usize>,
    pub max_degree_vertex: usize,
    pub roulette_isolated: usize,
    pub max_degree_isolated: usize,
    pub roulette_ratio: Option<RationalValue>,
    pub max_degree_ratio: Option<RationalValue>,
    /// The roulette track was reset onto the max-degree track after this step.
    pub reset: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoGreedyTrace {
    pub estimate: RationalValue,
    /// Deletion set attaining `estimate`, if any step qualified.
    pub witness: Option<VertexSet>,
    /// Deletion order of the max-degree track.
    pub deletion_sequence: Vec<usize>,
    pub steps: Vec<PseudoGreedyStep>,
    /// Orders below 4 are answered exactly instead.
    pub exact_fallback: bool,
}

/// Picks the vertex `j` whose cumulative-degree interval
/// `[Σ_{i<j} d_i, Σ_{i<=j} d_i) / Σ d` contains `p`.
///
/// ```
/// use netinverse::toughness::roulette_select;
/// assert_eq!(roulette_select(&[4, 2, 2, 2, 2], 0.34).unwrap(), 1);
/// ```
pub fn roulette_select(degrees: &[u32], p: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::invalid(format!("roulette draw {p} outside [0, 1)")));
    }
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total == 0 {
        return Err(Error::NoSelectableVertex);
    }
    let target = p * total as f64;
    let mut cum = 0u64;
    let mut last_positive = 0;
    for (j, &d) in degrees.iter().enumerate() {
        if d == 0 {
            continue;
        }
        last_positive = j;
        let hi = cum + d as u64;
        if (cum as f64) <= target && target < hi as f64 {
            return Ok(j);
        }
        cum = hi;
    }
    // Only reachable through rounding in `p * total` for p just below 1.
    Ok(last_positive)
}

#[derive(Clone)]
struct Track {
    alive: u64,
}

impl Track {
    fn degrees(&self, adj: &[u64]) -> Vec<u32> {
        (0..adj.len())
            .map(|v| {
                if self.alive >> v & 1 == 1 {
                    (adj[v] & self.alive).count_ones()
                } else {
                    0
                }
            })
            .collect()
    }

    fn max_degree_vertex(&self, adj: &[u64]) -> usize {
        let mut best = None::<(u32, usize)>;
        for v in BitIter(self.alive) {
            let d = (adj[v] & self.alive).count_ones();
            if best.map_or(true, |(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.expect("track keeps at least one vertex").1
    }

    fn delete(&mut self, v: usize) {
        self.alive &= !(1 << v);
    }

    fn deleted(&self, all: u64) -> u64 {
        all & !self.alive
    }
}

pub fn pseudo_greedy_i_prime<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<PseudoGreedyTrace> {
    let n = g.order();
    if n < 4 {
        let exact = exact_isolated_toughness_variant(g)?;
        return Ok(PseudoGreedyTrace {
            estimate: exact.value,
            witness: exact.minimizers.first().copied(),
            deletion_sequence: Vec::new(),
            steps: Vec::new(),
            exact_fallback: true,
        });
    }

    let adj = g.adjacency();
    let all = g.vertex_mask();
    let mut roulette = Track { alive: all };
    let mut max_track = Track { alive: all };
    let mut best = RationalValue::INFINITY;
    let mut witness = None;
    let mut deletion_sequence = Vec::with_capacity(n - 3);
    let mut steps = Vec::with_capacity(n - 3);

    for s in 1..=(n - 3) as u64 {
        let p: f64 = rng.gen();
        let roulette_vertex = roulette_select(&roulette.degrees(adj), p).ok();
        if let Some(v) = roulette_vertex {
            roulette.delete(v);
        }
        let mv = max_track.max_degree_vertex(adj);
        max_track.delete(mv);
        deletion_sequence.push(mv);

        let mut reset = true;
        let mut roulette_isolated = 0;
        let mut roulette_ratio = None;
        if roulette_vertex.is_some() {
            let removed = roulette.deleted(all);
            roulette_isolated = isolated_in(adj, removed, all);
            if roulette_isolated >= 2 {
                let ratio = RationalValue::new(s, roulette_isolated as u64 - 1);
                roulette_ratio = Some(ratio);
                if ratio < best {
                    best = ratio;
                    witness = Some(VertexSet::from_mask(removed));
                    reset = false;
                }
            }
        }
        if reset {
            roulette = max_track.clone();
        }

        let removed = max_track.deleted(all);
        let max_degree_isolated = isolated_in(adj, removed, all);
        let mut max_degree_ratio = None;
        if max_degree_isolated >= 2 {
            let ratio = RationalValue::new(s, max_degree_isolated as u64 - 1);
            max_degree_ratio = Some(ratio);
            if ratio < best {
                best = ratio;
                witness = Some(VertexSet::from_mask(removed));
            }
        }

        steps.push(PseudoGreedyStep {
            step: s as usize,
            roulette_vertex,
            max_degree_vertex: mv,
            roulette_isolated,
            max_degree_isolated,
            roulette_ratio,
            max_degree_ratio,
            reset,
        });
    }

    Ok(PseudoGreedyTrace {
        estimate: best,
        witness,
        deletion_sequence,
        steps,
        exact_fallback: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roulette_intervals() {
        let deg = [4, 2, 2, 2, 2];
        assert_eq!(roulette_select(&deg, 0.0).unwrap(), 0);
        assert_eq!(roulette_select(&deg, 0.34).unwrap(), 1);
        // 4/12 sits exactly on the boundary and belongs to vertex 1.
        assert_eq!(roulette_select(&deg, 4.0 / 12.0).unwrap(), 1);
        assert_eq!(roulette_select(&deg, 0.999).unwrap(), 4);
        assert_eq!(roulette_select(&[0, 5], 0.99).unwrap(), 1);
        assert_eq!(roulette_select(&[0, 5, 0], 0.0).unwrap(), 1);
    }

    #[test]
    fn roulette_errors() {
        assert_eq!(roulette_select(&[0, 0, 0], 0.5), Err(Error::NoSelectableVertex));
        assert!(roulette_select(&[1, 1], 1.0).is_err());
        assert!(roulette_select(&[1, 1], -0.1).is_err());
    }

    #[test]
    fn roulette_frequencies_follow_degrees() {
        let deg = [4, 2, 0, 2, 2, 2];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut hits = [0usize; 6];
        let draws = 60_000;
        for _ in 0..draws {
            hits[roulette_select(&deg, rng.gen()).unwrap()] += 1;
        }
        assert_eq!(hits[2], 0);
        for (v, &d) in deg.iter().enumerate() {
            let expected = draws as f64 * d as f64 / 12.0;
            assert!((hits[v] as f64 - expected).abs() < 0.05 * draws as f64);
        }
    }

    #[test]
    fn star_found_by_max_degree_track() {
        let star = Family::Star { n: 5 }.build().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let trace = pseudo_greedy_i_prime(&star, &mut rng).unwrap();
        assert_eq!(trace.estimate, RationalValue::new(1, 3));
        assert_eq!(trace.deletion_sequence[0], 0);
        assert_eq!(trace.steps[0].max_degree_isolated, 4);
        assert_eq!(trace.steps.len(), 2);
    }

    #[test]
    fn complete_graph_stays_infinite() {
        let k6 = Graph::complete(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let trace = pseudo_greedy_i_prime(&k6, &mut rng).unwrap();
        assert!(trace.estimate.is_infinite());
        assert!(trace.witness.is_none());
        assert_eq!(trace.deletion_sequence, vec![0, 1, 2]);
    }

    #[test]
    fn small_orders_fall_back_to_exact() {
        let g = Graph::empty(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let trace = pseudo_greedy_i_prime(&g, &mut rng).unwrap();
        assert!(trace.exact_fallback);
        assert_eq!(trace.estimate, RationalValue::ZERO);
    }

    #[test]
    fn witness_reproduces_estimate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(4..11);
            let bits: Vec<bool> = (0..crate::graph::bit_len(n)).map(|_| rng.gen()).collect();
            let g = Graph::from_bits(n, &bits).unwrap();
            let trace = pseudo_greedy_i_prime(&g, &mut rng).unwrap();
            match trace.witness {
                Some(s) => {
                    let i = g.isolated_count(s) as u64;
                    assert_eq!(RationalValue::new(s.len() as u64, i - 1), trace.estimate);
                }
                None => assert!(trace.estimate.is_infinite()),
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let g = Family::Extremal { k: 2, l: 3 }.build().unwrap();
        let a = pseudo_greedy_i_prime(&g, &mut ChaCha8Rng::seed_from_u64(77)).unwrap();
        let b = pseudo_greedy_i_prime(&g, &mut ChaCha8Rng::seed_from_u64(77)).unwrap();
        assert_eq!(a, b);
    }
}
