use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, canonical_form, hamming_distance, CanonicalForm, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScoredCandidate {
    /// Position in the input slice.
    pub index: usize,
    pub score: usize,
}

/// One greedy pick. For the first pick the score is the distance to K_n;
/// afterwards it is the minimum distance to everything already chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiversityStep {
    pub chosen: ScoredCandidate,
    pub alternatives: Vec<ScoredCandidate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiversityOutcome {
    /// First member of every isomorphism class, by input position.
    pub representatives: Vec<usize>,
    /// 𝒢' by input position, in selection order.
    pub selected: Vec<usize>,
    pub steps: Vec<DiversityStep>,
}

fn dedup(graphs: &[Graph]) -> Vec<usize> {
    let mut classes: BTreeMap<CanonicalForm, Vec<usize>> = BTreeMap::new();
    let mut reps = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let form = canonical_form(g);
        let approximate = form.is_approximate();
        let bucket = classes.entry(form).or_default();
        let duplicate = if approximate {
            bucket.iter().any(|&j| are_isomorphic(&graphs[j], g))
        } else {
            !bucket.is_empty()
        };
        if !duplicate {
            bucket.push(i);
            reps.push(i);
        }
    }
    reps
}

/// Keeps one graph per isomorphism class, then greedily selects up to
/// `count` of them: first the one farthest from K_n, then repeatedly the one
/// whose nearest already-chosen graph is farthest away. Ties go to the
/// lexicographically smallest bit string.
///
/// All graphs must share one order.
pub fn diversity_enhancement(graphs: &[Graph], count: usize) -> Result<DiversityOutcome> {
    let Some(first) = graphs.first() else {
        return Err(Error::EmptyArchive);
    };
    let n = first.order();
    if let Some(g) = graphs.iter().find(|g| g.order() != n) {
        return Err(Error::invalid(format!("mixed orders {n} and {} in one archive", g.order())));
    }
    let representatives = dedup(graphs);
    let packed: Vec<Vec<u64>> = graphs.iter().map(Graph::packed_bits).collect();
    let complete = Graph::complete(n)?;

    // Running score of every not-yet-chosen representative.
    let mut pool: Vec<ScoredCandidate> = representatives
        .iter()
        .map(|&i| ScoredCandidate {
            index: i,
            score: hamming_distance(&graphs[i], &complete).expect("same order"),
        })
        .collect();
    let mut selected = Vec::new();
    let mut steps = Vec::new();
    while selected.len() < count && !pool.is_empty() {
        let best = (0..pool.len())
            .max_by(|&a, &b| {
                pool[a]
                    .score
                    .cmp(&pool[b].score)
                    .then_with(|| packed[pool[b].index].cmp(&packed[pool[a].index]))
            })
            .expect("non-empty pool");
        let chosen = pool.swap_remove(best);
        pool.sort_by_key(|c| c.index);
        steps.push(DiversityStep {
            chosen,
            alternatives: pool.clone(),
        });
        selected.push(chosen.index);
        let is_first = selected.len() == 1;
        for c in &mut pool {
            let d = hamming_distance(&graphs[c.index], &graphs[chosen.index]).expect("same order");
            c.score = if is_first { d } else { c.score.min(d) };
        }
    }
    Ok(DiversityOutcome {
        representatives,
        selected,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_archive() {
        assert!(matches!(diversity_enhancement(&[], 3), Err(Error::EmptyArchive)));
    }

    #[test]
    fn relabelings_collapse() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.relabel(&[4, 3, 2, 1, 0]).unwrap();
        let out = diversity_enhancement(&[g, h], 10).unwrap();
        assert_eq!(out.representatives, vec![0]);
        assert_eq!(out.selected, vec![0]);
    }

    #[test]
    fn sparse_graph_first() {
        let k5 = Graph::complete(5).unwrap();
        let sparse = Graph::from_edges(5, &[(0, 1)]).unwrap();
        let out = diversity_enhancement(&[k5, sparse], 2).unwrap();
        assert_eq!(out.selected, vec![1, 0]);
        assert_eq!(out.steps[0].chosen.score, 9);
        assert_eq!(out.steps[1].chosen.score, 9);
    }

    #[test]
    fn three_bit_example() {
        let g = |s: &str| Graph::from_bit_str(3, s).unwrap();
        let out = diversity_enhancement(&[g("011"), g("111"), g("000")], 2).unwrap();
        assert_eq!(out.selected, vec![2, 1]);
        assert_eq!(out.steps[1].alternatives, vec![ScoredCandidate { index: 0, score: 2 }]);
    }

    #[test]
    fn ties_prefer_smaller_bit_string() {
        let g = |s: &str| Graph::from_bit_str(3, s).unwrap();
        // 100 and 001 are isomorphic; 100 comes first in input but 001 is
        // not a separate class, so only one survives.
        let out = diversity_enhancement(&[g("100"), g("001")], 2).unwrap();
        assert_eq!(out.selected, vec![0]);
        let a = Graph::from_bit_str(4, "110000").unwrap();
        let b = Graph::from_bit_str(4, "100001").unwrap();
        let out = diversity_enhancement(&[a, b], 1).unwrap();
        // Both are 4 away from K4; "100001" < "110000".
        assert_eq!(out.selected, vec![1]);
    }
}
