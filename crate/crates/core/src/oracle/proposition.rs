use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::canonical_representatives;
use crate::error::Result;
use crate::evolve::random_graph;
use crate::graph::{Graph, VertexSet};
use crate::stream;
use crate::toughness::{exact_isolated_toughness, exact_isolated_toughness_variant};

const SAMPLE_STREAM: u64 = 7;

/// A minimizer pair `(S†, S‡)` of I and I' with different sizes that breaks
/// `|S‡| > |S†|` or `i(G − S‡) > i(G − S†)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph: Graph,
    pub s_dagger: VertexSet,
    pub i_dagger: usize,
    pub s_double_dagger: VertexSet,
    pub i_double_dagger: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub orders: Vec<usize>,
    /// Orders covered by sampling rather than by every isomorphism class.
    pub sampled_orders: Vec<usize>,
    pub examined: usize,
    /// Graphs with I = I' = inf.
    pub skipped: usize,
    /// Graphs where some I-minimizer and some I'-minimizer differ in size.
    pub differing: usize,
    pub violations: Vec<Violation>,
    /// Up to `example_limit` graphs with differing minimizer sizes.
    pub examples: Vec<Graph>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreOptions {
    /// Orders up to this one are checked on every isomorphism class.
    pub exhaustive_up_to: usize,
    pub samples_per_order: usize,
    pub seed: u64,
    pub example_limit: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            exhaustive_up_to: 7,
            samples_per_order: 2000,
            seed: crate::evolve::DEFAULT_SEED,
            example_limit: 5,
        }
    }
}

struct Finding {
    skipped: bool,
    differing: bool,
    violations: Vec<Violation>,
}

fn examine(g: &Graph) -> Result<Finding> {
    let plain = exact_isolated_toughness(g)?;
    let variant = exact_isolated_toughness_variant(g)?;
    let mut finding = Finding {
        skipped: false,
        differing: false,
        violations: Vec::new(),
    };
    if plain.value.is_infinite() || variant.value.is_infinite() {
        finding.skipped = true;
        return Ok(finding);
    }
    for (&sd, &id) in plain.minimizers.iter().zip(&plain.witness_i) {
        for (&sdd, &idd) in variant.minimizers.iter().zip(&variant.witness_i) {
            if sd.len() == sdd.len() {
                continue;
            }
            finding.differing = true;
            if !(sdd.len() > sd.len() && idd > id) {
                finding.violations.push(Violation {
                    graph: g.clone(),
                    s_dagger: sd,
                    i_dagger: id,
                    s_double_dagger: sdd,
                    i_double_dagger: idd,
                });
            }
        }
    }
    Ok(finding)
}

/// Checks the minimizer-size relation between I and I' on every
/// isomorphism class up to `n_max` (sampling above order 7).
pub fn explore_proposition(n_max: usize) -> Result<PropositionReport> {
    explore_proposition_with(n_max, ExploreOptions::default())
}

pub fn explore_proposition_with(n_max: usize, options: ExploreOptions) -> Result<PropositionReport> {
    let mut report = PropositionReport {
        orders: Vec::new(),
        sampled_orders: Vec::new(),
        examined: 0,
        skipped: 0,
        differing: 0,
        violations: Vec::new(),
        examples: Vec::new(),
    };
    for n in 1..=n_max {
        let graphs = if n <= options.exhaustive_up_to {
            canonical_representatives(n)?
        } else {
            report.sampled_orders.push(n);
            let mut rng = stream::derive(options.seed, &[SAMPLE_STREAM, n as u64]);
            (0..options.samples_per_order)
                .map(|_| {
                    let p = rng.gen_range(0.1..0.9);
                    random_graph_with(n, p, &mut rng)
                })
                .collect::<Result<Vec<_>>>()?
        };
        report.orders.push(n);
        let findings = graphs.par_iter().map(examine).collect::<Result<Vec<_>>>()?;
        for (g, f) in graphs.iter().zip(findings) {
            report.examined += 1;
            report.skipped += f.skipped as usize;
            if f.differing {
                report.differing += 1;
                if report.examples.len() < options.example_limit {
                    report.examples.push(g.clone());
                }
            }
            report.violations.extend(f.violations);
        }
    }
    Ok(report)
}

fn random_graph_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if p == 0.5 {
        return random_graph(n, rng);
    }
    let bits: Vec<bool> = (0..crate::graph::bit_len(n)).map(|_| rng.gen_bool(p)).collect();
    Graph::from_bits(n, &bits)
}
